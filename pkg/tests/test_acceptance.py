"""End-to-end acceptance: run the report twice and print one line per criterion."""
import csv
import subprocess
import sys

from whitkern.acceptance import TITLES


def _report(path):
    return subprocess.Popen([sys.executable, "-m", "whitkern.cli", "report", "--out", str(path)],
                            stdout=subprocess.DEVNULL, stderr=subprocess.PIPE, text=True)


def test_acceptance(tmp_path):
    paths = [tmp_path / "report1.csv", tmp_path / "report2.csv"]
    procs = [_report(p) for p in paths]
    for p in procs:
        p.communicate()
    with open(paths[0]) as fh:
        rows = list(csv.DictReader(line for line in fh if not line.startswith("#")))
    status = {}
    for r in rows:
        k = int(r["criterion"])
        status[k] = status.get(k, True) and r["pass"] == "True"
    status[13] = paths[0].read_bytes() == paths[1].read_bytes() and procs[0].returncode == 0
    titles = {**TITLES, 13: "report is bitwise reproducible for a fixed seed"}
    for k in range(1, 14):
        worst = [r for r in rows if int(r["criterion"]) == k and r["pass"] != "True"]
        detail = f"  ({len(worst)} failing checks)" if worst else ""
        print(f"criterion {k:2d} {'PASS' if status.get(k) else 'FAIL'}  {titles[k]}{detail}")
    assert all(status.get(k) for k in range(1, 14))
