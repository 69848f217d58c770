"""Largest eigenvalue of the truncated Stieltjes-type operator on [lo, b]
against the analytic operator-norm bound, as the truncation is removed."""
import argparse

from whitkern.operators import norm_614, norm_bound


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--a", type=float, nargs="+", default=[0.0, 0.25])
    p.add_argument("--b", type=float, nargs="+", default=[25.0, 100.0, 800.0], help="25 * 2^k")
    p.add_argument("--lo", type=float, nargs="+", default=[1e-4, 1e-10, 1e-20, 1e-40])
    args = p.parse_args()
    print("a,lo,b,lambda_max,bound,ratio")
    for a in args.a:
        bound = norm_bound(a)
        for lo in args.lo:
            for b in args.b:
                v = norm_614(a, b, lo=lo)
                print(f"{a:g},{lo:.0e},{b:g},{v:.12f},{bound:.12f},{v / bound:.6f}")


if __name__ == "__main__":
    main()
