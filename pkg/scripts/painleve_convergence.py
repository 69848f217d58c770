"""Sigma-PV residual of the deformed Jacobi Hankel determinant against the
finite-difference step, for both stencils, with the observed order."""
import argparse

from whitkern.painleve import observed_order, sigma_pv_residual


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--N", type=int, default=2)
    p.add_argument("--a", type=float, default=0.5)
    p.add_argument("--b", type=float, default=0.3)
    p.add_argument("--t0", type=float, default=1.0)
    p.add_argument("--h", type=float, nargs="+", default=[4e-3, 2e-3, 1e-3, 5e-4])
    args = p.parse_args()
    print("stencil,h,residual,order")
    for stencil in (3, 5):
        prev = None
        for h in args.h:
            r = sigma_pv_residual(args.N, args.a, args.b, args.t0, h, stencil).residual
            order = "" if prev is None else f"{observed_order(prev[1], r, prev[0] / h):.3f}"
            print(f"{stencil},{h:g},{r:.3e},{order}")
            prev = (h, r)


if __name__ == "__main__":
    main()
