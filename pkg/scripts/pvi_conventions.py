"""Sigma-PVI residuals for the Jacobi determinant restricted to [s, 1], in the
variable s and in the reflected variable 1 - s, with fitted constants."""
import argparse

from whitkern.painleve import sigma_pvi_residual


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--N", type=int, nargs="+", default=[2, 3])
    p.add_argument("--ab", type=float, nargs=2, action="append", default=None)
    p.add_argument("--s0", type=float, default=0.4)
    args = p.parse_args()
    ab = args.ab or [(0.0, 0.0), (0.5, 0.5), (0.5, 0.3)]
    print("N,a,b,reflect,d1,d2,residual,max_raw_over_fit_points")
    for N in args.N:
        for a, b in ab:
            for reflect in (False, True):
                r = sigma_pvi_residual(N, a, b, args.s0, reflect=reflect)
                print(f"{N},{a:g},{b:g},{reflect},{r.fit[0]:.8f},{r.fit[1]:.8f},{r.residual:.3e},"
                      f"{r.terms['max_raw_over_fit_points']:.3e}")


if __name__ == "__main__":
    main()
