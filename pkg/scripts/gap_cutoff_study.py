"""Gap probability P(no points in [lo, s]) for the Whittaker process as the
lower cutoff lo shrinks.  K(x, x) ~ 1/(pi^2 x) near 0, so the expected number
of points near the origin is infinite and the gap tends to 0 as lo -> 0."""
import argparse

from whitkern.dpp import gap_probability
from whitkern.kernels import whittaker_dpp_kernel


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--s", type=float, nargs="+", default=[1.0, 5.0, 20.0])
    p.add_argument("--lo", type=float, nargs="+", default=[1e-3, 1e-6, 1e-10, 1e-20, 1e-40])
    p.add_argument("--n", type=int, default=160)
    args = p.parse_args()
    k = whittaker_dpp_kernel(args.a)
    print("lo,s,gap")
    for lo in args.lo:
        for s in args.s:
            print(f"{lo:.0e},{s:g},{gap_probability(k, s, lo, args.n):.6e}")


if __name__ == "__main__":
    main()
