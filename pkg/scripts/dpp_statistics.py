"""Monte Carlo statistics of the Whittaker process on a truncated interval:
counts, binned intensity and the two-set generating function, each against
its Fredholm-determinant or kernel prediction."""
import argparse

import numpy as np

from whitkern import dpp
from whitkern.kernels import whittaker_dpp_kernel


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--a", type=float, default=0.2)
    p.add_argument("--hi", type=float, default=4.0)
    p.add_argument("--samples", type=int, default=5000)
    p.add_argument("--seed", type=int, default=20240601)
    args = p.parse_args()
    k = whittaker_dpp_kernel(args.a)
    iv = (dpp.DEFAULT_LO, args.hi)
    dec = dpp.mercer(k, iv, 200)
    s = dpp.Sampler(dec).sample(args.samples, args.seed)

    c = dpp.count_stats(dpp.counts_in(s, iv))
    print(f"count mean {c.mean:.4f} +- {c.mean_se:.4f}  predicted {dpp.expected_count(k, iv):.4f}")
    print(f"count var  {c.var:.4f} +- {c.var_se:.4f}  predicted {dpp.count_variance(k, iv):.4f}")

    edges = np.geomspace(iv[0], iv[1], 9)
    mean, se = dpp.binned_intensity(s, edges)
    print("bin_lo,bin_hi,mc,se,predicted")
    for lo, hi, m, e in zip(edges[:-1], edges[1:], mean, se):
        print(f"{lo:.4g},{hi:.4g},{m:.4f},{e:.4f},{dpp.expected_count(k, (lo, hi)):.4f}")

    b1, b2 = (iv[0], 0.5), (0.5, iv[1])
    for z1, z2 in ((0.0, 0.0), (0.5, 0.5), (0.3, 0.8)):
        mc, se, det, z = dpp.generating_function_check(k, iv, b1, b2, z1, z2, s)
        print(f"E[z1^n1 z2^n2] z=({z1},{z2}): mc {mc:.5f} +- {se:.5f}  det {det:.5f}  |z| {z:.2f}")


if __name__ == "__main__":
    main()
