"""Error of the first- and second-order offset series against the exact roots, with fitted slopes."""
import argparse

import numpy as np

from ptwell.perturbation import compare_zeff


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--z-eff", type=float, default=1.0)
    ap.add_argument("--n-min", type=int, default=4)
    ap.add_argument("--n-max", type=int, default=40)
    args = ap.parse_args()

    rows = compare_zeff(args.z_eff, range(args.n_min, args.n_max + 1))
    print("n,q_exact,err1,err2")
    for r in rows:
        print(f"{r.n},{r.q_exact:.17g},{r.err1:.6e},{r.err2:.6e}")
    logn = np.log(np.array([r.n + 1 for r in rows], dtype=float))
    for name in ("err1", "err2"):
        slope = np.polyfit(logn, np.log([getattr(r, name) for r in rows]), 1)[0]
        print(f"# log-log slope of {name}: {slope:.3f}")


if __name__ == "__main__":
    main()
