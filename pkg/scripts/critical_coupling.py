"""Critical |Z_eff| of the lowest level pairs and the shifted boundary for a few XY values."""
import argparse
import math

from ptwell.secular import Z_CRIT, find_critical_z


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pairs", type=int, default=4, help="number of lobes (0,1), (2,3), ...")
    ap.add_argument("--xy", type=float, nargs="*", default=[0.25, 1.0, 4.0])
    args = ap.parse_args()

    print("pair,z_critical,s_merge")
    for m in range(args.pairs):
        ev = find_critical_z(0.0, (2 * m, 2 * m + 1))
        print(f"{ev.pair[0]}-{ev.pair[1]},{ev.z_critical:.15f},{ev.s_merge:.10f}")

    print("\nxy,critical_Z,critical_Z_plus_sqrt_xy")
    for xy in args.xy:
        z = find_critical_z(xy).critical_z
        print(f"{xy},{z:.12f},{z + math.sqrt(xy):.12f}")
    print(f"\npinned single-channel value: {Z_CRIT!r}")


if __name__ == "__main__":
    main()
