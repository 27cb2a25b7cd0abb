#!/usr/bin/env python3
"""Scan the critical line for zeros of xi (equivalently, the nontrivial
zeros of zeta) and print each ordinate with the residual |xi(1/2 + it)|."""

import argparse

from nblab import find_critical_zeros, xi


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--t-max", type=float, default=60.0)
    parser.add_argument("--tol", type=float, default=1e-8)
    parser.add_argument("--grid-step", type=float, default=0.05)
    args = parser.parse_args()

    zeros = find_critical_zeros(args.t_max, args.tol, args.grid_step)
    print(f"# {len(zeros)} zeros with 0 < t <= {args.t_max}")
    print("index,t,abs_xi")
    for k, t in enumerate(zeros, start=1):
        print(f"{k},{t!r},{abs(xi(complex(0.5, t)).value):.3e}")


if __name__ == "__main__":
    main()
