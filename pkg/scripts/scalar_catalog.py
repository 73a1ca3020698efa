#!/usr/bin/env python3
"""Run the scalar equation's behavior catalog across a list of exponents, for
both signs of the nonlinearity."""

import argparse
import json
import os

from efdyn import scalar_classify


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--N", type=float, default=3.0)
    ap.add_argument("--p", type=float, default=2.0)
    ap.add_argument("--a", type=float, default=0.0)
    ap.add_argument("--Q", type=float, nargs="+", default=[2.5, 4.0, 5.0, 6.0])
    ap.add_argument("--eps", type=int, choices=(-1, 1), default=1)
    ap.add_argument("--out", default="results/scalar_catalog.json")
    args = ap.parse_args()

    os.makedirs(os.path.dirname(args.out) or ".", exist_ok=True)
    reports = []
    for Q in args.Q:
        rep = scalar_classify(args.N, args.p, args.a, Q, args.eps)
        reports.append(rep.to_dict())
        print(f"Q={Q}: thresholds ({rep.Q1:.4g}, {rep.Q2:.4g})  gamma={rep.gamma:.4g}")
        print(f"  {rep.behavior.value}")
        for k, v in rep.evidence.items():
            print(f"  {k}: {v}")
    with open(args.out, "w") as fh:
        json.dump(reports, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
