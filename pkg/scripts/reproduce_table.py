#!/usr/bin/env python3
"""Recompute the 50-row reference table and print a comparison.

Usage: python scripts/reproduce_table.py [--terms 10000] [--out table.csv]
"""
import argparse
import sys
import time

from sesquiproj.arith import chi4
from sesquiproj.projection import r_chi_many, reference_table_config
from sesquiproj.reference import RCHI4_TABLE, SUSPECTED_MISPRINTS


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--terms", type=int, default=10_000)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    cfg = reference_table_config(truncation=args.terms)
    ks = [k for k, *_ in RCHI4_TABLE]
    t0 = time.perf_counter()
    rows = {b.h: b for b in r_chi_many(ks, chi4(), cfg)}
    elapsed = time.perf_counter() - t0

    lines = ["k,computed,numerical,expected,dev_numerical,dev_expected,uncertainty"]
    worst = (0.0, None)
    for k, numerical, expected, abserr in RCHI4_TABLE:
        b = rows[k]
        dev_n = abs(b.total - numerical)
        dev_e = abs(b.total - expected)
        target = SUSPECTED_MISPRINTS.get(k)
        flag = f"  [printed value suspect; vs {target}: {abs(b.total-target):.5f}]" if target else ""
        if dev_n > worst[0]:
            worst = (dev_n, k)
        print(f"k={k:3d}  computed={b.total:9.5f}  numerical={numerical:8.4f} "
              f"(dev {dev_n:.5f})  expected={expected:8.4f} (dev {dev_e:.5f}){flag}")
        lines.append(f"{k},{b.total!r},{numerical},{expected},{dev_n!r},{dev_e!r},"
                     f"{b.uncertainty!r}")
    print(f"\n{len(ks)} rows in {elapsed:.1f}s; worst |computed-numerical| = "
          f"{worst[0]:.5f} at k={worst[1]}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("\n".join(lines) + "\n")
        print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
