#!/usr/bin/env python3
"""Run the acceptance criteria and print one PASS/FAIL line per criterion.

    python3 scripts/run_acceptance.py            # all criteria
    python3 scripts/run_acceptance.py 1 7 13     # a subset
    python3 scripts/run_acceptance.py -v         # full reports
"""

import argparse
import sys

from operad_forge.acceptance import CRITERIA, TITLES, run_all


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("criteria", nargs="*", type=int, choices=sorted(CRITERIA), metavar="N")
    ap.add_argument("-v", "--verbose", action="store_true")
    args = ap.parse_args()
    reports = run_all(args.criteria or None)
    for n, rep in reports.items():
        print(f"criterion {n}: {'PASS' if rep.passed else 'FAIL'} {TITLES[n]}")
        if args.verbose or not rep.passed:
            print("  " + rep.to_text().replace("\n", "\n  "))
    return 0 if all(r.passed for r in reports.values()) else 1


if __name__ == "__main__":
    sys.exit(main())
