"""Reproduce the n=17 probability and count tables for the (2,2,3) pattern.

Prints each table from three independent routes (recurrence, DP scanner and,
for counts, the i.i.d. recurrence) so discrepancies are visible at a glance.
"""

import argparse

from runsgf.models import PatternSpec, ProbModel, decimal_str
from runsgf.oracle import dp_distribution
from runsgf.patterns import counts_iid, distribution


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", default="2,2,3")
    ap.add_argument("--p", default="1/6,1/3,1/2")
    ap.add_argument("--n", type=int, default=17)
    ap.add_argument("--digits", type=int, default=10)
    args = ap.parse_args()

    spec = PatternSpec.parse(args.k)
    probs = ProbModel.parse(args.p)
    rec = distribution(spec, probs, args.n)
    dp = dp_distribution(spec, probs, args.n)
    print(f"k={spec.thresholds} p={args.p} n={args.n}")
    print(f"{'m':>3} {'recurrence':>22} {'dp':>22}")
    for m in range(len(rec.values)):
        print(f"{m:>3} {decimal_str(rec[m], args.digits):>22} {decimal_str(dp[m], args.digits):>22}")
    print("recurrence == dp:", rec == dp)

    counts = counts_iid(spec, args.n)
    dp_counts = dp_distribution(spec, None, args.n)
    print(f"\ni.i.d. counts, total {counts.total} = {spec.ell}^{args.n}")
    for m in range(len(counts.values)):
        print(f"{m:>3} {counts[m]:>14} {dp_counts[m]:>14}")
    print("recurrence == dp:", counts == dp_counts)


if __name__ == "__main__":
    main()
