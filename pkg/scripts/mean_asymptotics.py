"""Mean count against its linear principal part.

For each n, prints the exact mean, the principal part c(n-k+1)/prod(1-p_i)
and their gap.  For three states the gap tends to a constant from below, so
its magnitude keeps growing slowly instead of peaking early.
"""

import argparse

from runsgf.models import PatternSpec, ProbModel
from runsgf.patterns import expected_count, expected_count_principal


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", default="2,2,3")
    ap.add_argument("--p", default="1/6,1/3,1/2")
    ap.add_argument("--span", type=int, default=200)
    ap.add_argument("--step", type=int, default=25)
    args = ap.parse_args()

    spec = PatternSpec.parse(args.k)
    probs = ProbModel.parse(args.p)
    k = spec.k_total
    print(f"k={spec.thresholds} p={args.p}")
    print(f"{'n':>5} {'mean':>16} {'principal':>16} {'gap':>14}")
    for n in range(k, k + args.span + 1, args.step):
        mean = expected_count(spec, probs, n)
        principal = expected_count_principal(spec, probs, n)
        print(f"{n:>5} {float(mean):>16.10f} {float(principal):>16.10f} {float(mean - principal):>14.3e}")


if __name__ == "__main__":
    main()
