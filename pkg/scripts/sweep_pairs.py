#!/usr/bin/env python3
"""Survey every prime-order class of the desk-scale atlas and tabulate the verdicts."""

import argparse
import json
import sys
import time

from srl.verifier import VIOLATION, theorem_a_survey

ATLAS = ["Alt(5)", "Alt(6)", "Alt(7)", "Alt(8)", "Alt(9)", "PSL(2,5)", "PSL(2,7)", "PSL(2,8)", "PSL(2,9)",
         "PSL(2,11)", "PSL(2,13)", "PSL(3,3)", "PSU(3,3)", "PSp(4,3)", "PGU(4,2)",
         "Direct(Alt(5),Cyclic(3))", "Wreath(Alt(5),2)"]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("groups", nargs="*", default=ATLAS)
    ap.add_argument("--min-prime", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true", help="emit class_verdict records instead of a table")
    args = ap.parse_args()

    violations = 0
    for text in args.groups:
        start = time.perf_counter()
        verdicts = theorem_a_survey(text, seed=args.seed, min_prime=args.min_prime,
                                    escalate=args.min_prime <= 3)
        for v in verdicts:
            violations += v.verdict == VIOLATION
            if args.json:
                print(json.dumps(v.to_json(text), sort_keys=True))
        if not args.json:
            counts = {}
            for v in verdicts:
                counts[v.verdict] = counts.get(v.verdict, 0) + 1
            summary = ", ".join(f"{k} {n}" for k, n in sorted(counts.items())) or "no classes"
            print(f"{text:<28} {summary:<50} {time.perf_counter() - start:6.2f}s")
    return 1 if violations else 0


if __name__ == "__main__":
    sys.exit(main())
