#!/usr/bin/env python3
"""k = 2, 3, 4 searches on the small exception classes (transvections and order-3 reflections)."""

import sys

from srl.atlas import build, distinguished_element
from srl.verifier import WITNESS_FOUND, WitnessQuery, tuple_witness

CASES = [("PSL(3,3)", "transvection"), ("PSU(3,3)", "transvection"), ("PSp(4,3)", "transvection"),
         ("PGU(4,2)", "unitary_reflection")]


def main() -> int:
    for text, kind in CASES:
        built = build(text)
        x = distinguished_element(built, kind).perm
        print(f"{text} {kind}: |G| = {built.group.order()}")
        for k in (2, 3, 4):
            mode = "exhaustive" if k < 4 else "random"
            report = tuple_witness(WitnessQuery(built.group, x, k, mode, 10**4, seed=7, target="full_group"))
            got = f"generates order {report.subgroup_order}" if report.status == WITNESS_FOUND else ""
            print(f"  k={k} {mode:<10} {report.status:<16} tuples {report.tuples_tested:<6} {got}")
            if report.status == WITNESS_FOUND:
                break
    return 0


if __name__ == "__main__":
    sys.exit(main())
