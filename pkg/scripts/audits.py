#!/usr/bin/env python3
"""Field-automorphism audits and the bundled counting instances, printed as tables."""

import sys
from pathlib import Path

from srl.counting import CountingInstance, counting_check, field_auto_bound_audit

AUDITS = [("PSL2", 2, 3), ("PSL2", 3, 3), ("PSL2", 2, 5), ("PSL2", 4, 3), ("PSL2", 5, 3),
          ("SzB2", 2, 3), ("SzB2", 2, 5), ("SzB2", 8, 3), ("ReeG2", 3, 3), ("ReeG2", 3, 5)]
INSTANCES = Path(__file__).resolve().parents[1] / "data" / "instances"


def main() -> int:
    print(f"{'family':<7}{'q0':>4}{'p':>3}{'q':>10}  {'lhs':>28}  {'bound':>28}  holds")
    for family, q0, p in AUDITS:
        a = field_auto_bound_audit(family, q0, p)
        print(f"{family:<7}{q0:>4}{p:>3}{a.q:>10}  {str(a.class_size):>28}  {str(a.bound):>28}  {a.holds}")
    print()
    for path in sorted(INSTANCES.glob("*.json")):
        inst = CountingInstance.load(path)
        for form in ("full", "remark"):
            v = counting_check(inst, form)
            print(f"{path.stem:<16} {form:<7} {str(v.lhs):>12} vs {str(v.rhs):>12}  holds={v.holds}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
