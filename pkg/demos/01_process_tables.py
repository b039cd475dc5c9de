"""From directed processes to Clifford multiplication tables.

Two processes that share a point compose; the shared point contributes its
metric sign.  Building C(0,2) and C(1,1) this way and multiplying through
the groupoid gives the same tables as multiplying the matching blades in
the algebra.

Run: python3 demos/01_process_tables.py
"""
from cliffproc.groupoid import (REFERENCE_TABLES, Extensive, build_clifford, compose, evaluate,
                                full_product_table)


def show(table):
    width = max(len(c) for row in table for c in row)
    for row in table:
        print("  " + "  ".join(c.rjust(width) for c in row))


# A single composition: [P0P1] then [P1P0] closes a loop through P1.
metric = {"P0": 1, "P1": 1, "P2": 1}
loop = compose(Extensive("P0", "P1"), Extensive("P1", "P0"), metric)
print("[P0P1] o [P1P0] =", loop, "->", evaluate(loop, metric))

for name, ref in REFERENCE_TABLES.items():
    real = build_clifford([Extensive(*g) for g in ref["generators"]], ref["metric"],
                          first_index=ref["first_index"])
    print(f"\n{name}: metric {ref['metric']}, algebra C({real.algebra.p},{real.algebra.q})")
    via_groupoid = full_product_table(real, ref["rows"], "groupoid")
    via_algebra = full_product_table(real, ref["rows"], "algebra")
    show(via_groupoid)
    print("  groupoid and algebra routes agree:", via_groupoid == via_algebra)
