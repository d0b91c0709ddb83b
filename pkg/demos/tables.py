"""Entailment tables and the properties checked on them.

A KLM model's behaviour on the 16 theories over two symbols fits in a
table. This script tabulates a model, checks cumulativity, breaks the
table by hand and rebuilds a canonical model from the intact one.
"""

from prefentail import (
    PrecircTable,
    check_cm,
    check_ct,
    check_precirc,
    classify,
    format_klm,
    parse_klm,
    precirc_to_simplified_klm,
    replay,
    table_oracle,
    tabulate,
)

model = parse_klm(
    """
vocab p q
state a theory "p & q"
state b theory "p & ~q"
state c theory "~p"
pref a b
pref a c
pref b c
"""
)
table = tabulate(model)
o = table_oracle(table)
for check in (check_precirc, check_ct, check_cm):
    print(f"{check.__name__:14} {check(o).verdict}")

# start from the identity table: from true conclude p, but from p conclude p & q
broken = list(PrecircTable.identity(table.vocab).map)
broken[0b1111], broken[0b0011] = 0b0011, 0b0001
bad = table_oracle(PrecircTable(table.vocab, tuple(broken)))
rep = check_ct(bad)
print("\nperturbed table:", rep.verdict)
print(rep.to_text())
print("witness replays:", replay(rep, bad))

print("\nsmooth?", classify(model, order_flags=True).smooth)
rebuilt = precirc_to_simplified_klm(table)
print("rebuilt model has", len(rebuilt.states), "states; same table:", tabulate(rebuilt) == table)
print("\n".join(format_klm(rebuilt).splitlines()[:4]))
