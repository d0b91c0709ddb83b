"""Two kinds of preferential model on a two-symbol vocabulary.

``b`` reads "is a bird", ``f`` reads "flies". A KLM model labels each state
with a theory; a MAK model gives each state an arbitrary set of satisfied
formulas. Run with ``python demos/birds.py``.
"""

from prefentail import (
    FormulaSet,
    MakModel,
    Theory,
    SemFormula,
    Vocab,
    klm_entail,
    entails,
    klm_to_mak,
    mak_entail,
    parse_klm,
)

klm = parse_klm(
    """
vocab b f
state normal   theory "b & f"
state penguin  theory "b & ~f"
state rock     theory "~b & ~f"
pref normal penguin
"""
)
v = klm.vocab

print("KLM entailment")
for premise in ["b", "b & ~f", "true"]:
    print(f"  {premise:8} |~ {klm_entail(klm, Theory.parse(v, premise))}")

# adding a premise withdraws a conclusion: the relation is not monotone
weak = klm_entail(klm, Theory.parse(v, "b"))
strong = klm_entail(klm, Theory.parse(v, "b", "~f"))
flies = SemFormula.parse(v, "f")
print("  f concluded from b alone:", entails(weak, flies))
print("  f concluded from b, ~f:  ", entails(strong, flies))

print("\nThe same model read as a MAK model")
mak = klm_to_mak(klm)
print("  C({b}) =", mak_entail(mak, FormulaSet.of(v, ["b"])))

print("\nA MAK state that is not deductively closed")
odd = MakModel(Vocab("bf"), ["s"], {"s": FormulaSet.of(v, ["b & f"])})
out = mak_entail(odd, FormulaSet.empty(v))
print("  concluded from nothing:", out)
print("  contains b & f:", FormulaSet.of(v, ["b & f"]).issubset(out), "| contains b:", FormulaSet.of(v, ["b"]).issubset(out))
