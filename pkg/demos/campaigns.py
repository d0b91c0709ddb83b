"""Seeded campaigns over random models, and what they turn up.

Each campaign draws models from a seeded generator, checks one claim on
each, and stops at the first counterexample. Reports are deterministic.
"""

from prefentail import GenSpec, run_campaign

spec = GenSpec(vocab_size=2, seed=11)

for claim in ("P3.6", "T-KLM2MAK", "TARSKI"):
    res = run_campaign(claim, 200, spec)
    print(f"{claim:10} {res.trials - res.failures}/{res.trials} ok  [{res.coverage}]")

print("\nMAK entailment is not monotone:")
res = run_campaign("NONMONO", 10000, spec)
ce = res.counterexample
print(ce["model"].rstrip())
print(f"  from  {ce['premises_x'] or '(nothing)'}  it concludes {ce['C(X)']}")
print(f"  from  {ce['premises_y']}  it concludes {ce['C(Y)']}")

print("\nConjunction vs closure on raw MAK models:")
res = run_campaign("R-AND", 500, GenSpec(vocab_size=2, seed=1, mak_kind="raw"))
print(res.to_text())
# a state satisfying nothing respects conjunction vacuously but is not closed
