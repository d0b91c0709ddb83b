"""Acceptance suite: nine criteria, each printing one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py`` or directly as a script.
"""

import json
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))
import naive  # noqa: E402

from prefentail.checks import check_precirc, fs_from_str, mak_oracle, replay, sample_premises
from prefentail.cli import main as cli
from prefentail.formats import format_klm, format_mak
from prefentail.harness import CLAIMS, GenSpec, gen_klm, gen_mak, run_campaign, trial_spec
from prefentail.logic import Interpretation, SemFormula, iter_bits
from prefentail.mak import classify_mak

SEED = 1
MAK_CLASSES = ("raw", "supra", "classical", "unicity", "padded")


@pytest.fixture
def verdict(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {title}" + (f" ({detail})" if detail else ""))
        return ok

    return emit


def _summary(results, kinds=None):
    kinds = kinds or [""] * len(results)
    return ", ".join(f"{r.claim}{f'[{k}]' if k else ''} {r.trials - r.failures}/{r.trials}" for r, k in zip(results, kinds))


def _all_ok(results):
    return all(r.ok and r.failures == 0 for r in results)


def test_1_klm_tables_are_precirc_and_cumulative(verdict):
    start = time.perf_counter()
    res = run_campaign("P3.6", 1000, GenSpec(vocab_size=2, seed=SEED))
    elapsed = time.perf_counter() - start
    ok = res.ok and res.failures == 0 and elapsed < 60
    verdict(1, "KLM entailment tables satisfy precirc and CT", ok, f"{_summary([res])}, {elapsed:.1f}s")
    assert res.failures == 0, res.counterexample
    assert elapsed < 60


def test_2_raw_mak_entailment(verdict):
    spec = GenSpec(vocab_size=2, seed=SEED, mak_kind="raw")
    results = [run_campaign(c, 1000, spec, premise_sets=100, subsets=50) for c in ("P3.10", "IDEM", "CN-SUB")]
    verdict(2, "raw MAK entailment: extensive, CT, idempotent, contains Cn", _all_ok(results), _summary(results))
    for r in results:
        assert r.failures == 0, r.counterexample


def test_3_cn_is_tarskian(verdict):
    res = run_campaign("TARSKI", 1000, GenSpec(vocab_size=2, seed=SEED, mak_kind="raw"), premise_sets=100)
    verdict(3, "Cn is a Tarskian closure and fixes every state", _all_ok([res]), _summary([res]))
    assert res.failures == 0, res.counterexample


def test_4_translations_preserve_entailment(verdict):
    results = [
        run_campaign("T-KLM2MAK", 500, GenSpec(vocab_size=2, seed=SEED)),
        run_campaign("T-SUPRA", 500, GenSpec(vocab_size=2, seed=SEED, mak_kind="supra")),
    ]
    verdict(4, "translations in both directions preserve entailment", _all_ok(results), _summary(results))
    for r in results:
        assert r.failures == 0, r.counterexample


def _non_supra_right_side_failure():
    for i in range(500):
        m = gen_mak(trial_spec(GenSpec(vocab_size=2, seed=SEED, mak_kind="raw"), i))
        if classify_mak(m).supra_classical:
            continue
        rep = check_precirc(mak_oracle(m))
        if "right-side" in rep.failed_rules:
            return m, rep
    return None, None


def test_5_equivalence_chain(verdict, tmp_path, capsys):
    results, kinds = [], []
    for kind in MAK_CLASSES:
        spec = GenSpec(vocab_size=2, seed=SEED, mak_kind=kind)
        claims = ("R-AND", "R-OR", "T-EQUIV") if kind in ("supra", "classical", "unicity") else ("R-AND", "R-OR")
        results += [run_campaign(c, 500, spec) for c in claims]
        kinds += [kind] * len(claims)
    m, rep = _non_supra_right_side_failure()
    witness_ok = False
    if m is not None:
        o = mak_oracle(m)
        path = tmp_path / "nonsupra.mak"
        path.write_text(format_mak(m))
        runs = []
        for _ in range(2):
            code = cli(["check", "--model", str(path), "--property", "precirc", "--json"])
            runs.append((code, capsys.readouterr().out))
        data = json.loads(runs[0][1])
        witness_ok = (
            replay(rep, o, rule="right-side")
            and runs[0] == runs[1]
            and runs[0][0] == 1
            and data["witness"] == rep.witness_for(rep.failed_rules[0])
        )
    ok = _all_ok(results) and witness_ok
    verdict(5, "connector flag equivalences and precirc of supra-classical models", ok, _summary(results, kinds) + f", non-supra witness replayed: {witness_ok}")
    for r in results:
        assert r.failures == 0, r.counterexample
    assert witness_ok


def test_6_construction_realizes_cumulative_tables(verdict):
    start = time.perf_counter()
    res = run_campaign("CONSTR", 200, GenSpec(vocab_size=2, seed=SEED))
    elapsed = time.perf_counter() - start
    ok = res.ok and res.failures == 0 and elapsed < 300
    verdict(6, "simplified smooth model rebuilt from each smooth table", ok, f"{_summary([res])}, {elapsed:.1f}s")
    assert res.failures == 0, res.counterexample
    assert elapsed < 300


def _entail(path, premises, capsys):
    code = cli(["entail", "--model", str(path), "--mak", "--premises", premises, "--json"])
    assert code == 0
    return json.loads(capsys.readouterr().out)["conclusion"]


def test_7_negative_claims_have_replayable_witnesses(verdict, tmp_path, capsys):
    spec = GenSpec(vocab_size=2, seed=SEED)
    mono = run_campaign("NONMONO", 10000, spec)
    close = run_campaign("NONCLOSE", 1000, spec)
    v = spec.vocab

    ce = mono.counterexample
    path = tmp_path / "nonmono.mak"
    path.write_text(ce["model"])
    cx = fs_from_str(v, _entail(path, ce["premises_x"], capsys))
    cy = fs_from_str(v, _entail(path, ce["premises_y"], capsys))
    mono_replayed = bool(cx & ~cy) and cli(["check", "--model", str(path), "--property", "tarski"]) == 1
    capsys.readouterr()

    ce = close.counterexample
    path = tmp_path / "nonclose.mak"
    path.write_text(ce["model"])
    out = fs_from_str(v, _entail(path, ce["premises"], capsys))
    conj = SemFormula.parse(v, ce["conjunction"]).models
    missing = SemFormula.parse(v, ce["conjunct_missing"]).models
    close_replayed = bool(out >> conj & 1) and not out >> missing & 1 and conj & ~missing == 0

    ok = mono.ok and close.ok and mono_replayed and close_replayed
    detail = f"NONMONO at trial {mono.counterexample['trial']}, NONCLOSE at trial {close.counterexample['trial']}"
    verdict(7, "monotony and closure failures found and replayed", ok, detail)
    assert mono_replayed and close_replayed


def _interps(v, models):
    return frozenset(Interpretation(v, i).true_set for i in range(v.n_interpretations) if models & Interpretation(v, i).bit)


def _classes(v, mask):
    return frozenset(_interps(v, c) for c in iter_bits(mask))


def test_8_agreement_with_naive_oracle(verdict):
    mismatches = []
    spec = GenSpec(vocab_size=2, seed=SEED, mak_kind="mixed")
    v = spec.vocab
    for i in range(100):
        ts = trial_spec(spec, i)
        k = gen_klm(ts)
        nk = naive.read_klm(format_klm(k))
        for t in range(v.n_classes):
            if _interps(v, k.entail_mask(t)) != nk.entail(_interps(v, t)):
                mismatches.append(("klm", i, t))
        m = gen_mak(ts)
        nm = naive.read_mak(format_mak(m))
        for x in sample_premises(mak_oracle(m), 200, seed=i):
            nx = _classes(v, x.classes)
            if _classes(v, m.entail_mask(x.classes)) != nm.entail(nx):
                mismatches.append(("mak", i, x.classes))
            if _classes(v, m.cn_mask(x.classes)) != nm.cn(nx):
                mismatches.append(("cn", i, x.classes))
    verdict(8, "agreement with an independent naive implementation", not mismatches, f"{len(mismatches)} mismatches over 100 models")
    assert not mismatches, mismatches[:5]


def test_9_campaign_reports_are_deterministic(verdict, capsys):
    differing = []
    for claim in CLAIMS:
        spec = GenSpec(vocab_size=2, seed=SEED)
        kw = {"premise_sets": 20, "subsets": 10, "raise_on_missing": False}
        if run_campaign(claim, 40, spec, **kw).to_json() != run_campaign(claim, 40, spec, **kw).to_json():
            differing.append(claim)
    outputs = []
    for _ in range(2):
        cli(["fuzz", "--claim", "P3.10", "--trials", "30", "--seed", str(SEED), "--json"])
        outputs.append(capsys.readouterr().out)
    if outputs[0] != outputs[1]:
        differing.append("cli fuzz")
    verdict(9, "repeated campaigns give byte-identical reports", not differing, f"{len(CLAIMS)} claims and the CLI")
    assert not differing


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
