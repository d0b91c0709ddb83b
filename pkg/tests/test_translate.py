import pytest

from prefentail.checks import check_cm, table_oracle
from prefentail.harness import GenSpec, gen_klm, trial_spec
from prefentail.klm import KlmModel, classify, klm_entail, theory_state_name
from prefentail.logic import FormulaSet, SemFormula, Theory, Vocab, enumerate_theories
from prefentail.mak import MakModel, mak_entail
from prefentail.translate import (
    ConstructionMismatchError,
    NotCumulativeError,
    NotSupraClassicalError,
    PrecircTable,
    compare_tables,
    klm_to_mak,
    mak_to_klm,
    precirc_to_simplified_klm,
    preferred_by_table,
    tabulate,
    validate_translation,
)

PQ = Vocab(["p", "q"])


def th(*texts):
    return Theory.parse(PQ, *texts)


@pytest.fixture
def two_state():
    return KlmModel(PQ, ["s1", "s2"], {"s1": th("p & q"), "s2": th("~p & q")}, [("s1", "s2")])


def test_klm_to_mak_sat_sets():
    m = klm_to_mak(KlmModel(PQ, ["s", "l"], {"s": th("p & q"), "l": Theory.inconsistent(PQ)}))
    sat = m.sat["s"]
    assert len(sat) == 8
    assert all(f.models & 0b0001 for f in sat)
    assert m.sat["l"].is_everything


def test_klm_to_mak_preserves_entailment(two_state):
    mm = klm_to_mak(two_state)
    for t in enumerate_theories(PQ):
        assert mak_entail(mm, t.as_formula_set()) == klm_entail(two_state, t).as_formula_set()
    assert validate_translation(two_state, mm).validated


def test_mak_to_klm_labels():
    m = MakModel(PQ, ["s"], {"s": th("p").as_formula_set()})
    assert mak_to_klm(m).label["s"] == th("p")


def test_mak_to_klm_rejects_unclosed_with_witness():
    m = MakModel(PQ, ["s"], {"s": FormulaSet.of(PQ, ["p & q"])})
    with pytest.raises(NotSupraClassicalError) as e:
        mak_to_klm(m)
    assert e.value.state == "s"
    # the first missing class in canonical order is p itself
    assert e.value.missing == SemFormula.parse(PQ, "p")
    assert e.value.missing.bitstring == "0011"


def test_round_trip_labels(two_state):
    back = mak_to_klm(klm_to_mak(two_state))
    assert back == two_state


def test_tabulate_two_state(two_state):
    f = tabulate(two_state)
    assert f(th("q")) == th("p & q")
    assert f.is_extensive


def test_tabulate_empty_model():
    f = tabulate(KlmModel(PQ, [], {}))
    assert set(f.map) == {0}


def test_tabulate_simplified_without_preference_is_identity():
    theories = list(enumerate_theories(PQ))
    names = [theory_state_name(t) for t in theories]
    assert tabulate(KlmModel(PQ, names, dict(zip(names, theories)))) == PrecircTable.identity(PQ)


def test_tabulate_mak_requires_supra():
    with pytest.raises(NotSupraClassicalError):
        tabulate(MakModel(PQ, ["s"], {"s": FormulaSet.of(PQ, ["p & q"])}))


def test_table_validation():
    with pytest.raises(ValueError):
        PrecircTable(PQ, (0,) * 15)
    with pytest.raises(ValueError):
        PrecircTable(PQ, (16,) * 16)


def test_construct_identity():
    f = PrecircTable.identity(PQ)
    built = precirc_to_simplified_klm(f)
    assert tabulate(built) == f
    k = classify(built, order_flags=True)
    assert k.simplified and k.smooth and k.irreflexive


def test_construct_from_smooth_models():
    for i in range(20):
        m = gen_klm(trial_spec(GenSpec(klm_kind="smooth", seed=3), i))
        f = tabulate(m)
        assert compare_tables(tabulate(precirc_to_simplified_klm(f)), f) is None


def test_preference_never_reflexive_for_extensive_tables():
    for i in range(20):
        f = tabulate(gen_klm(trial_spec(GenSpec(seed=5), i)))
        assert all(a != b for a, b in preferred_by_table(f))


def _non_cumulative_table():
    # search generated non-smooth models for a table that fails (CM)
    for i in range(2000):
        f = tabulate(gen_klm(trial_spec(GenSpec(seed=11, pref_density=(0.3, 0.9)), i)))
        if check_cm(table_oracle(f)).verdict == "fails":
            return f
    raise AssertionError("no (CM) violation found")


def test_construct_rejects_non_cumulative():
    f = _non_cumulative_table()
    with pytest.raises(NotCumulativeError) as e:
        precirc_to_simplified_klm(f)
    assert e.value.rule == "cm"
    assert "T" in e.value.witness


def test_construct_rejects_ct_violation():
    table = list(range(16))
    table[0b1111] = 0b0011
    table[0b0011] = 0b0001
    with pytest.raises(NotCumulativeError) as e:
        precirc_to_simplified_klm(PrecircTable(PQ, tuple(table)))
    assert e.value.rule == "ct"


def test_construct_rejects_non_extensive():
    table = list(range(16))
    table[0b0001] = 0b0011
    with pytest.raises(NotCumulativeError) as e:
        precirc_to_simplified_klm(PrecircTable(PQ, tuple(table)))
    assert e.value.rule == "extensivity"


def test_experimental_flag_runs_and_validates():
    f = _non_cumulative_table()
    try:
        built = precirc_to_simplified_klm(f, experimental=True)
    except ConstructionMismatchError as e:
        assert e.report.mismatch_witness is not None
    else:
        assert tabulate(built) == f
