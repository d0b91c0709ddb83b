import itertools

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from prefentail.checks import check_precirc, check_supra_entail, check_tarski, cn_oracle, mak_oracle
from prefentail.formats import format_klm, parse_klm
from prefentail.klm import KlmModel, klm_entail
from prefentail.logic import (
    And,
    Const,
    FormulaSet,
    Iff,
    Implies,
    Interpretation,
    Not,
    Or,
    SemFormula,
    Theory,
    Var,
    Vocab,
    closure,
    closure_mask,
    eval_formula,
    format_formula,
    parse_formula,
    sem,
    upset_mask,
)
from prefentail.mak import MakModel, classify_mak

VOCABS = [Vocab("pqr"[:n]) for n in (1, 2, 3)]
PQ = VOCABS[1]

fast = settings(deadline=None, max_examples=150, suppress_health_check=[HealthCheck.too_slow])
slow = settings(deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow])


def formulas(vocab, depth=4):
    leaves = st.one_of(st.builds(Const, st.booleans()), st.sampled_from([Var(s) for s in vocab.symbols]))
    if depth == 0:
        return leaves
    sub = formulas(vocab, depth - 1)
    return st.one_of(
        leaves,
        st.builds(Not, sub),
        *(st.builds(op, sub, sub) for op in (And, Or, Implies, Iff)),
    )


vocab_and_formula = st.sampled_from(VOCABS).flatmap(lambda v: st.tuples(st.just(v), formulas(v)))


def class_masks(vocab):
    return st.integers(0, (1 << vocab.n_classes) - 1)


def model_sets(vocab):
    return st.integers(0, vocab.full)


@st.composite
def mak_models(draw, vocab=PQ, max_states=4):
    k = draw(st.integers(1, max_states))
    names = [f"s{i}" for i in range(k)]
    sat = {}
    for s in names:
        if draw(st.booleans()):
            mask = upset_mask(vocab.n_interpretations, draw(model_sets(vocab)))
        else:
            mask = draw(class_masks(vocab))
        sat[s] = FormulaSet(vocab, mask)
    pairs = list(itertools.product(names, names))
    pref = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    return MakModel(vocab, names, sat, pref)


@st.composite
def klm_models(draw, vocab=PQ, max_states=4):
    k = draw(st.integers(1, max_states))
    names = [f"s{i}" for i in range(k)]
    label = {s: Theory(vocab, draw(model_sets(vocab))) for s in names}
    pairs = list(itertools.product(names, names))
    pref = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    return KlmModel(vocab, names, label, pref)


def subset_of(mask):
    return st.integers(0, mask).map(lambda r: r & mask)


# --- formulas ------------------------------------------------------------


@fast
@given(vocab_and_formula)
def test_sem_agrees_with_evaluation(vf):
    vocab, f = vf
    models = sem(f, vocab).models
    for i in range(vocab.n_interpretations):
        mu = Interpretation(vocab, i)
        assert bool(models & mu.bit) == eval_formula(f, mu)


@fast
@given(vocab_and_formula)
def test_printing_round_trips(vf):
    vocab, f = vf
    assert sem(parse_formula(format_formula(f), vocab), vocab) == sem(f, vocab)
    s = sem(f, vocab)
    assert SemFormula.parse(vocab, s.to_formula()) == s


# --- closure --------------------------------------------------------------


@fast
@given(st.sampled_from(VOCABS[:2]).flatmap(lambda v: st.tuples(st.just(v), class_masks(v), model_sets(v))))
def test_galois_connection(args):
    vocab, x, models = args
    left = models & ~closure_mask(x, vocab.full) == 0
    right = x & ~upset_mask(vocab.n_interpretations, models) == 0
    assert left == right


@fast
@given(st.sampled_from(VOCABS[:2]).flatmap(lambda v: st.tuples(st.just(v), class_masks(v))))
def test_closure_is_extensive_and_idempotent(args):
    vocab, x = args
    n, full = vocab.n_interpretations, vocab.full
    closed = upset_mask(n, closure_mask(x, full))
    assert x & ~closed == 0
    assert upset_mask(n, closure_mask(closed, full)) == closed


@fast
@given(st.sampled_from(VOCABS[:2]).flatmap(lambda v: st.tuples(st.just(v), class_masks(v), class_masks(v))))
def test_larger_sets_have_fewer_models(args):
    vocab, x, extra = args
    y = x | extra
    assert closure_mask(y, vocab.full) & ~closure_mask(x, vocab.full) == 0


# --- KLM ------------------------------------------------------------------


@fast
@given(klm_models(), model_sets(PQ))
def test_klm_entailment_is_extensive(m, t):
    out = klm_entail(m, Theory(PQ, t))
    assert out.models & ~t == 0


@fast
@given(klm_models(), class_masks(PQ))
def test_klm_entailment_depends_only_on_closure(m, x):
    # a raw premise set and its deductive closure yield the same theory
    raw = FormulaSet(PQ, x)
    closed = closure(raw).as_formula_set()
    assert klm_entail(m, closure(raw)) == klm_entail(m, closure(closed))


@fast
@given(klm_models(), model_sets(PQ), model_sets(PQ))
def test_klm_satisfying_states_shrink_with_stronger_theories(m, t, extra):
    weaker, stronger = t | extra, t  # stronger theory = fewer models
    assert m.satisfying_mask(stronger) & ~m.satisfying_mask(weaker) == 0


@fast
@given(klm_models())
def test_klm_text_round_trip(m):
    assert parse_klm(format_klm(m)) == m


# --- MAK ------------------------------------------------------------------


@fast
@given(mak_models(), class_masks(PQ), class_masks(PQ))
def test_mak_satisfying_states_shrink_with_more_premises(m, x, extra):
    assert m.satisfying_mask(x | extra) & ~m.satisfying_mask(x) == 0


@fast
@given(mak_models(), class_masks(PQ), class_masks(PQ))
def test_cn_is_a_tarskian_closure(m, x, extra):
    y = x | extra
    cx = m.cn_mask(x)
    assert x & ~cx == 0
    assert m.cn_mask(cx) == cx
    assert cx & ~m.cn_mask(y) == 0


@fast
@given(mak_models(), class_masks(PQ))
def test_mak_entailment_is_extensive(m, x):
    assert x & ~m.entail_mask(x) == 0


@slow
@given(mak_models())
def test_supra_chain(m):
    supra = classify_mak(m).supra_classical
    cn = cn_oracle(m)
    assert (check_supra_entail(cn).verdict == "holds") == supra
    assert (check_precirc(cn).verdict == "holds") == supra
    if supra:
        assert check_precirc(mak_oracle(m)).verdict == "holds"


@slow
@given(mak_models())
def test_cn_passes_the_tarski_check(m):
    assert check_tarski(cn_oracle(m), trials=30).ok
