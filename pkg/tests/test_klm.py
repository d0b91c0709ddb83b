import pytest

from prefentail.klm import (
    KlmModel,
    UnknownStateError,
    classify,
    is_smooth,
    klm_entail,
    klm_minimal,
    klm_sat,
    klm_states_of,
    theory_state_name,
)
from prefentail.logic import Theory, Vocab, enumerate_theories

PQ = Vocab(["p", "q"])


def th(*texts):
    return Theory.parse(PQ, *texts)


@pytest.fixture
def two_state():
    """s1 labelled p&q preferred to s2 labelled ~p&q."""
    return KlmModel(PQ, ["s1", "s2"], {"s1": th("p & q"), "s2": th("~p & q")}, [("s1", "s2")])


def test_sat():
    m = KlmModel(PQ, ["s", "l"], {"s": th("p & q"), "l": Theory.inconsistent(PQ)})
    assert klm_sat(m, "s", th("q"))
    assert klm_sat(m, "l", th("p & ~p"))
    assert klm_sat(m, "l", th("p"))
    m2 = KlmModel(PQ, ["s"], {"s": th("q")})
    assert not klm_sat(m2, "s", th("p & q"))


def test_unknown_state():
    m = KlmModel(PQ, ["s"], {"s": th("q")})
    with pytest.raises(UnknownStateError):
        klm_sat(m, "nope", th("q"))
    with pytest.raises(UnknownStateError):
        KlmModel(PQ, ["s"], {"s": th("q")}, [("s", "t")])


def test_states_of(two_state):
    assert klm_states_of(two_state, th("q")) == {"s1", "s2"}
    assert klm_states_of(two_state, th("~p")) == {"s2"}
    assert klm_states_of(two_state, Theory.inconsistent(PQ)) == set()


def test_minimal_edges():
    m = KlmModel(PQ, ["s1", "s2"], {"s1": th("q"), "s2": th("q")}, [("s1", "s2")])
    assert klm_minimal(m, th("q")) == {"s1"}
    cyc = KlmModel(PQ, ["s1", "s2"], {"s1": th("q"), "s2": th("q")}, [("s1", "s2"), ("s2", "s1")])
    assert klm_minimal(cyc, th("q")) == set()
    refl = KlmModel(PQ, ["s1"], {"s1": th("q")}, [("s1", "s1")])
    assert klm_minimal(refl, th("q")) == set()


def test_minimality_is_relative_to_satisfying_states(two_state):
    # s1 is preferred to s2 but does not satisfy ~p, so s2 stays minimal there
    assert klm_minimal(two_state, th("~p")) == {"s2"}


def test_entail(two_state):
    assert klm_entail(two_state, th("q")) == th("p & q")
    assert klm_entail(two_state, th("~p")) == th("~p & q")
    assert klm_entail(two_state, th("~q")) == Theory.inconsistent(PQ)


def test_entail_is_extensive_on_every_theory(two_state):
    for t in enumerate_theories(PQ):
        assert klm_entail(two_state, t).models & ~t.models == 0


def test_classify(two_state):
    k = classify(two_state)
    assert k.consistent_states and k.singular and k.smooth
    assert not k.simplified and not k.strictly_singular
    assert k.irreflexive is None and k.transitive is None
    assert not classify(KlmModel(PQ, ["s"], {"s": Theory.inconsistent(PQ)})).consistent_states


def test_two_cycle_is_not_smooth():
    m = KlmModel(PQ, ["s1", "s2"], {"s1": th("q"), "s2": th("q")}, [("s1", "s2"), ("s2", "s1")])
    assert not is_smooth(m)


def test_order_flags():
    m = KlmModel(PQ, ["a", "b", "c"], {s: th("q") for s in "abc"}, [("a", "b"), ("b", "c")])
    k = classify(m, order_flags=True)
    assert k.irreflexive and not k.transitive


def test_simplified_and_strictly_singular():
    theories = list(enumerate_theories(PQ))
    names = [theory_state_name(t) for t in theories]
    simp = KlmModel(PQ, names, dict(zip(names, theories)))
    k = classify(simp)
    assert k.simplified and not k.singular and not k.strictly_singular
    complete = [Theory(PQ, 1 << i) for i in range(4)]
    cn = [theory_state_name(t) for t in complete]
    k2 = classify(KlmModel(PQ, cn, dict(zip(cn, complete))))
    assert k2.strictly_singular and k2.singular and not k2.simplified


def test_equal_models_hash_equal(two_state):
    other = KlmModel(PQ, ["s1", "s2"], {"s1": th("q & p"), "s2": th("q & ~p")}, [("s1", "s2")])
    assert other == two_state and hash(other) == hash(two_state)
