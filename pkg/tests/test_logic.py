import pytest

from prefentail.logic import (
    And,
    FormulaSet,
    FormulaSyntaxError,
    Implies,
    Interpretation,
    Not,
    SemFormula,
    SizeGuardError,
    Theory,
    UnknownSymbolError,
    Var,
    Vocab,
    closure,
    entails,
    enumerate_interpretations,
    enumerate_semformulas,
    enumerate_theories,
    eval_formula,
    format_formula,
    is_complete,
    is_closed,
    parse_formula,
    sem,
)

PQ = Vocab(["p", "q"])


def mu(*true):
    return Interpretation.from_true_set(PQ, true)


def models(*sets):
    return {frozenset(s) for s in sets}


class TestParsing:
    def test_conjunction(self):
        assert parse_formula("p & q", PQ) == And(Var("p"), Var("q"))

    def test_negated_implication(self):
        assert parse_formula("~(p -> q)", PQ) == Not(Implies(Var("p"), Var("q")))

    def test_unknown_symbol_is_named(self):
        with pytest.raises(UnknownSymbolError) as e:
            parse_formula("p | r", PQ)
        assert e.value.symbol == "r"

    def test_syntax_error_has_position(self):
        with pytest.raises(FormulaSyntaxError) as e:
            parse_formula("p & & q", PQ)
        assert e.value.position == 4

    @pytest.mark.parametrize(
        "text, same_as",
        [
            ("~p & q", "(~p) & q"),
            ("p & q | p", "(p & q) | p"),
            ("p | q -> q", "(p | q) -> q"),
            ("p -> q -> p", "p -> (q -> p)"),
            ("p -> q <-> q", "(p -> q) <-> q"),
        ],
    )
    def test_precedence(self, text, same_as):
        assert parse_formula(text, PQ) == parse_formula(same_as, PQ)

    @pytest.mark.parametrize("text", ["p & q", "~(p -> q)", "p -> q -> p", "(p -> q) -> p", "~~p | true", "(p | q) & ~q", "p <-> (q <-> false)"])
    def test_printer_round_trip(self, text):
        f = parse_formula(text, PQ)
        assert parse_formula(format_formula(f), PQ) == f
        assert format_formula(f).replace(" ", "") == format_formula(parse_formula(format_formula(f), PQ)).replace(" ", "")


class TestEvalSem:
    def test_eval(self):
        conj = parse_formula("p & q", PQ)
        assert eval_formula(conj, mu("p", "q"))
        assert not eval_formula(conj, mu("p"))
        assert eval_formula(parse_formula("p -> q", PQ), mu())

    def test_sem_of_atom(self):
        f = sem(parse_formula("p", PQ), PQ)
        assert {i.true_set for i in f.interpretations()} == models({"p"}, {"p", "q"})

    def test_tautology_and_contradiction(self):
        assert len(SemFormula.parse(PQ, "p | ~p")) == 4
        assert SemFormula.parse(PQ, "p & ~p").models == 0

    def test_equivalent_formulas_share_a_class(self):
        assert SemFormula.parse(PQ, "p -> q") == SemFormula.parse(PQ, "~p | q")

    def test_bitstring_layout(self):
        # interpretations in order {}, {q}, {p}, {p,q}
        assert SemFormula.parse(PQ, "p").bitstring == "0011"
        assert SemFormula.parse(PQ, "q").bitstring == "0101"
        assert SemFormula.parse(PQ, "p & q").bitstring == "0001"


class TestTheories:
    def test_closure_of_atoms(self):
        t = closure(FormulaSet.of(PQ, ["p", "q"]))
        assert {i.true_set for i in t.interpretations()} == models({"p", "q"})

    def test_closure_of_nothing_is_tautologies(self):
        assert closure(FormulaSet.empty(PQ)) == Theory.tautologies(PQ)

    def test_closure_respects_equivalence(self):
        assert closure(FormulaSet.of(PQ, ["p & q"])) == closure(FormulaSet.of(PQ, ["p", "q"]))

    def test_entails(self):
        assert entails(Theory.parse(PQ, "p & q"), SemFormula.parse(PQ, "p"))
        assert entails(Theory.inconsistent(PQ), SemFormula.parse(PQ, "p & ~p"))
        assert not entails(Theory.tautologies(PQ), SemFormula.parse(PQ, "p"))

    def test_is_complete(self):
        assert is_complete(Theory.parse(PQ, "p & ~q"))
        assert not is_complete(Theory.inconsistent(PQ))
        assert not is_complete(Theory.tautologies(PQ))

    def test_inconsistent_theory_is_not_complete_by_definition(self):
        # a complete theory holds exactly one of f and ~f for every f; L holds both
        t = Theory.inconsistent(PQ)
        f = SemFormula.parse(PQ, "p")
        assert f in t and ~f in t

    def test_containment_reverses(self):
        weak, strong = Theory.parse(PQ, "p"), Theory.parse(PQ, "p & q")
        assert weak.issubset(strong)
        assert not strong.issubset(weak)

    def test_theory_as_formula_set_is_closed(self):
        fs = Theory.parse(PQ, "p").as_formula_set()
        assert is_closed(fs)
        assert len(fs) == 4  # classes containing both models of p
        assert not is_closed(FormulaSet.of(PQ, ["p & q"]))

    def test_str(self):
        assert str(Theory.parse(PQ, "p", "q")) == "Th(p & q)"
        assert str(Theory.inconsistent(PQ)) == "L"


class TestEnumeration:
    def test_counts_two_symbols(self):
        assert len(list(enumerate_interpretations(PQ))) == 4
        assert len(list(enumerate_semformulas(PQ))) == 16
        assert len(list(enumerate_theories(PQ))) == 16

    def test_counts_one_symbol(self):
        v = Vocab(["p"])
        assert len(list(enumerate_interpretations(v))) == 2
        assert len(list(enumerate_semformulas(v))) == 4

    def test_canonical_order_is_bitstring_order(self):
        bits = [t.bitstring for t in enumerate_theories(PQ)]
        assert bits == sorted(bits)
        assert len(set(bits)) == 16

    def test_size_guard(self):
        with pytest.raises(SizeGuardError):
            next(enumerate_semformulas(Vocab(list("abcde"))))

    def test_size_guard_reads_environment(self, monkeypatch):
        monkeypatch.setenv("PREFENTAIL_MAX_CLASSES", "8")
        with pytest.raises(SizeGuardError):
            next(enumerate_theories(PQ))


class TestVocab:
    @pytest.mark.parametrize("bad", [[], ["p", "p"], ["1x"], ["true"]])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            Vocab(bad)

    def test_short_formula_text_round_trips(self):
        for v in (Vocab(["p"]), PQ, Vocab(["p", "q", "r"])):
            for f in enumerate_semformulas(v):
                assert SemFormula.parse(v, f.to_formula()) == f
