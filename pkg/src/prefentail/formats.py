"""Line-oriented text formats for KLM models, MAK models and tables.

KLM model::

    vocab p q
    state s1 theory "p & q"
    state s2 theory "q", "~p"     # several formulas are conjoined
    state s3 theory L             # the inconsistent theory
    pref s1 s2                    # s1 is preferred to s2

MAK model::

    vocab p q
    state s1 sat "p & q", "q"     # exactly these classes
    state s2 sat closure "p"      # every consequence of the listed formulas
    state s3 sat                  # satisfies nothing
    pref s1 s2

Table::

    vocab p q
    map 0110 -> 0100              # theories as model-set bitstrings

Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Union

from .klm import KlmModel
from .logic import FormulaSet, SemFormula, Theory, Vocab, closure_mask, iter_bits, upset_mask
from .mak import MakModel
from .translate import PrecircTable

__all__ = [
    "ModelFormatError",
    "parse_klm",
    "parse_mak",
    "parse_model",
    "parse_table",
    "format_klm",
    "format_mak",
    "format_table",
    "load_model",
    "load_table",
    "formula_list",
    "parse_premises",
]


class ModelFormatError(ValueError):
    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


_QUOTED = re.compile(r'"([^"]*)"')


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip() if '"' not in raw else _strip_comment(raw)
        if line:
            yield no, line


def _strip_comment(raw: str) -> str:
    out, quoted = [], False
    for ch in raw:
        if ch == '"':
            quoted = not quoted
        elif ch == "#" and not quoted:
            break
        out.append(ch)
    return "".join(out).strip()


def _quoted_list(rest: str, no: int) -> list[str]:
    items = _QUOTED.findall(rest)
    leftover = _QUOTED.sub("", rest).replace(",", "").strip()
    if leftover:
        raise ModelFormatError(f"unexpected text {leftover!r}; formulas must be double-quoted", no)
    return items


def _header(text: str) -> tuple[Vocab, list[tuple[int, str]]]:
    lines = list(_lines(text))
    if not lines or not lines[0][1].startswith("vocab"):
        raise ModelFormatError("the first directive must be 'vocab'", lines[0][0] if lines else 0)
    no, first = lines[0]
    try:
        vocab = Vocab(first.split()[1:])
    except ValueError as e:
        raise ModelFormatError(str(e), no) from None
    return vocab, lines[1:]


def _sem(vocab: Vocab, text: str, no: int) -> SemFormula:
    try:
        return SemFormula.parse(vocab, text)
    except ValueError as e:
        raise ModelFormatError(f"in formula {text!r}: {e}", no) from None


def _parse_states(text: str, kind: str):
    vocab, lines = _header(text)
    states: list[str] = []
    values: dict = {}
    pref: list[tuple[str, str]] = []
    for no, line in lines:
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "pref":
            parts = rest.split()
            if len(parts) != 2:
                raise ModelFormatError("'pref' takes two state names", no)
            pref.append((parts[0], parts[1]))
        elif head == "state":
            name, _, rest = rest.partition(" ")
            keyword, _, rest = rest.strip().partition(" ")
            if not name or keyword != kind:
                raise ModelFormatError(f"expected 'state NAME {kind} ...'", no)
            if name in values:
                raise ModelFormatError(f"state {name} defined twice", no)
            states.append(name)
            values[name] = _state_value(vocab, kind, rest.strip(), no)
        else:
            raise ModelFormatError(f"unknown directive {head!r}", no)
    known = set(states)
    for a, b in pref:
        if a not in known or b not in known:
            raise ModelFormatError(f"'pref {a} {b}' names an undeclared state")
    return vocab, states, values, pref


def _state_value(vocab: Vocab, kind: str, rest: str, no: int):
    if kind == "theory":
        if rest == "L":
            return Theory.inconsistent(vocab)
        items = _quoted_list(rest, no)
        if not items:
            raise ModelFormatError("a theory needs 'L' or at least one quoted formula", no)
        m = vocab.full
        for item in items:
            m &= _sem(vocab, item, no).models
        return Theory(vocab, m)
    close = False
    if rest.startswith("closure"):
        close, rest = True, rest[len("closure"):].strip()
    classes = [_sem(vocab, item, no) for item in _quoted_list(rest, no)]
    fs = FormulaSet.of(vocab, classes)
    if close:
        return FormulaSet(vocab, upset_mask(vocab.n_interpretations, closure_mask(fs.classes, vocab.full)))
    return fs


def parse_klm(text: str) -> KlmModel:
    vocab, states, labels, pref = _parse_states(text, "theory")
    return KlmModel(vocab, states, labels, pref)


def parse_mak(text: str) -> MakModel:
    vocab, states, sats, pref = _parse_states(text, "sat")
    return MakModel(vocab, states, sats, pref)


def parse_model(text: str) -> Union[KlmModel, MakModel]:
    """Parse either model format, recognised by its state directives."""
    for _, line in _lines(text):
        parts = line.split()
        if parts[0] == "state" and len(parts) >= 3:
            if parts[2] == "theory":
                return parse_klm(text)
            if parts[2] == "sat":
                return parse_mak(text)
    # no states: an empty KLM model
    return parse_klm(text)


def parse_table(text: str) -> PrecircTable:
    vocab, lines = _header(text)
    width = vocab.n_interpretations
    entries: dict[int, int] = {}
    pat = re.compile(rf"map\s+([01]{{{width}}})\s*->\s*([01]{{{width}}})\Z")
    for no, line in lines:
        m = pat.match(line)
        if not m:
            raise ModelFormatError(f"expected 'map <{width} bits> -> <{width} bits>'", no)
        t = int(m.group(1), 2)
        if t in entries:
            raise ModelFormatError(f"theory {m.group(1)} mapped twice", no)
        entries[t] = int(m.group(2), 2)
    missing = [t for t in range(vocab.n_classes) if t not in entries]
    if missing:
        raise ModelFormatError(f"table is not total: no entry for {format(missing[0], f'0{width}b')}")
    return PrecircTable(vocab, tuple(entries[t] for t in range(vocab.n_classes)))


def _quote(f: SemFormula) -> str:
    return '"' + f.to_formula() + '"'


def format_klm(m: KlmModel) -> str:
    lines = [f"vocab {m.vocab}"]
    for s in m.states:
        t = m.label[s]
        lines.append(f"state {s} theory " + ("L" if t.is_inconsistent else _quote(SemFormula(m.vocab, t.models))))
    lines += [f"pref {a} {b}" for a, b in _ordered_pref(m)]
    return "\n".join(lines) + "\n"


def format_mak(m: MakModel) -> str:
    v = m.vocab
    lines = [f"vocab {v}"]
    for s, sat in zip(m.states, m.sat_masks):
        th = closure_mask(sat, v.full)
        if sat and sat == upset_mask(v.n_interpretations, th):
            lines.append(f"state {s} sat closure {_quote(SemFormula(v, th))}")
        else:
            items = ", ".join(_quote(SemFormula(v, c)) for c in iter_bits(sat))
            lines.append(f"state {s} sat {items}".rstrip())
    lines += [f"pref {a} {b}" for a, b in _ordered_pref(m)]
    return "\n".join(lines) + "\n"


def _ordered_pref(m) -> list[tuple[str, str]]:
    pos = {s: i for i, s in enumerate(m.states)}
    return sorted(m.pref, key=lambda p: (pos[p[0]], pos[p[1]]))


def format_table(f: PrecircTable) -> str:
    w = f.vocab.n_interpretations
    lines = [f"vocab {f.vocab}"]
    lines += [f"map {format(t, f'0{w}b')} -> {format(out, f'0{w}b')}" for t, out in enumerate(f.map)]
    return "\n".join(lines) + "\n"


def load_model(path: Union[str, Path]) -> Union[KlmModel, MakModel]:
    return parse_model(Path(path).read_text())


def load_table(path: Union[str, Path]) -> PrecircTable:
    return parse_table(Path(path).read_text())


def formula_list(x: FormulaSet) -> str:
    """Premise text (``;``-separated formulas) denoting exactly the classes of ``x``."""
    return "; ".join(f.to_formula() for f in x)


def parse_premises(vocab: Vocab, text: str) -> FormulaSet:
    """Split on ``;`` and map each formula to its class; blanks are skipped."""
    return FormulaSet.of(vocab, [p.strip() for p in text.split(";") if p.strip()])
