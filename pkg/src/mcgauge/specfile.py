"""Line-oriented text format for algebra presentations and named elements.

Grammar (one statement per line, ``#`` starts a comment):

    algebra NAME kind {dgla|dga|linf|ainf} weight-cap W arity-cap A
    generator NAME degree D weight K
    op I [G1,...,GI] = TERM (+|-) TERM ...
    element NAME = TERM (+|-) TERM ...

A TERM is ``RATIONAL NAME``, a bare ``NAME``, or (in element definitions
over the word algebra) ``RATIONAL NAME*NAME*...``; a bare RATIONAL is the
unit word.  Arity-1 entries define the differential.  For dgla/linf kinds
the bracket key must be listed in canonical order (weight, degree, name);
any other order is rejected, so stored entries never need sign fixing.

Rationals print as ``p/q`` with positive q in lowest terms, or ``p`` alone.
Parsing a printed document reproduces it byte for byte.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import AlgebraError, InvalidInputError, ParseError
from .freealg import FreeAlgebra, FreeAlgebraElement
from .graded import GradedElement, Generator, canonical_key
from .structure import ANTISYMMETRIC_KINDS, AlgebraSpec, KINDS, PolyPath

TermList = List[Tuple[Fraction, Tuple[str, ...]]]

_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_RATIONAL = r"-?\d+(?:/\d+)?"
_ALGEBRA_RE = re.compile(
    rf"^algebra\s+({_NAME})\s+kind\s+(\w+)\s+weight-cap\s+(\d+)\s+arity-cap\s+(\d+)$"
)
_GENERATOR_RE = re.compile(
    rf"^generator\s+({_NAME})\s+degree\s+(-?\d+)\s+weight\s+(\d+)$"
)
_OP_RE = re.compile(rf"^op\s+(\d+)\s+\[([^\]]*)\]\s*=\s*(.+)$")
_ELEMENT_RE = re.compile(rf"^element\s+({_NAME})\s*=\s*(.+)$")
_TERM_RE = re.compile(
    rf"^(?:({_RATIONAL})\s+)?({_NAME}(?:\*{_NAME})*)$|^({_RATIONAL})$"
)


@dataclass
class SpecDocument:
    """Parsed presentation plus named element (and path) definitions."""

    spec: AlgebraSpec
    elements: Dict[str, TermList] = field(default_factory=dict)
    paths: Dict[str, PolyPath] = field(default_factory=dict)

    def graded_element(self, name: str) -> GradedElement:
        """A named element as a linear combination (words must be letters)."""
        terms = self._lookup(name)
        mapping: Dict[str, Fraction] = {}
        for coeff, word in terms:
            if len(word) != 1:
                raise InvalidInputError(
                    f"element {name!r} uses words; expected a linear combination"
                )
            mapping[word[0]] = mapping.get(word[0], Fraction(0)) + coeff
        return self.spec.element(mapping)

    def word_element(self, name: str, algebra: FreeAlgebra) -> FreeAlgebraElement:
        """A named element as a word polynomial in the given algebra."""
        terms = self._lookup(name)
        acc: Dict[Tuple[str, ...], Fraction] = {}
        for coeff, word in terms:
            acc[word] = acc.get(word, Fraction(0)) + coeff
        return algebra.element(acc)

    def _lookup(self, name: str) -> TermList:
        if name not in self.elements:
            raise InvalidInputError(f"no element named {name!r} in the document")
        return self.elements[name]


def _parse_terms(text: str, line_no: int) -> TermList:
    text = text.strip()
    if text == "0":
        return []
    terms: TermList = []
    sign = 1
    # split into (+|-)-separated chunks, keeping a leading sign on the first
    chunks = re.split(r"\s+([+-])\s+", text)
    pending = chunks[0]
    rest = chunks[1:]
    items = [(1, pending)]
    for op, chunk in zip(rest[0::2], rest[1::2]):
        items.append((1 if op == "+" else -1, chunk))
    for sgn, chunk in items:
        chunk = chunk.strip()
        m = _TERM_RE.match(chunk)
        if not m:
            raise ParseError(f"cannot parse term {chunk!r}", line=line_no)
        if m.group(3) is not None:
            coeff = Fraction(m.group(3))
            word: Tuple[str, ...] = ()
        else:
            coeff = Fraction(m.group(1)) if m.group(1) else Fraction(1)
            word = tuple(m.group(2).split("*"))
        terms.append((Fraction(sgn) * coeff, word))
    return terms


def parse_spec(text: str) -> SpecDocument:
    """Parse a document; syntax and semantic problems raise ParseError
    carrying the offending line number."""
    header: Optional[Tuple[str, str, int, int]] = None
    generators: List[Generator] = []
    seen: Dict[str, Generator] = {}
    ops: List[Tuple[int, int, Tuple[str, ...], TermList]] = []
    elements: Dict[str, TermList] = {}

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word = line.split(None, 1)[0]
        if word == "algebra":
            m = _ALGEBRA_RE.match(line)
            if not m:
                raise ParseError("malformed algebra line", line=line_no)
            if header is not None:
                raise ParseError("duplicate algebra line", line=line_no)
            name, kind, cap, arity = m.group(1), m.group(2), int(m.group(3)), int(m.group(4))
            if kind not in KINDS:
                raise ParseError(f"unknown kind {kind!r}", line=line_no)
            header = (name, kind, cap, arity)
        elif word == "generator":
            m = _GENERATOR_RE.match(line)
            if not m:
                raise ParseError("malformed generator line", line=line_no)
            if header is None:
                raise ParseError("generator before algebra line", line=line_no)
            gname, degree, weight = m.group(1), int(m.group(2)), int(m.group(3))
            if gname in seen:
                raise ParseError(f"duplicate generator {gname!r}", line=line_no)
            if weight < 1:
                raise ParseError("generator weight must be >= 1", line=line_no)
            gen = Generator(gname, degree, weight)
            seen[gname] = gen
            generators.append(gen)
        elif word == "op":
            m = _OP_RE.match(line)
            if not m:
                raise ParseError("malformed op line", line=line_no)
            if header is None:
                raise ParseError("op before algebra line", line=line_no)
            arity = int(m.group(1))
            key = tuple(n.strip() for n in m.group(2).split(",") if n.strip())
            if len(key) != arity:
                raise ParseError(
                    f"op key {key!r} does not have arity {arity}", line=line_no
                )
            for n in key:
                if n not in seen:
                    raise ParseError(f"undeclared generator {n!r}", line=line_no)
            value = _parse_terms(m.group(3), line_no)
            ops.append((line_no, arity, key, value))
        elif word == "element":
            m = _ELEMENT_RE.match(line)
            if not m:
                raise ParseError("malformed element line", line=line_no)
            if header is None:
                raise ParseError("element before algebra line", line=line_no)
            ename = m.group(1)
            if ename in elements:
                raise ParseError(f"duplicate element {ename!r}", line=line_no)
            terms = _parse_terms(m.group(2), line_no)
            for _, w in terms:
                for n in w:
                    if n not in seen:
                        raise ParseError(f"undeclared generator {n!r}", line=line_no)
            elements[ename] = terms
        else:
            raise ParseError(f"unknown statement {word!r}", line=line_no)

    if header is None:
        raise ParseError("missing algebra line", line=1)
    name, kind, cap, arity_cap = header

    table: Dict[Tuple[int, Tuple[str, ...]], GradedElement] = {}
    for line_no, arity, key, value in ops:
        mapping: Dict[str, Fraction] = {}
        for coeff, w in value:
            if len(w) != 1:
                raise ParseError("op values are linear combinations", line=line_no)
            mapping[w[0]] = mapping.get(w[0], Fraction(0)) + coeff
        element = GradedElement({seen[n]: c for n, c in mapping.items()})
        if (arity, key) in table:
            raise ParseError(f"duplicate op entry {key!r}", line=line_no)
        # semantic checks, attributed to this line
        in_degree = sum(seen[n].degree for n in key)
        expected = in_degree + 2 - arity
        for gen, _ in element.terms.items():
            if gen.degree != expected:
                raise ParseError(
                    f"entry {list(key)!r}: output degree {gen.degree}, "
                    f"expected {expected}",
                    line=line_no,
                )
            if gen.weight < sum(seen[n].weight for n in key):
                raise ParseError(
                    f"entry {list(key)!r}: output weight decreases", line=line_no
                )
        if kind in ("dgla", "dga") and arity > 2:
            raise ParseError(
                f"kind {kind} only allows arities 1 and 2", line=line_no
            )
        if arity > arity_cap:
            raise ParseError(
                f"arity {arity} exceeds arity cap {arity_cap}", line=line_no
            )
        if kind in ANTISYMMETRIC_KINDS:
            ordered = sorted(key, key=lambda n: canonical_key(seen[n]))
            if list(key) != ordered:
                raise ParseError(
                    f"bracket key {list(key)!r} is not in canonical order "
                    f"{ordered!r}",
                    line=line_no,
                )
        table[(arity, key)] = element

    try:
        spec = AlgebraSpec(
            kind=kind,
            generators=generators,
            weight_cap=cap,
            arity_cap=arity_cap,
            table=table,
            name=name,
        )
    except AlgebraError as err:
        raise ParseError(str(err)) from err
    return SpecDocument(spec=spec, elements=elements)


# -- printing ------------------------------------------------------------------


def render_rational(value: Fraction) -> str:
    return str(value)


def _join_terms(pairs: Sequence[Tuple[Fraction, Optional[str]]]) -> str:
    """Render (coefficient, word-text-or-None) pairs; None is the unit."""
    if not pairs:
        return "0"
    parts: List[str] = []
    for coeff, text in pairs:
        mag = abs(coeff)
        if text is None:
            token = render_rational(mag)
        elif mag == 1:
            token = text
        else:
            token = f"{render_rational(mag)} {text}"
        if parts:
            parts.append(("+ " if coeff > 0 else "- ") + token)
        elif coeff > 0:
            parts.append(token)
        elif text is None:
            parts.append(render_rational(coeff))
        else:
            parts.append(f"{render_rational(coeff)} {text}")
    return " ".join(parts)


def render_element(element: GradedElement) -> str:
    """Canonical, re-parseable rendering of a linear combination."""
    return _join_terms(
        [(coeff, gen.name) for gen, coeff in element.sorted_terms()]
    )


def render_word_element(element: FreeAlgebraElement) -> str:
    """Canonical rendering of a word polynomial (unit word prints as 1)."""
    return _join_terms(
        [
            (coeff, "*".join(mono) if mono else None)
            for mono, coeff in element.sorted_terms()
        ]
    )


def render_terms(terms: TermList) -> str:
    return _join_terms(
        [(coeff, "*".join(word) if word else None) for coeff, word in terms]
    )


def render_document(doc: SpecDocument) -> str:
    """Canonical printing: generators in canonical order, ops sorted by
    arity then key, elements by name.  parse(render(parse(x))) == parse(x)."""
    spec = doc.spec
    lines = [
        f"algebra {spec.name or 'A'} kind {spec.kind} "
        f"weight-cap {spec.weight_cap} arity-cap {spec.arity_cap}"
    ]
    for gen in spec.generators:
        lines.append(f"generator {gen.name} degree {gen.degree} weight {gen.weight}")
    for (arity, key), value in sorted(
        spec.table.items(),
        key=lambda item: (item[0][0], tuple(canonical_key(spec.gen(n)) for n in item[0][1])),
    ):
        lines.append(f"op {arity} [{','.join(key)}] = {render_element(value)}")
    for name in sorted(doc.elements):
        lines.append(f"element {name} = {render_terms(doc.elements[name])}")
    return "\n".join(lines) + "\n"
