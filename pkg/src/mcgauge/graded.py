"""Exact scalars, graded generators, and sparse rational linear combinations.

Every scalar in this package is a ``fractions.Fraction``; nothing is ever
rounded.  A :class:`Generator` is a named basis symbol carrying a
cohomological degree (any integer) and a positive weight.  Weights model
completeness: all operations add weights, and everything above the ambient
weight cap is identically zero, so every series in sight is a finite sum.

Sign conventions.  Moving ``a`` past ``b`` in a graded expression costs
``(-1)^{|a||b|}`` (the Koszul rule).  :func:`koszul_sign` computes that sign
for a permutation; :func:`antisymmetry_sign` additionally multiplies by the
ordinary sign of the permutation, which is the sign rule for graded
antisymmetric brackets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .errors import DegreeError, InvalidInputError

Rat = Fraction


def rat(value) -> Fraction:
    """Coerce ints, strings like '-3/4', and Fractions to Fraction."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


@dataclass(frozen=True)
class Generator:
    """A graded basis symbol: unique name, integer degree, weight >= 1."""

    name: str
    degree: int
    weight: int

    def __post_init__(self):
        if self.weight < 1:
            raise InvalidInputError(
                f"generator {self.name!r} has weight {self.weight}; weights are >= 1"
            )


def canonical_key(gen: Generator) -> Tuple[int, int, str]:
    """Deterministic term order: by weight, then degree, then name."""
    return (gen.weight, gen.degree, gen.name)


class GradedElement:
    """Finite rational linear combination of generators, in canonical form.

    Zero coefficients are never stored, so equality of elements is plain
    equality of term maps.  Instances are immutable; all arithmetic returns
    new elements.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Generator, Fraction] | None = None):
        clean: Dict[Generator, Fraction] = {}
        if terms:
            for gen, coeff in terms.items():
                c = rat(coeff)
                if c != 0:
                    clean[gen] = c
        self._terms = clean

    @staticmethod
    def zero() -> "GradedElement":
        return GradedElement()

    @staticmethod
    def single(gen: Generator, coeff=1) -> "GradedElement":
        return GradedElement({gen: rat(coeff)})

    @property
    def terms(self) -> Dict[Generator, Fraction]:
        return dict(self._terms)

    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda item: canonical_key(item[0]))

    def support(self) -> Tuple[Generator, ...]:
        return tuple(sorted(self._terms, key=canonical_key))

    def coefficient(self, gen: Generator) -> Fraction:
        return self._terms.get(gen, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_homogeneous(self) -> bool:
        degrees = {gen.degree for gen in self._terms}
        return len(degrees) <= 1

    def degree(self) -> int:
        """Degree of a homogeneous nonzero element."""
        degrees = {gen.degree for gen in self._terms}
        if len(degrees) != 1:
            raise DegreeError(
                "degree undefined: element is zero or not homogeneous"
            )
        return degrees.pop()

    def __add__(self, other: "GradedElement") -> "GradedElement":
        merged = dict(self._terms)
        for gen, coeff in other._terms.items():
            merged[gen] = merged.get(gen, Fraction(0)) + coeff
        return GradedElement(merged)

    def __sub__(self, other: "GradedElement") -> "GradedElement":
        return self + (-other)

    def __neg__(self) -> "GradedElement":
        return GradedElement({g: -c for g, c in self._terms.items()})

    def scale(self, coeff) -> "GradedElement":
        c = rat(coeff)
        if c == 0:
            return GradedElement.zero()
        return GradedElement({g: c * v for g, v in self._terms.items()})

    def __rmul__(self, coeff) -> "GradedElement":
        return self.scale(coeff)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self._terms == other._terms

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for gen, coeff in self.sorted_terms():
            parts.append(f"{coeff} {gen.name}" if coeff != 1 else gen.name)
        return " + ".join(parts)


def canonicalize(element: GradedElement) -> GradedElement:
    """Return the canonical form (no zero coefficients); idempotent."""
    return GradedElement(element.terms)


def homogeneous_components(element: GradedElement) -> Dict[int, GradedElement]:
    """Split an element by degree."""
    buckets: Dict[int, Dict[Generator, Fraction]] = {}
    for gen, coeff in element.terms.items():
        buckets.setdefault(gen.degree, {})[gen] = coeff
    return {deg: GradedElement(t) for deg, t in sorted(buckets.items())}


def _as_zero_based(perm: Sequence[int]) -> list:
    n = len(perm)
    items = list(perm)
    if sorted(items) == list(range(n)):
        return items
    if sorted(items) == list(range(1, n + 1)):
        return [i - 1 for i in items]
    raise InvalidInputError(f"not a permutation of {n} items: {perm!r}")


def koszul_sign(perm: Sequence[int], degrees: Sequence[int]) -> int:
    """Koszul sign of rearranging graded items by ``perm``.

    ``perm[k]`` is the original index of the item placed at position ``k``
    (0- or 1-based are both accepted).  Each inversion of items with degrees
    a, b contributes ``(-1)^{ab}``.
    """
    items = _as_zero_based(perm)
    if len(degrees) != len(items):
        raise InvalidInputError("permutation and degree list have different lengths")
    sign = 1
    for k in range(len(items)):
        for l in range(k + 1, len(items)):
            if items[k] > items[l]:
                if (degrees[items[k]] * degrees[items[l]]) % 2:
                    sign = -sign
    return sign


def antisymmetry_sign(perm: Sequence[int], degrees: Sequence[int]) -> int:
    """Sign rule for graded antisymmetric brackets: sgn(perm) * Koszul."""
    items = _as_zero_based(perm)
    if len(degrees) != len(items):
        raise InvalidInputError("permutation and degree list have different lengths")
    sign = 1
    for k in range(len(items)):
        for l in range(k + 1, len(items)):
            if items[k] > items[l]:
                sign = -sign
                if (degrees[items[k]] * degrees[items[l]]) % 2:
                    sign = -sign
    return sign


_UP = "Σ"        # Σ
_DOWN = "Σ⁻¹"  # Σ⁻¹


def _shift_name(name: str, step: int) -> str:
    if step == 1:
        if name.startswith(_DOWN):
            return name[len(_DOWN):]
        return _UP + name
    if step == -1:
        if name.startswith(_UP) and not name.startswith(_DOWN):
            return name[len(_UP):]
        return _DOWN + name
    raise InvalidInputError("shift step must be +1 or -1")


def suspend(element: GradedElement, shift: int) -> GradedElement:
    """Shift a homogeneous element's degree down by ``shift``.

    The convention is (suspension of V)^i = V^{i+1}: suspending by +1 takes
    a degree-1 generator ``u`` to the degree-0 generator ``Σu``, and
    suspending back is the identity.  Weights are unchanged.
    """
    if element.is_zero():
        return element
    if not element.is_homogeneous():
        raise DegreeError("suspend requires a homogeneous element")
    if shift == 0:
        return element
    step = 1 if shift > 0 else -1
    result = element
    for _ in range(abs(shift)):
        shifted: Dict[Generator, Fraction] = {}
        for gen, coeff in result.terms.items():
            new = Generator(_shift_name(gen.name, step), gen.degree - step, gen.weight)
            shifted[new] = coeff
        result = GradedElement(shifted)
    return result
