"""Free graded-commutative and free tensor algebras with differentials.

A presentation's *representing algebra* is the free algebra on one dual
generator per generator, commutative for dgla/linf and tensor for dga/ainf,
carrying a square-zero degree-shifting derivation ``m`` that encodes the
whole bracket table.  Dual generators carry degree |v| - 1 and the same
weight as v.

Sign conventions, pinned so that the derivation-exponential route agrees
with the closed gauge formula on dgla presentations (the closed formula is
the sign oracle):

* the arity-i component of ``m`` on the dual of w is

      m_i(w*) = -(-1)^{|w|-1} * (1/i! for the commutative flavor)
                * sum over ordered argument tuples (g_1 .. g_i) of
                  [coefficient of w in the suspended operation on the tuple]
                  * (-1)^{sum_{j<l} (|g_j|-1)(|g_l|-1)} * g_1* ... g_i*

* evaluating the dual of g against a degree-0 element x, or against a
  Maurer-Cartan element xi, is plainly the g-coefficient of x or xi (the
  Koszul evaluation sign is +1 in both cases).

A constant derivation (one whose generator values are scalars) composed
with ``m`` strictly consumes weight, because ``m`` never increases the
weight of dual monomials and every generator weighs at least 1.  That makes
the bracket-derivation exponential a finite sum, bounded by the weight cap;
exceeding the bound raises :class:`~mcgauge.errors.DivergenceError` rather
than silently truncating.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import (
    DegreeError,
    DivergenceError,
    InvalidInputError,
    NotMaurerCartanError,
)
from .graded import GradedElement, Generator, rat
from .structure import (
    ANTISYMMETRIC_KINDS,
    AlgebraSpec,
    mc_defect,
    suspended_op,
)

COMMUTATIVE = "commutative"
TENSOR = "tensor"

Monomial = Tuple[str, ...]


@dataclass(frozen=True)
class FreeGenerator:
    name: str
    degree: int
    weight: int


class FreeAlgebra:
    """Context for a free algebra: flavor, generators, weight cap."""

    def __init__(self, flavor: str, generators: Sequence[FreeGenerator], weight_cap: int):
        if flavor not in (COMMUTATIVE, TENSOR):
            raise InvalidInputError(f"unknown flavor {flavor!r}")
        self.flavor = flavor
        self.weight_cap = weight_cap
        self.gens: Dict[str, FreeGenerator] = {}
        for g in generators:
            if g.name in self.gens:
                raise InvalidInputError(f"duplicate free generator {g.name!r}")
            self.gens[g.name] = g

    def degree_of(self, name: str) -> int:
        return self.gens[name].degree

    def weight_of_monomial(self, mono: Monomial) -> int:
        return sum(self.gens[n].weight for n in mono)

    def sort_key(self, name: str):
        g = self.gens[name]
        return (g.weight, g.degree, g.name)

    def normalize_monomial(self, mono: Monomial) -> Optional[Tuple[Monomial, int]]:
        """Canonical form of a word; None when it is zero.

        Tensor flavor keeps the word.  Commutative flavor sorts it,
        collecting the Koszul sign, and kills squares of odd generators.
        Words above the weight cap are zero in either flavor.
        """
        if self.weight_of_monomial(mono) > self.weight_cap:
            return None
        if self.flavor == TENSOR:
            return mono, 1
        names = list(mono)
        sign = 1
        # insertion sort; each adjacent swap of odd-degree symbols flips sign
        for i in range(1, len(names)):
            j = i
            while j > 0 and self.sort_key(names[j - 1]) > self.sort_key(names[j]):
                if (self.degree_of(names[j - 1]) * self.degree_of(names[j])) % 2:
                    sign = -sign
                names[j - 1], names[j] = names[j], names[j - 1]
                j -= 1
        for a, b in zip(names, names[1:]):
            if a == b and self.degree_of(a) % 2:
                return None
        return tuple(names), sign

    def element(self, terms: Mapping[Monomial, object]) -> "FreeAlgebraElement":
        acc: Dict[Monomial, Fraction] = {}
        for mono, coeff in terms.items():
            norm = self.normalize_monomial(tuple(mono))
            if norm is None:
                continue
            word, sign = norm
            c = rat(coeff) * sign
            if c != 0:
                acc[word] = acc.get(word, Fraction(0)) + c
        return FreeAlgebraElement(self, acc)

    def monomial(self, names: Sequence[str], coeff=1) -> "FreeAlgebraElement":
        return self.element({tuple(names): coeff})

    def generator(self, name: str) -> "FreeAlgebraElement":
        if name not in self.gens:
            raise InvalidInputError(f"unknown free generator {name!r}")
        return self.monomial((name,))

    def one(self) -> "FreeAlgebraElement":
        return self.monomial(())

    def zero(self) -> "FreeAlgebraElement":
        return FreeAlgebraElement(self, {})


class FreeAlgebraElement:
    """Sparse word-to-coefficient map over a :class:`FreeAlgebra`."""

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: FreeAlgebra, terms: Mapping[Monomial, Fraction]):
        self.algebra = algebra
        self._terms = {m: c for m, c in terms.items() if c != 0}

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def sorted_terms(self):
        def key(item):
            mono, _ = item
            return (
                self.algebra.weight_of_monomial(mono),
                len(mono),
                tuple(self.algebra.sort_key(n) for n in mono),
            )

        return sorted(self._terms.items(), key=key)

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def _check_same(self, other: "FreeAlgebraElement"):
        if self.algebra is not other.algebra:
            if (
                self.algebra.flavor != other.algebra.flavor
                or self.algebra.gens != other.algebra.gens
                or self.algebra.weight_cap != other.algebra.weight_cap
            ):
                raise InvalidInputError("elements live in different free algebras")

    def __add__(self, other: "FreeAlgebraElement") -> "FreeAlgebraElement":
        self._check_same(other)
        merged = dict(self._terms)
        for mono, coeff in other._terms.items():
            merged[mono] = merged.get(mono, Fraction(0)) + coeff
        return FreeAlgebraElement(self.algebra, merged)

    def __sub__(self, other: "FreeAlgebraElement") -> "FreeAlgebraElement":
        return self + (-other)

    def __neg__(self) -> "FreeAlgebraElement":
        return FreeAlgebraElement(self.algebra, {m: -c for m, c in self._terms.items()})

    def scale(self, coeff) -> "FreeAlgebraElement":
        c = rat(coeff)
        if c == 0:
            return self.algebra.zero()
        return FreeAlgebraElement(self.algebra, {m: c * v for m, v in self._terms.items()})

    def __rmul__(self, coeff) -> "FreeAlgebraElement":
        return self.scale(coeff)

    def __mul__(self, other: "FreeAlgebraElement") -> "FreeAlgebraElement":
        self._check_same(other)
        acc: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                norm = self.algebra.normalize_monomial(m1 + m2)
                if norm is None:
                    continue
                word, sign = norm
                c = c1 * c2 * sign
                if c != 0:
                    acc[word] = acc.get(word, Fraction(0)) + c
        return FreeAlgebraElement(self.algebra, acc)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreeAlgebraElement):
            return NotImplemented
        return self._terms == other._terms

    def monomial_degree(self, mono: Monomial) -> int:
        return sum(self.algebra.degree_of(n) for n in mono)

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, coeff in self.sorted_terms():
            word = ".".join(mono) if mono else "1"
            parts.append(f"{coeff} {word}" if coeff != 1 or not mono else word)
        return " + ".join(parts)


@dataclass
class DerivationTable:
    """A graded derivation given by its generator values.

    Generators absent from ``values`` map to zero.  ``parity`` is the mod-2
    degree of the derivation, which fixes the Leibniz signs:
    D(ab) = D(a) b + (-1)^{parity |a|} a D(b).
    """

    algebra: FreeAlgebra
    values: Dict[str, FreeAlgebraElement]
    parity: int


def apply_derivation(D: DerivationTable, element: FreeAlgebraElement) -> FreeAlgebraElement:
    """Graded Leibniz extension of a derivation table; exact, weight-capped."""
    if D.algebra is not element.algebra and D.algebra.gens != element.algebra.gens:
        raise InvalidInputError("derivation and element flavors do not match")
    algebra = element.algebra
    result = algebra.zero()
    for mono, coeff in element._terms.items():
        prefix_degree = 0
        for j, name in enumerate(mono):
            image = D.values.get(name)
            if image is not None and not image.is_zero():
                sign = -1 if (D.parity * prefix_degree) % 2 else 1
                left = algebra.monomial(mono[:j])
                right = algebra.monomial(mono[j + 1:])
                result = result + (left * image * right).scale(coeff * sign)
            prefix_degree += algebra.degree_of(name)
    return result


def exp_derivation(
    D: DerivationTable, element: FreeAlgebraElement, max_iter: int
) -> FreeAlgebraElement:
    """Sum of D^n / n! applied to ``element``, stopping when a power vanishes."""
    acc = element
    term = element
    n = 0
    while not term.is_zero():
        n += 1
        if n > max_iter:
            raise DivergenceError(
                f"derivation exponential did not terminate within {max_iter} steps"
            )
        term = apply_derivation(D, term).scale(Fraction(1, n))
        acc = acc + term
    return acc


class RepresentingAlgebra:
    """Free algebra on shifted duals with the structure-encoding differential."""

    def __init__(self, spec: AlgebraSpec, algebra: FreeAlgebra, differential: DerivationTable):
        self.spec = spec
        self.algebra = algebra
        self.differential = differential

    def dual_name(self, name: str) -> str:
        return name + "*"

    def base_name(self, dual_name: str) -> str:
        return dual_name[:-1]

    def dual(self, name: str) -> FreeGenerator:
        return self.algebra.gens[self.dual_name(name)]

    def dual_element(self, name: str) -> FreeAlgebraElement:
        return self.algebra.generator(self.dual_name(name))


def build_representing(spec: AlgebraSpec) -> RepresentingAlgebra:
    """Representing algebra of a presentation.

    Commutative flavor with 1/i! scaling for dgla/linf; tensor flavor,
    unscaled, for dga/ainf (invariants and coinvariants need no
    identification there).
    """
    flavor = COMMUTATIVE if spec.kind in ANTISYMMETRIC_KINDS else TENSOR
    duals = [
        FreeGenerator(g.name + "*", g.degree - 1, g.weight) for g in spec.generators
    ]
    algebra = FreeAlgebra(flavor, duals, spec.weight_cap)
    values: Dict[str, FreeAlgebraElement] = {
        g.name + "*": algebra.zero() for g in spec.generators
    }
    commutative = flavor == COMMUTATIVE
    for (arity, key), _entry in spec.table.items():
        tuples = set(itertools.permutations(key)) if commutative else {tuple(key)}
        for tup in tuples:
            gens = [spec.gen(n) for n in tup]
            value = suspended_op(spec, arity, [GradedElement.single(g) for g in gens])
            if value.is_zero():
                continue
            # Koszul pairing sign between the dual monomial and the tuple,
            # computed on suspended degrees.
            exponent = 0
            sus = [g.degree - 1 for g in gens]
            for j in range(arity):
                for l in range(j + 1, arity):
                    exponent += sus[j] * sus[l]
            kappa = -1 if exponent % 2 else 1
            mono = tuple(g.name + "*" for g in gens)
            for target, coeff in value.terms.items():
                total = coeff * kappa
                if (target.degree - 1) % 2 == 0:
                    total = -total
                if commutative:
                    total = total / factorial(arity)
                dual_name = target.name + "*"
                values[dual_name] = values[dual_name] + algebra.element({mono: total})
    differential = DerivationTable(algebra, values, parity=1)
    return RepresentingAlgebra(spec, algebra, differential)


def evaluation_derivation(rep: RepresentingAlgebra, x: GradedElement) -> DerivationTable:
    """The constant odd derivation pairing each dual generator against ``x``."""
    if not x.is_zero() and (not x.is_homogeneous() or x.degree() != 0):
        raise DegreeError("evaluation derivations pair against degree-0 elements")
    values: Dict[str, FreeAlgebraElement] = {}
    for gen, coeff in x.terms.items():
        values[rep.dual_name(gen.name)] = rep.algebra.monomial((), coeff)
    return DerivationTable(rep.algebra, values, parity=1)


def bracket_derivation(rep: RepresentingAlgebra, x: GradedElement) -> DerivationTable:
    """Commutator of the evaluation derivation with the differential.

    On generators the differential-then-evaluate composite is the whole
    commutator, since the differential kills scalars.
    """
    ev = evaluation_derivation(rep, x)
    values = {
        name: apply_derivation(ev, image)
        for name, image in rep.differential.values.items()
    }
    return DerivationTable(rep.algebra, values, parity=0)


def exp_bracket_derivation(
    spec: AlgebraSpec, x: GradedElement, rep: Optional[RepresentingAlgebra] = None
) -> Dict[str, FreeAlgebraElement]:
    """Value of the bracket-derivation exponential on every dual generator.

    Terminates within weight-cap many steps for any valid presentation;
    raises DivergenceError beyond that bound (malformed tables only).
    """
    if rep is None:
        rep = build_representing(spec)
    ev = evaluation_derivation(rep, x)
    result: Dict[str, FreeAlgebraElement] = {}
    bound = spec.weight_cap
    for gen in spec.generators:
        dual = rep.dual_name(gen.name)
        acc = rep.algebra.generator(dual)
        term = acc
        n = 0
        while True:
            step = apply_derivation(ev, apply_derivation(rep.differential, term))
            if step.is_zero():
                break
            n += 1
            if n > bound:
                raise DivergenceError(
                    f"bracket-derivation exponential on {dual} exceeded "
                    f"{bound} steps; the table is not weight-nilpotent"
                )
            term = step.scale(Fraction(1, n))
            acc = acc + term
        result[dual] = acc
    return result


def evaluate_against(
    rep: RepresentingAlgebra, xi: GradedElement, element: FreeAlgebraElement
) -> Fraction:
    """Apply the algebra map classifying ``xi`` to a dual-algebra element."""
    total = Fraction(0)
    for mono, coeff in element._terms.items():
        value = coeff
        for dual_name in mono:
            gen = rep.spec.gen(rep.base_name(dual_name))
            factor = xi.coefficient(gen)
            if factor == 0:
                value = Fraction(0)
                break
            value *= factor
        total += value
    return total


def gauge_via_exp(
    spec: AlgebraSpec,
    x: GradedElement,
    xi: GradedElement,
    rep: Optional[RepresentingAlgebra] = None,
) -> GradedElement:
    """Gauge action computed by composing the classifying map of ``xi``
    with the bracket-derivation exponential of ``x``."""
    if not mc_defect(spec, xi).is_zero():
        raise NotMaurerCartanError("gauge actions require a Maurer-Cartan element")
    if rep is None:
        rep = build_representing(spec)
    table = exp_bracket_derivation(spec, x, rep)
    terms: Dict[Generator, Fraction] = {}
    for gen in spec.generators:
        coeff = evaluate_against(rep, xi, table[rep.dual_name(gen.name)])
        if coeff != 0:
            terms[gen] = coeff
    return GradedElement(terms)


_BAR = "~"
_HAT = "^"


class Cylinder:
    """Three copies of the dual generators with the differentials D, s, theta.

    For each dual generator v: D(v) is the representing differential,
    D(bar v) = hat v, D(hat v) = 0; s(v) = bar v, s kills bars and hats;
    theta = sD + Ds.
    """

    def __init__(self, rep: RepresentingAlgebra):
        self.rep = rep
        base = rep.algebra
        gens: List[FreeGenerator] = []
        for g in base.gens.values():
            gens.append(g)
            gens.append(FreeGenerator(g.name + _BAR, g.degree - 1, g.weight))
            gens.append(FreeGenerator(g.name + _HAT, g.degree, g.weight))
        self.algebra = FreeAlgebra(base.flavor, gens, base.weight_cap)

        def lift(element: FreeAlgebraElement) -> FreeAlgebraElement:
            return self.algebra.element(element.terms)

        d_values: Dict[str, FreeAlgebraElement] = {}
        s_values: Dict[str, FreeAlgebraElement] = {}
        for name in base.gens:
            d_values[name] = lift(rep.differential.values.get(name, base.zero()))
            d_values[name + _BAR] = self.algebra.generator(name + _HAT)
            s_values[name] = self.algebra.generator(name + _BAR)
        self.D = DerivationTable(self.algebra, d_values, parity=1)
        self.s = DerivationTable(self.algebra, s_values, parity=1)
        theta_values = {
            name: apply_derivation(self.s, apply_derivation(self.D, self.algebra.generator(name)))
            + apply_derivation(self.D, apply_derivation(self.s, self.algebra.generator(name)))
            for name in self.algebra.gens
        }
        self.theta = DerivationTable(self.algebra, theta_values, parity=0)

    def exp_theta(self, element: FreeAlgebraElement) -> FreeAlgebraElement:
        bound = 2 * (len(self.algebra.gens) + 1) * (self.algebra.weight_cap + 1) + 4
        return exp_derivation(self.theta, element, bound)

    def homotopy_map(
        self, xi: GradedElement, x: GradedElement, element: FreeAlgebraElement
    ) -> Fraction:
        """The algebra map sending v to xi's coefficient, bar v to x's, hat v to 0."""
        spec = self.rep.spec
        total = Fraction(0)
        for mono, coeff in element.terms.items():
            value = coeff
            for name in mono:
                if name.endswith(_HAT):
                    value = Fraction(0)
                    break
                if name.endswith(_BAR):
                    gen = spec.gen(self.rep.base_name(name[:-1]))
                    factor = x.coefficient(gen)
                else:
                    gen = spec.gen(self.rep.base_name(name))
                    factor = xi.coefficient(gen)
                if factor == 0:
                    value = Fraction(0)
                    break
                value *= factor
            total += value
        return total


def build_cylinder(rep: RepresentingAlgebra) -> Cylinder:
    return Cylinder(rep)


def cylinder_gauge(
    spec: AlgebraSpec,
    x: GradedElement,
    xi: GradedElement,
    rep: Optional[RepresentingAlgebra] = None,
) -> GradedElement:
    """Gauge action computed through the cylinder: evaluate the homotopy map
    of (xi, x) on the theta-exponential of each original dual generator."""
    if not x.is_zero() and (not x.is_homogeneous() or x.degree() != 0):
        raise DegreeError("gauge parameters are homogeneous of degree 0")
    if not mc_defect(spec, xi).is_zero():
        raise NotMaurerCartanError("gauge actions require a Maurer-Cartan element")
    if rep is None:
        rep = build_representing(spec)
    cyl = Cylinder(rep)
    terms: Dict[Generator, Fraction] = {}
    for gen in spec.generators:
        image = cyl.exp_theta(cyl.algebra.generator(rep.dual_name(gen.name)))
        coeff = cyl.homotopy_map(xi, x, image)
        if coeff != 0:
            terms[gen] = coeff
    return GradedElement(terms)


def tensor_envelope(spec: AlgebraSpec) -> FreeAlgebra:
    """Free tensor algebra on the presentation's generators (word polynomials)."""
    gens = [FreeGenerator(g.name, g.degree, g.weight) for g in spec.generators]
    return FreeAlgebra(TENSOR, gens, spec.weight_cap)


def embed_linear(algebra: FreeAlgebra, element: GradedElement) -> FreeAlgebraElement:
    """A graded element as a linear word polynomial."""
    return algebra.element({(gen.name,): coeff for gen, coeff in element.terms.items()})


def commutative_projection(
    element: FreeAlgebraElement, target: FreeAlgebra
) -> FreeAlgebraElement:
    """Project a tensor-flavor element onto the graded-commutative quotient."""
    if element.algebra.flavor != TENSOR or target.flavor != COMMUTATIVE:
        raise InvalidInputError("projection goes from tensor flavor to commutative")
    return target.element(element.terms)
