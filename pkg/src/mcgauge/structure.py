"""Finite presentations of dglas, dgas, L-infinity and A-infinity algebras.

An :class:`AlgebraSpec` stores the n-ary operations as a sparse table.  For
the antisymmetric kinds (dgla, linf) an entry is stored once, under the
canonically sorted argument tuple; evaluating any other argument order
multiplies by the graded antisymmetry sign, so antisymmetry holds by
construction.  For the associative kinds (dga, ainf) keys are ordered tuples
and no symmetry is imposed.

The arity-1 entry is the differential.  An arity-i operation has degree
2 - i and never decreases total weight; any output above the weight cap is
identically zero, which is what makes every series in this package a finite
sum.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .errors import (
    ArityError,
    DegreeError,
    InvalidInputError,
    KindError,
)
from .graded import (
    GradedElement,
    Generator,
    antisymmetry_sign,
    canonical_key,
    homogeneous_components,
    rat,
)

KINDS = ("dgla", "dga", "linf", "ainf")
ANTISYMMETRIC_KINDS = ("dgla", "linf")
ASSOCIATIVE_KINDS = ("dga", "ainf")

TableKey = Tuple[int, Tuple[str, ...]]


class AlgebraSpec:
    """A weight-nilpotent algebra presentation; immutable after construction."""

    def __init__(
        self,
        kind: str,
        generators: Sequence[Generator],
        weight_cap: int,
        arity_cap: int,
        table: Mapping[TableKey, object],
        mc_convention: str = "paper",
        name: str = "",
    ):
        if kind not in KINDS:
            raise KindError(f"unknown algebra kind {kind!r}")
        if weight_cap < 1:
            raise InvalidInputError("weight cap must be >= 1")
        if arity_cap < 1:
            raise InvalidInputError("arity cap must be >= 1")
        if mc_convention not in ("paper", "plain"):
            raise InvalidInputError(f"unknown MC convention {mc_convention!r}")
        if kind in ("dgla", "dga") and arity_cap > 2:
            # dg(l)as only carry a differential and a binary operation.
            arity_cap = 2
        self.kind = kind
        self.name = name
        self.weight_cap = weight_cap
        self.arity_cap = arity_cap
        self.mc_convention = mc_convention
        self.generators: Tuple[Generator, ...] = tuple(
            sorted(generators, key=canonical_key)
        )
        self._by_name: Dict[str, Generator] = {}
        for gen in self.generators:
            if gen.name in self._by_name:
                raise InvalidInputError(f"duplicate generator name {gen.name!r}")
            self._by_name[gen.name] = gen
        self.table: Dict[TableKey, GradedElement] = {}
        for (arity, key), value in table.items():
            self._insert_entry(arity, tuple(key), self._coerce(value))

    def _coerce(self, value) -> GradedElement:
        if isinstance(value, GradedElement):
            return value
        return self.element(value)

    def _insert_entry(self, arity: int, key: Tuple[str, ...], value: GradedElement):
        if arity < 1 or arity > self.arity_cap:
            raise ArityError(
                f"table entry of arity {arity} exceeds arity cap {self.arity_cap}"
            )
        if kind_is_binary_only(self.kind) and arity > 2:
            raise KindError(f"kind {self.kind} only allows arities 1 and 2")
        if len(key) != arity:
            raise InvalidInputError(f"key {key!r} does not have arity {arity}")
        gens = []
        for name in key:
            if name not in self._by_name:
                raise InvalidInputError(f"table key uses unknown generator {name!r}")
            gens.append(self._by_name[name])
        if self.kind in ANTISYMMETRIC_KINDS:
            if list(key) != sorted(key, key=lambda n: canonical_key(self._by_name[n])):
                raise InvalidInputError(
                    f"bracket key {key!r} is not in canonical order"
                )
            for name, group in itertools.groupby(key):
                if len(list(group)) > 1 and self._by_name[name].degree % 2 == 0:
                    raise InvalidInputError(
                        f"bracket key {key!r} repeats the even generator "
                        f"{name!r}; antisymmetry forces the entry to vanish"
                    )
        in_degree = sum(g.degree for g in gens)
        in_weight = sum(g.weight for g in gens)
        expected_degree = in_degree + 2 - arity
        kept: Dict[Generator, Fraction] = {}
        for gen, coeff in value.terms.items():
            if gen.degree != expected_degree:
                raise DegreeError(
                    f"entry {key!r}: output term {gen.name} has degree "
                    f"{gen.degree}, expected {expected_degree}"
                )
            if gen.weight < in_weight:
                raise InvalidInputError(
                    f"entry {key!r}: output term {gen.name} has weight "
                    f"{gen.weight} below the input weight {in_weight}"
                )
            if gen.weight <= self.weight_cap:
                kept[gen] = coeff
        entry = GradedElement(kept)
        if not entry.is_zero():
            self.table[(arity, key)] = entry

    # -- element construction -------------------------------------------------

    def gen(self, name: str) -> Generator:
        try:
            return self._by_name[name]
        except KeyError:
            raise InvalidInputError(f"unknown generator {name!r}") from None

    def basis(self, name: str) -> GradedElement:
        return GradedElement.single(self.gen(name))

    def element(self, terms) -> GradedElement:
        """Build an element from a {name: coefficient} mapping."""
        if isinstance(terms, GradedElement):
            return terms
        return GradedElement({self.gen(n): rat(c) for n, c in terms.items()})

    def zero(self) -> GradedElement:
        return GradedElement.zero()

    def degree_zero_generators(self) -> List[Generator]:
        return [g for g in self.generators if g.degree == 0]


def kind_is_binary_only(kind: str) -> bool:
    return kind in ("dgla", "dga")


def eval_bracket(
    spec: AlgebraSpec, arity: int, args: Sequence[GradedElement]
) -> GradedElement:
    """Multilinear extension of the arity-``arity`` table entry.

    For dgla/linf the arguments are brought into canonical order and the
    graded antisymmetry sign of the permutation is applied; for dga/ainf the
    argument order is the table key.
    """
    if arity > spec.arity_cap:
        raise ArityError(
            f"arity {arity} exceeds arity cap {spec.arity_cap} of {spec.kind}"
        )
    if len(args) != arity:
        raise InvalidInputError(f"expected {arity} arguments, got {len(args)}")
    for a in args:
        if not a.is_homogeneous():
            raise DegreeError("bracket arguments must be homogeneous")
    if any(a.is_zero() for a in args):
        return GradedElement.zero()
    antisym = spec.kind in ANTISYMMETRIC_KINDS
    result = GradedElement.zero()
    for combo in itertools.product(*(a.sorted_terms() for a in args)):
        gens = [gen for gen, _ in combo]
        coeff = Fraction(1)
        for _, c in combo:
            coeff *= c
        if antisym:
            order = sorted(range(arity), key=lambda i: (canonical_key(gens[i]), i))
            key = tuple(gens[i].name for i in order)
            sign = antisymmetry_sign(order, [g.degree for g in gens])
            entry = spec.table.get((arity, key))
            if entry is not None:
                result = result + entry.scale(sign * coeff)
        else:
            key = tuple(g.name for g in gens)
            entry = spec.table.get((arity, key))
            if entry is not None:
                result = result + entry.scale(coeff)
    return result


def suspended_op(
    spec: AlgebraSpec, arity: int, args: Sequence[GradedElement]
) -> GradedElement:
    """The operation seen on the suspension, where it is graded symmetric.

    With arguments of degrees d_1..d_i the value is
    ``(-1)^{sum_{j<i} (i-j)(d_j - 1)}`` times the bracket value; the exponent
    uses the suspended degrees d_j - 1.
    """
    for a in args:
        if not a.is_homogeneous():
            raise DegreeError("suspended operation requires homogeneous arguments")
    if any(a.is_zero() for a in args):
        return GradedElement.zero()
    exponent = 0
    for j in range(arity - 1):
        exponent += (arity - 1 - j) * (args[j].degree() - 1)
    sign = -1 if exponent % 2 else 1
    return eval_bracket(spec, arity, args).scale(sign)


def mc_scale(spec: AlgebraSpec, arity: int) -> Fraction:
    """Coefficient of the arity-i term in the Maurer-Cartan sum.

    dgla/linf use 1/i! (symmetric convention).  dga uses the classical
    equation d(x) + x.x = 0, i.e. no factorials.  For ainf the convention is
    selectable: 'paper' keeps 1/i!, 'plain' drops it.
    """
    if spec.kind in ANTISYMMETRIC_KINDS:
        return Fraction(1, factorial(arity))
    if spec.kind == "ainf" and spec.mc_convention == "paper":
        return Fraction(1, factorial(arity))
    return Fraction(1)


def mc_defect(spec: AlgebraSpec, xi: GradedElement) -> GradedElement:
    """Left-hand side of the Maurer-Cartan equation at ``xi``; exact.

    The sum over arities is finite: the i-fold operation on an element of
    weight >= 1 has weight >= i, so arities beyond the weight cap vanish.
    """
    if not xi.is_zero() and (not xi.is_homogeneous() or xi.degree() != 1):
        raise DegreeError("Maurer-Cartan elements are homogeneous of degree 1")
    total = GradedElement.zero()
    for arity in range(1, min(spec.weight_cap, spec.arity_cap) + 1):
        term = eval_bracket(spec, arity, [xi] * arity)
        if not term.is_zero():
            total = total + term.scale(mc_scale(spec, arity))
    return total


def is_maurer_cartan(spec: AlgebraSpec, xi: GradedElement) -> bool:
    return mc_defect(spec, xi).is_zero()


class PolyPath:
    """Element of V tensor k[t,dt] with polynomial coefficients.

    ``t_part[k]`` is the coefficient of t^k and ``dt_part[k]`` the
    coefficient of t^k dt, each a :class:`GradedElement`.  The symbol t has
    degree 0, dt has degree 1, and dt.dt = 0.
    """

    __slots__ = ("t_part", "dt_part")

    def __init__(
        self,
        t_part: Mapping[int, GradedElement] | None = None,
        dt_part: Mapping[int, GradedElement] | None = None,
    ):
        self.t_part: Dict[int, GradedElement] = {
            k: v for k, v in (t_part or {}).items() if not v.is_zero()
        }
        self.dt_part: Dict[int, GradedElement] = {
            k: v for k, v in (dt_part or {}).items() if not v.is_zero()
        }
        if any(k < 0 for k in self.t_part) or any(k < 0 for k in self.dt_part):
            raise InvalidInputError("polynomial powers must be non-negative")

    def is_zero(self) -> bool:
        return not self.t_part and not self.dt_part

    def __eq__(self, other):
        if not isinstance(other, PolyPath):
            return NotImplemented
        return self.t_part == other.t_part and self.dt_part == other.dt_part

    def has_degree(self, degree: int) -> bool:
        """True if every t-coefficient has ``degree`` and every dt-coefficient
        has ``degree - 1`` (so the total element is homogeneous)."""
        for v in self.t_part.values():
            if not v.is_homogeneous() or v.degree() != degree:
                return False
        for w in self.dt_part.values():
            if not w.is_homogeneous() or w.degree() != degree - 1:
                return False
        return True

    def at(self, t_value) -> GradedElement:
        """Evaluate at a rational t (dt goes to 0)."""
        t0 = rat(t_value)
        result = GradedElement.zero()
        for k, v in self.t_part.items():
            result = result + v.scale(t0 ** k)
        return result

    def __repr__(self):
        bits = [f"t^{k}: {v!r}" for k, v in sorted(self.t_part.items())]
        bits += [f"t^{k} dt: {v!r}" for k, v in sorted(self.dt_part.items())]
        return "PolyPath(" + "; ".join(bits) + ")" if bits else "PolyPath(0)"


def mc_defect_poly(spec: AlgebraSpec, path: PolyPath) -> PolyPath:
    """Maurer-Cartan defect of a degree-1 path in V tensor k[t,dt].

    The differential applies the operations of ``spec`` to coefficients and
    differentiates the polynomial part, d(v t^k) = dv t^k + k v t^{k-1} dt;
    operations extend k[t,dt]-multilinearly, a dt in slot p collecting the
    Koszul sign of moving past the later arguments.
    """
    if not path.has_degree(1):
        raise DegreeError("Maurer-Cartan paths are homogeneous of degree 1")
    t_out: Dict[int, GradedElement] = {}
    dt_out: Dict[int, GradedElement] = {}

    def add(bucket, power, elem):
        if not elem.is_zero():
            bucket[power] = bucket.get(power, GradedElement.zero()) + elem

    # d/dt of the t-part feeds the dt-part; no extra sign in this convention.
    for k, v in path.t_part.items():
        if k >= 1:
            add(dt_out, k - 1, v.scale(k))

    t_terms = sorted(path.t_part.items())
    dt_terms = sorted(path.dt_part.items())
    for arity in range(1, min(spec.weight_cap, spec.arity_cap) + 1):
        scale = mc_scale(spec, arity)
        # terms with no dt factor
        for combo in itertools.product(t_terms, repeat=arity):
            power = sum(k for k, _ in combo)
            value = eval_bracket(spec, arity, [v for _, v in combo])
            add(t_out, power, value.scale(scale))
        # terms with exactly one dt factor, in each slot
        for p in range(arity):
            others = itertools.product(t_terms, repeat=arity - 1)
            for rest in others:
                for k_dt, w in dt_terms:
                    args = [v for _, v in rest[:p]] + [w] + [v for _, v in rest[p:]]
                    tail_degree = sum(v.degree() for _, v in rest[p:] if not v.is_zero())
                    sign = -1 if tail_degree % 2 else 1
                    power = sum(k for k, _ in rest) + k_dt
                    value = eval_bracket(spec, arity, args)
                    add(dt_out, power, value.scale(sign * scale))
    t_clean = {k: v for k, v in t_out.items() if not v.is_zero()}
    dt_clean = {k: v for k, v in dt_out.items() if not v.is_zero()}
    return PolyPath(t_clean, dt_clean)


class StructureReport:
    """Result of validating the structure identities of a presentation."""

    def __init__(self, failures):
        self.failures = list(failures)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __repr__(self):
        if self.ok:
            return "StructureReport(ok)"
        names = ", ".join(name for name, _ in self.failures)
        return f"StructureReport(failures: {names})"


def validate_structure(spec: AlgebraSpec) -> StructureReport:
    """Check the full structure identities by squaring the representing
    differential on every generator of the representing algebra.

    d^2 = 0, the Leibniz rule, and the (higher) Jacobi identities are all
    equivalent to this single condition, exactly, up to the weight cap.
    Failures are reported per generator with the nonzero residue.
    """
    from .freealg import apply_derivation, build_representing

    rep = build_representing(spec)
    failures = []
    for gen in spec.generators:
        dual = rep.dual(gen.name)
        once = rep.differential.values.get(dual.name)
        if once is None:
            continue
        twice = apply_derivation(rep.differential, once)
        if not twice.is_zero():
            failures.append((gen.name, twice))
    return StructureReport(failures)


def commutator_dgla(spec: AlgebraSpec) -> AlgebraSpec:
    """The dgla underlying an associative presentation, via the graded
    commutator [a, b] = a.b - (-1)^{|a||b|} b.a."""
    if spec.kind != "dga":
        raise KindError("commutator bracket requires a dga presentation")
    table: Dict[TableKey, GradedElement] = {}
    for (arity, key), value in spec.table.items():
        if arity == 1:
            table[(1, key)] = value
    gens = list(spec.generators)
    for i, g in enumerate(gens):
        for h in gens[i:]:
            if g.weight + h.weight > spec.weight_cap:
                continue
            if g.name == h.name and g.degree % 2 == 0:
                continue
            a = GradedElement.single(g)
            b = GradedElement.single(h)
            sign = -1 if (g.degree * h.degree) % 2 else 1
            bracket = eval_bracket(spec, 2, [a, b]) - eval_bracket(
                spec, 2, [b, a]
            ).scale(sign)
            if not bracket.is_zero():
                table[(2, (g.name, h.name))] = bracket
    return AlgebraSpec(
        kind="dgla",
        generators=spec.generators,
        weight_cap=spec.weight_cap,
        arity_cap=2,
        table=table,
        name=spec.name + "_commutator" if spec.name else "",
    )
