"""Decorated rooted trees, planar trees, and their bracket words.

A rooted tree here is an isomorphism class of unordered rooted trees where
every vertex carries some number of xi-leaves plus exactly one x-leaf, so
the arity of a vertex is (number of children) + (xi-leaves) + 1.  Trees are
kept in a canonical form (children sorted by their encoding), which makes
"sum over all trees" duplicate-free by construction.

Planar trees keep an ordered slot list per vertex; each slot is a child or
a leaf.  Labellings assign x to exactly n leaf slots (n = vertex count)
subject to the closure rule that a vertex with an x-leaf has a parent with
an x-leaf.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import InvalidInputError, KindError
from .graded import GradedElement
from .structure import ANTISYMMETRIC_KINDS, ASSOCIATIVE_KINDS, AlgebraSpec, suspended_op


@dataclass(frozen=True)
class RootedTree:
    """xi_leaves is the count of xi-leaves at the root; children are canonical."""

    xi_leaves: int
    children: Tuple["RootedTree", ...]

    def __post_init__(self):
        if self.xi_leaves < 0:
            raise InvalidInputError("xi-leaf count must be non-negative")
        if list(self.children) != sorted(self.children, key=lambda t: t.encoding()):
            raise InvalidInputError("children are not in canonical order")

    @staticmethod
    def make(xi_leaves: int, children: Sequence["RootedTree"] = ()) -> "RootedTree":
        ordered = tuple(sorted(children, key=lambda t: t.encoding()))
        return RootedTree(xi_leaves, ordered)

    def encoding(self) -> tuple:
        return (self.xi_leaves, tuple(c.encoding() for c in self.children))

    @property
    def size(self) -> int:
        return 1 + sum(c.size for c in self.children)

    @property
    def arity(self) -> int:
        return 1 + self.xi_leaves + len(self.children)

    def vertex_arities(self) -> List[int]:
        out = [self.arity]
        for c in self.children:
            out.extend(c.vertex_arities())
        return out

    def xi_counts(self) -> List[int]:
        out = [self.xi_leaves]
        for c in self.children:
            out.extend(c.xi_counts())
        return out

    def subtree_sizes(self) -> List[int]:
        sizes = [self.size]
        for c in self.children:
            sizes.extend(c.subtree_sizes())
        return sizes

    def shape(self) -> tuple:
        """Tree shape with xi-decorations stripped (what orderings see)."""
        return tuple(sorted(c.shape() for c in self.children))

    def render(self) -> str:
        inner = [c.render() for c in self.children]
        inner += ["xi"] * self.xi_leaves
        inner.append("x")
        return "[" + ",".join(inner) + "]"


def enumerate_trees(n_max: int, arity_cap: int) -> Dict[int, List[RootedTree]]:
    """All decorated rooted trees with at most n_max vertices, grouped by size."""
    if n_max < 1:
        raise InvalidInputError("need at least one vertex")

    by_size: Dict[int, List[RootedTree]] = {}
    catalog: List[RootedTree] = []
    starts: List[int] = []

    for n in range(1, n_max + 1):
        starts.append(len(catalog))
        found: List[RootedTree] = []
        if n == 1:
            for j in range(arity_cap):
                found.append(RootedTree.make(j))
        else:
            max_children = min(n - 1, arity_cap - 1)
            for c in range(1, max_children + 1):
                for combo in _child_multisets(catalog, 0, n - 1, c):
                    for j in range(arity_cap - 1 - c + 1):
                        found.append(RootedTree.make(j, combo))
        found.sort(key=lambda t: t.encoding())
        by_size[n] = found
        catalog.extend(found)
    return by_size


def _child_multisets(
    catalog: List[RootedTree], min_index: int, total: int, count: int
) -> Iterator[Tuple[RootedTree, ...]]:
    """Non-decreasing index selections of ``count`` trees of total size ``total``."""
    if count == 0:
        if total == 0:
            yield ()
        return
    for idx in range(min_index, len(catalog)):
        tree = catalog[idx]
        if tree.size > total - (count - 1):
            continue
        for rest in _child_multisets(catalog, idx, total - tree.size, count - 1):
            yield (tree,) + rest


def monotone_count(tree: RootedTree) -> int:
    """Number of vertex orderings placing every vertex after its parent.

    Computed by the hook-length formula n! / product of subtree sizes.
    """
    n = tree.size
    denom = 1
    for s in tree.subtree_sizes():
        denom *= s
    return factorial(n) // denom


def linear_extensions_brute(tree: RootedTree) -> int:
    """Independent oracle: count monotone orderings by direct backtracking."""
    parents: Dict[int, Optional[int]] = {}
    counter = itertools.count()

    def index(t: RootedTree, parent: Optional[int]) -> None:
        me = next(counter)
        parents[me] = parent
        for c in t.children:
            index(c, me)

    index(tree, None)
    n = len(parents)
    placed = [False] * n
    count = 0

    def extend(level: int) -> None:
        nonlocal count
        if level == n:
            count += 1
            return
        for v in range(n):
            if not placed[v]:
                p = parents[v]
                if p is None or placed[p]:
                    placed[v] = True
                    extend(level + 1)
                    placed[v] = False

    extend(0)
    return count


def tree_coefficient(tree: RootedTree) -> Fraction:
    """(-1)^n r / (n! j_1! ... j_n!) for the antisymmetric tree sum."""
    n = tree.size
    denom = factorial(n)
    for j in tree.xi_counts():
        denom *= factorial(j)
    return Fraction((-1) ** n * monotone_count(tree), denom)


def tree_word_L(
    spec: AlgebraSpec, tree: RootedTree, x: GradedElement, xi: GradedElement
) -> GradedElement:
    """Bracket word of a rooted tree: children first, xi-leaves, then the
    x-leaf in the last slot, each vertex applying the suspended operation."""
    if spec.kind not in ANTISYMMETRIC_KINDS:
        raise KindError("rooted-tree words require a dgla or linf presentation")
    args = [tree_word_L(spec, child, x, xi) for child in tree.children]
    args += [xi] * tree.xi_leaves
    args.append(x)
    return suspended_op(spec, tree.arity, args)


@dataclass(frozen=True)
class PlanarTree:
    """Ordered slots; None marks a leaf slot."""

    slots: Tuple[Optional["PlanarTree"], ...]

    def __post_init__(self):
        if not self.slots:
            raise InvalidInputError("planar vertices have at least one slot")

    @property
    def size(self) -> int:
        return 1 + sum(s.size for s in self.slots if s is not None)

    @property
    def arity(self) -> int:
        return len(self.slots)

    def leaf_positions(self) -> List[int]:
        return [i for i, s in enumerate(self.slots) if s is None]

    def render(self) -> str:
        return "(" + ",".join("." if s is None else s.render() for s in self.slots) + ")"


@dataclass(frozen=True)
class Labelling:
    """Per-vertex x-slot choices mirroring the tree structure."""

    x_slots: Tuple[int, ...]
    children: Tuple[Optional["Labelling"], ...]

    def x_count(self) -> int:
        total = len(self.x_slots)
        for c in self.children:
            if c is not None:
                total += c.x_count()
        return total


def enumerate_planar(n_max: int, arity_cap: int) -> Dict[int, List[PlanarTree]]:
    """All planar trees with at most n_max vertices, grouped by size."""
    if n_max < 1:
        raise InvalidInputError("need at least one vertex")

    @lru_cache(maxsize=None)
    def of_size(n: int) -> Tuple[PlanarTree, ...]:
        found: List[PlanarTree] = []
        for arity in range(1, arity_cap + 1):
            for slots in _slot_fillings(n - 1, arity):
                found.append(PlanarTree(slots))
        return tuple(found)

    def _slot_fillings(budget: int, slots_left: int) -> Iterator[tuple]:
        if slots_left == 0:
            if budget == 0:
                yield ()
            return
        # leaf slot
        for rest in _slot_fillings(budget, slots_left - 1):
            yield (None,) + rest
        # child slot of each feasible size
        for size in range(1, budget + 1):
            for child in of_size(size):
                for rest in _slot_fillings(budget - size, slots_left - 1):
                    yield (child,) + rest

    return {n: list(of_size(n)) for n in range(1, n_max + 1)}


def labellings(tree: PlanarTree, n: int) -> List[Labelling]:
    """Admissible x-labellings: exactly ``n`` x-leaves in total, and any
    vertex carrying an x-leaf has a parent carrying one."""

    def assign(t: PlanarTree, allowed: bool, budget: int) -> List[Tuple[Labelling, int]]:
        leaf_pos = t.leaf_positions()
        results = []
        max_here = len(leaf_pos) if allowed else 0
        for k in range(0, min(max_here, budget) + 1):
            for chosen in itertools.combinations(leaf_pos, k):
                child_allowed = k > 0
                options: List[List[Tuple[Optional[Labelling], int]]] = []
                for slot in t.slots:
                    if slot is None:
                        options.append([(None, 0)])
                    else:
                        options.append(
                            [(lab, used) for lab, used in assign(slot, child_allowed, budget - k)]
                        )
                for picks in itertools.product(*options):
                    used = k + sum(u for _, u in picks)
                    if used <= budget:
                        results.append(
                            (Labelling(chosen, tuple(lab for lab, _ in picks)), used)
                        )
        return results

    out = []
    for lab, used in assign(tree, True, n):
        if used == n:
            out.append(lab)
    return out


def tree_word_A(
    spec: AlgebraSpec,
    tree: PlanarTree,
    labelling: Labelling,
    x: GradedElement,
    xi: GradedElement,
) -> GradedElement:
    """Word of a labelled planar tree, respecting slot order."""
    if spec.kind not in ASSOCIATIVE_KINDS:
        raise KindError("planar-tree words require a dga or ainf presentation")
    args: List[GradedElement] = []
    for i, slot in enumerate(tree.slots):
        if slot is None:
            args.append(x if i in labelling.x_slots else xi)
        else:
            args.append(tree_word_A(spec, slot, labelling.children[i], x, xi))
    return suspended_op(spec, tree.arity, args)
