"""Revealed-preference relations and consistency tests.

Weak/strict direct revealed-preference matrices at configurable
per-observation efficiency levels, Warshall transitive closure, the
GARP / SARP / e-GARP family of tests, weak-vs-strong cycle
classification, the expenditure-ratio breakpoint grid, and reachability
queries that mix observed and virtual (unobserved) bundles.

Conventions: observation ``t`` weakly reveals preference over a bundle
``y`` at efficiency ``e_t`` when ``e_t * p^t.q^t >= p^t.y``, strictly
when the inequality is strict. Efficiency 1 recovers the classical
relations. All comparisons are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .dataset import Bundle, PurchaseDataset
from .rational import Rational, as_fraction

BoolMatrix = tuple[tuple[bool, ...], ...]


@dataclass(frozen=True)
class EfficiencyVector:
    """Per-observation efficiency levels, each in [0, 1]."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(as_fraction(v) for v in self.values))
        if any(not (0 <= v <= 1) for v in self.values):
            raise ValueError("efficiency levels must lie in [0, 1]")

    @classmethod
    def constant(cls, e: Rational, T: int) -> "EfficiencyVector":
        return cls((as_fraction(e),) * T)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, index: int) -> Fraction:
        return self.values[index]


def _coerce_efficiency(
    dataset: PurchaseDataset, e: Rational | EfficiencyVector
) -> EfficiencyVector:
    if isinstance(e, EfficiencyVector):
        if len(e) != dataset.T:
            raise ValueError("efficiency vector length does not match dataset")
        return e
    return EfficiencyVector.constant(as_fraction(e), dataset.T)


@dataclass(frozen=True)
class RelationMatrix:
    """Direct revealed-preference booleans between observed bundles.

    ``weak[t][s]`` holds when observation t's deflated expenditure covers
    bundle s at t's prices; ``strict`` is the same with strict
    inequality, so ``strict`` is entrywise contained in ``weak``.
    """

    weak: BoolMatrix
    strict: BoolMatrix
    efficiency: EfficiencyVector

    def __post_init__(self):
        for wrow, srow in zip(self.weak, self.strict):
            if any(s and not w for w, s in zip(wrow, srow)):
                raise ValueError("strict relation must be contained in weak relation")


def direct_relations(
    dataset: PurchaseDataset, e: Rational | EfficiencyVector
) -> RelationMatrix:
    """Build the weak and strict relations at efficiency ``e``.

    ``e`` may be a scalar (uniform deflation) or a per-observation
    vector; the scalar case is the constant vector.
    """
    evec = _coerce_efficiency(dataset, e)
    cross = dataset.cross_matrix
    weak = []
    strict = []
    for t in range(dataset.T):
        budget = evec[t] * cross[t][t]
        weak.append(tuple(budget >= cross[t][s] for s in range(dataset.T)))
        strict.append(tuple(budget > cross[t][s] for s in range(dataset.T)))
    return RelationMatrix(tuple(weak), tuple(strict), evec)


def transitive_closure(matrix: Sequence[Sequence[bool]]) -> BoolMatrix:
    """Warshall closure: reachability via paths of length >= 1."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    closure = [list(row) for row in matrix]
    for k in range(n):
        row_k = closure[k]
        for i in range(n):
            if closure[i][k]:
                row_i = closure[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    return tuple(tuple(row) for row in closure)


@dataclass(frozen=True)
class CycleWitness:
    """A revealed-preference cycle: node sequence plus per-link strictness.

    Link k runs from ``nodes[k]`` to ``nodes[(k+1) % len(nodes)]``. Every
    link must hold in the weak relation and at least one flag must be
    strict for the witness to certify a GARP violation.
    """

    nodes: tuple[int, ...]
    strict_flags: tuple[bool, ...]

    def __post_init__(self):
        if len(self.nodes) != len(self.strict_flags):
            raise ValueError("one strictness flag per link is required")
        if len(self.nodes) < 1:
            raise ValueError("witness needs at least one node")

    @classmethod
    def from_nodes(cls, dataset: PurchaseDataset, nodes: Sequence[int]) -> "CycleWitness":
        """Derive strictness flags from the dataset's e=1 relations."""
        rel = direct_relations(dataset, 1)
        seq = tuple(nodes)
        flags = []
        for k, t in enumerate(seq):
            s = seq[(k + 1) % len(seq)]
            if not rel.weak[t][s]:
                raise ValueError(f"link {t}->{s} does not hold in the weak relation")
            flags.append(rel.strict[t][s])
        return cls(seq, tuple(flags))

    def links(self) -> list[tuple[int, int, bool]]:
        return [
            (t, self.nodes[(k + 1) % len(self.nodes)], self.strict_flags[k])
            for k, t in enumerate(self.nodes)
        ]

    def verify(self, relations: RelationMatrix) -> None:
        """Re-check the witness against a relation matrix; raises on failure."""
        for t, s, flag in self.links():
            if not relations.weak[t][s]:
                raise ValueError(f"witness link {t}->{s} not in weak relation")
            if flag and not relations.strict[t][s]:
                raise ValueError(f"witness link {t}->{s} flagged strict but is not")
        if not any(self.strict_flags):
            raise ValueError("witness has no strict link")


@dataclass(frozen=True)
class GarpResult:
    satisfied: bool
    witness: CycleWitness | None


def _violation_pair(weak: BoolMatrix, strict: BoolMatrix) -> tuple[int, int] | None:
    """Find (t, s) with t strictly over s and a weak path back from s to t."""
    closure = transitive_closure(weak)
    n = len(weak)
    for t in range(n):
        for s in range(n):
            if strict[t][s] and closure[s][t]:
                return t, s
    return None


def _weak_path(weak: BoolMatrix, start: int, goal: int) -> list[int]:
    """Shortest path from start to a distinct goal in the weak graph."""
    n = len(weak)
    parent: dict[int, int | None] = {start: None}
    frontier = [start]
    while frontier:
        nxt = []
        for u in frontier:
            for v in range(n):
                if weak[u][v] and v not in parent:
                    parent[v] = u
                    if v == goal:
                        path = [v]
                        while parent[path[-1]] is not None:
                            path.append(parent[path[-1]])
                        path.reverse()
                        return path
                    nxt.append(v)
        frontier = nxt
    raise RuntimeError("no path found; caller guaranteed reachability")


def check_garp(dataset: PurchaseDataset) -> GarpResult:
    """Test the generalized axiom of revealed preference.

    Satisfied when no chain of weak revealed preferences closes with a
    strict link back to its start. On failure, one violating cycle is
    returned as a witness.
    """
    rel = direct_relations(dataset, 1)
    pair = _violation_pair(rel.weak, rel.strict)
    if pair is None:
        return GarpResult(True, None)
    t, s = pair
    path = _weak_path(rel.weak, s, t)
    nodes = tuple([t] + path[:-1])
    flags = tuple(
        rel.strict[nodes[k]][nodes[(k + 1) % len(nodes)]] for k in range(len(nodes))
    )
    witness = CycleWitness(nodes, flags)
    witness.verify(rel)
    return GarpResult(False, witness)


def check_sarp(dataset: PurchaseDataset) -> bool:
    """Strong axiom: every revealed-preference cycle has identical bundles."""
    rel = direct_relations(dataset, 1)
    closure = transitive_closure(rel.weak)
    bundles = dataset.bundles
    for t in range(dataset.T):
        for s in range(t + 1, dataset.T):
            if closure[t][s] and closure[s][t] and bundles[t] != bundles[s]:
                return False
    return True


def check_e_garp(dataset: PurchaseDataset, e: Rational | EfficiencyVector) -> bool:
    """GARP after deflating each observation's expenditure by ``e``."""
    rel = direct_relations(dataset, e)
    return _violation_pair(rel.weak, rel.strict) is None


class CycleClass(Enum):
    NONE = "none"
    WEAK_ONLY = "weak_only"
    HAS_STRONG = "has_strong"


def is_e_acyclic(dataset: PurchaseDataset, e: Rational | EfficiencyVector) -> bool:
    """True when the strict relation at ``e`` has no directed cycle."""
    evec = _coerce_efficiency(dataset, e)
    cross = dataset.cross_matrix
    T = dataset.T
    adjacency = []
    for t in range(T):
        budget = evec[t] * cross[t][t]
        adjacency.append([s for s in range(T) if budget > cross[t][s]])
    # Iterative three-color DFS.
    color = [0] * T  # 0 unseen, 1 on stack, 2 done
    for root in range(T):
        if color[root]:
            continue
        stack: list[tuple[int, int]] = [(root, 0)]
        color[root] = 1
        while stack:
            node, idx = stack[-1]
            if idx < len(adjacency[node]):
                stack[-1] = (node, idx + 1)
                child = adjacency[node][idx]
                if color[child] == 1:
                    return False
                if color[child] == 0:
                    color[child] = 1
                    stack.append((child, 0))
            else:
                color[node] = 2
                stack.pop()
    return True


def classify_cycles(dataset: PurchaseDataset) -> CycleClass:
    """Classify the dataset's revealed-preference cycles.

    ``NONE`` when GARP holds; ``HAS_STRONG`` when the strict relation
    itself contains a directed cycle (a cycle every link of which is
    strict); ``WEAK_ONLY`` otherwise.
    """
    if check_garp(dataset).satisfied:
        return CycleClass.NONE
    if is_e_acyclic(dataset, 1):
        return CycleClass.WEAK_ONLY
    return CycleClass.HAS_STRONG


@dataclass(frozen=True)
class BreakpointGrid:
    """Sorted distinct expenditure ratios in [0, 1]; at most T^2 of them.

    These are the only efficiency levels at which any revealed-preference
    relation can flip, so exact scans over this grid replace binary
    search over the whole interval.
    """

    values: tuple[Fraction, ...]

    def __post_init__(self):
        if list(self.values) != sorted(set(self.values)):
            raise ValueError("grid must be sorted and duplicate-free")
        if any(not (0 <= v <= 1) for v in self.values):
            raise ValueError("grid values must lie in [0, 1]")


def breakpoints(dataset: PurchaseDataset) -> BreakpointGrid:
    """All ratios ``p^t.q^s / p^t.q^t`` that land in [0, 1], sorted."""
    cross = dataset.cross_matrix
    values = {
        cross[t][s] / cross[t][t]
        for t in range(dataset.T)
        for s in range(dataset.T)
        if cross[t][s] <= cross[t][t]
    }
    return BreakpointGrid(tuple(sorted(values)))


def reach_with_virtual(
    dataset: PurchaseDataset,
    e: Rational | EfficiencyVector,
    *,
    strict: bool,
    source: Bundle,
    target: Bundle,
) -> bool:
    """Reachability from ``source`` to ``target`` through dominance and
    budget edges.

    Nodes are the observed bundles plus the two query bundles. Every
    node points to every componentwise-dominated node; an observation
    node additionally points to any node its deflated budget covers
    (weak mode) or strictly covers (strict mode). Used for robust
    preference queries, where the query bundles need not be observed.
    """
    if len(source) != dataset.L or len(target) != dataset.L:
        raise ValueError("query bundles must match the dataset's good count")
    evec = _coerce_efficiency(dataset, e)
    cross = dataset.cross_matrix
    T = dataset.T
    bundles = list(dataset.bundles) + [source, target]
    src, dst = T, T + 1

    def edge(x: int, y: int) -> bool:
        if bundles[x].dominates(bundles[y]):
            return True
        if x < T:
            budget = evec[x] * cross[x][x]
            cost = dataset.observations[x].price.dot(bundles[y])
            return budget > cost if strict else budget >= cost
        return False

    seen = {src}
    frontier = [src]
    while frontier:
        nxt = []
        for u in frontier:
            for v in range(T + 2):
                if v not in seen and edge(u, v):
                    if v == dst:
                        return True
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return False
