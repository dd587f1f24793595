"""Homomorphism densities of graphs in step kernels.

For a step kernel the defining integral collapses to a finite sum over
assignments of graph vertices to kernel parts.  That sum is evaluated by
variable elimination: each vertex is a variable over the parts, each edge
contributes its value matrix as a factor and each vertex its measure
vector, and vertices are summed out along a greedy low-width order.  A
direct sum over all part assignments (`density_bruteforce`) serves as the
independent correctness oracle.

Disconnected graphs are always evaluated component by component and the
component densities multiplied; this keeps the elimination width that of
the largest component and mirrors the product rule for disjoint unions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product
from typing import Mapping, Sequence

import numpy as np

from .graphs import Graph, components
from .kernels import PartitionMismatchError, StepKernel, absolute

_BATCH = -1  # pseudo-variable: a shared leading axis carried through a contraction
_LETTERS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"

BRUTE_FORCE_LIMIT = 10**8


@dataclass(frozen=True)
class EliminationPlan:
    """A vertex elimination order and the largest neighborhood met along it."""

    order: tuple[int, ...]
    width: int


def elimination_plan(g: Graph) -> EliminationPlan:
    """Greedy min-fill order (ties: degree, then index) with its induced width.

    The width is the maximum number of neighbors a vertex has at the moment
    it is eliminated: 1 on trees, 2 on cycles, v-1 on complete graphs.
    Evaluation cost is O(parts^(width+1)) per eliminated vertex.
    """
    adj: dict[int, set[int]] = {v: set() for v in range(g.vertex_count)}
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    order: list[int] = []
    width = 0
    remaining = sorted(adj)
    while remaining:
        best, best_key = None, None
        for v in remaining:
            nbrs = adj[v]
            fill = sum(1 for a, b in combinations(sorted(nbrs), 2) if b not in adj[a])
            key = (fill, len(nbrs), v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        nbrs = sorted(adj[best])
        width = max(width, len(nbrs))
        for a, b in combinations(nbrs, 2):
            adj[a].add(b)
            adj[b].add(a)
        for a in nbrs:
            adj[a].discard(best)
        del adj[best]
        remaining.remove(best)
        order.append(best)
    return EliminationPlan(tuple(order), width)


# ---------------------------------------------------------------------------
# Factor contraction
# ---------------------------------------------------------------------------

def _einsum_pair(vars_a, arr_a, vars_b, arr_b, drop):
    letters: dict[int, str] = {}
    for v in (*vars_a, *vars_b):
        if v not in letters:
            letters[v] = _LETTERS[len(letters)]
    out_vars = tuple(v for v in letters if v != drop)
    expr = (
        "".join(letters[v] for v in vars_a)
        + ","
        + "".join(letters[v] for v in vars_b)
        + "->"
        + "".join(letters[v] for v in out_vars)
    )
    return out_vars, np.einsum(expr, arr_a, arr_b)


def _eliminate(factors, order):
    """Sum the given vertex variables out of a factor list.

    factors: list of (vars tuple, ndarray); arrays are indexed by their vars
    in order.  Returns the product of whatever is left: a float, or a batch
    vector when the _BATCH pseudo-variable is present.
    """
    factors = list(factors)
    for v in order:
        group = [f for f in factors if v in f[0]]
        rest = [f for f in factors if v not in f[0]]
        group.sort(key=lambda f: (len(f[0]), f[0]))
        gv, ga = group[0]
        if len(group) == 1:
            axis = gv.index(v)
            gv = tuple(x for x in gv if x != v)
            ga = ga.sum(axis=axis)
        else:
            for i, (fv, fa) in enumerate(group[1:]):
                last = i == len(group) - 2
                gv, ga = _einsum_pair(gv, ga, fv, fa, drop=v if last else None)
        factors = rest + [(gv, ga)]
    result = None
    for fv, fa in factors:
        piece = fa if fv else float(fa)
        result = piece if result is None else result * piece
    return 1.0 if result is None else result


def _component_value(comp: Graph, edge_arrays, measures, order=None):
    factors = [((v,), measures) for v in range(comp.vertex_count)]
    for edge in comp.sorted_edges:
        arr = edge_arrays[edge]
        if arr.ndim == 2:
            factors.append((edge, arr))
        else:
            factors.append(((_BATCH, *edge), arr))
    elim = tuple(order) if order is not None else elimination_plan(comp).order
    return _eliminate(factors, elim)


def _check_order(g: Graph, order) -> tuple[int, ...]:
    order = tuple(order)
    if sorted(order) != list(range(g.vertex_count)):
        raise ValueError("order must be a permutation of the graph's vertices")
    return order


# ---------------------------------------------------------------------------
# Densities
# ---------------------------------------------------------------------------

def density(h: Graph, w: StepKernel, *, order: Sequence[int] | None = None) -> float:
    """Homomorphism density t(h, w); 1.0 for edgeless h.

    Any elimination `order` (a permutation of the vertices) gives the same
    value up to floating rounding; by default each connected component uses
    its own greedy plan and the component values are multiplied.
    """
    if order is not None:
        arrays = {e: w.values for e in h.sorted_edges}
        return float(_eliminate(
            [((v,), w.measures) for v in range(h.vertex_count)]
            + [(e, arrays[e]) for e in h.sorted_edges],
            _check_order(h, order),
        ))
    total = 1.0
    for comp in components(h):
        if comp.graph.edge_count == 0:
            continue
        arrays = {e: w.values for e in comp.graph.sorted_edges}
        total *= float(_component_value(comp.graph, arrays, w.measures))
    return total


def density_many(h: Graph, kernels: Sequence[StepKernel]) -> np.ndarray:
    """t(h, w_i) for several kernels on one shared partition, in one pass."""
    if not kernels:
        return np.empty(0)
    base = kernels[0]
    for k in kernels[1:]:
        if not base.same_partition(k):
            raise PartitionMismatchError("density_many: kernels must share one partition")
    stack = np.stack([k.values for k in kernels])
    total = np.ones(len(kernels))
    for comp in components(h):
        if comp.graph.edge_count == 0:
            continue
        arrays = {e: stack for e in comp.graph.sorted_edges}
        total = total * _component_value(comp.graph, arrays, base.measures)
    return total


@dataclass(frozen=True, eq=False)
class Decoration:
    """One step kernel per edge of a host graph, all on a shared partition."""

    host: Graph
    kernels: Mapping[tuple[int, int], StepKernel]

    def __post_init__(self) -> None:
        normalized = {}
        for (u, v), w in self.kernels.items():
            normalized[(u, v) if u < v else (v, u)] = w
        if set(normalized) != self.host.edges:
            raise ValueError("decoration must assign exactly one kernel to every host edge")
        base = None
        for e in sorted(normalized):
            w = normalized[e]
            if base is None:
                base = w
            elif not base.same_partition(w):
                raise PartitionMismatchError("decoration kernels must share one partition")
        object.__setattr__(self, "kernels", normalized)

    @property
    def part_measures(self) -> np.ndarray:
        return self.kernels[self.host.sorted_edges[0]].measures

    @staticmethod
    def uniform(host: Graph, w: StepKernel) -> "Decoration":
        return Decoration(host, {e: w for e in host.sorted_edges})


def decorated_density(d: Decoration, *, order: Sequence[int] | None = None) -> float:
    """Edge-decorated density t(h, (W_e)); equals density(h, W) when all W_e = W."""
    h = d.host
    if h.edge_count == 0:
        return 1.0
    measures = d.part_measures
    if order is not None:
        factors = [((v,), measures) for v in range(h.vertex_count)]
        factors += [(e, d.kernels[e].values) for e in h.sorted_edges]
        return float(_eliminate(factors, _check_order(h, order)))
    total = 1.0
    for comp in components(h):
        if comp.graph.edge_count == 0:
            continue
        arrays = {}
        for a, b in comp.graph.sorted_edges:
            u, v = comp.vertices[a], comp.vertices[b]
            arrays[(a, b)] = d.kernels[(u, v) if u < v else (v, u)].values
        total *= float(_component_value(comp.graph, arrays, measures))
    return total


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------

def _brute_guard(parts: int, vertices: int) -> None:
    if parts**vertices > BRUTE_FORCE_LIMIT:
        raise ValueError(
            f"brute force over {parts}^{vertices} part assignments exceeds the "
            f"{BRUTE_FORCE_LIMIT} limit"
        )


def density_bruteforce(h: Graph, w: StepKernel) -> float:
    """Direct sum of measure-weighted products over all part assignments."""
    k = w.part_count
    _brute_guard(k, h.vertex_count)
    meas = w.measures.tolist()
    vals = w.values.tolist()
    edges = h.sorted_edges

    def terms():
        for assign in product(range(k), repeat=h.vertex_count):
            t = 1.0
            for p in assign:
                t *= meas[p]
            for u, v in edges:
                t *= vals[assign[u]][assign[v]]
            yield t

    if h.vertex_count == 0:
        return 1.0
    return math.fsum(terms())


def decorated_density_bruteforce(d: Decoration) -> float:
    """Brute-force oracle for the edge-decorated density."""
    h = d.host
    if h.edge_count == 0:
        return 1.0
    meas = d.part_measures.tolist()
    k = len(meas)
    _brute_guard(k, h.vertex_count)
    edge_vals = [(u, v, d.kernels[(u, v)].values.tolist()) for u, v in h.sorted_edges]

    def terms():
        for assign in product(range(k), repeat=h.vertex_count):
            t = 1.0
            for p in assign:
                t *= meas[p]
            for u, v, vals in edge_vals:
                t *= vals[assign[u]][assign[v]]
            yield t

    return math.fsum(terms())


# ---------------------------------------------------------------------------
# Graph functionals
# ---------------------------------------------------------------------------

def norm_h(h: Graph, w: StepKernel) -> float:
    """|t(h, w)|^(1/e(h)); the signed-density functional."""
    if h.edge_count == 0:
        raise ValueError("norm needs a graph with at least one edge")
    return abs(density(h, w)) ** (1.0 / h.edge_count)


def norm_rh(h: Graph, w: StepKernel) -> float:
    """t(h, |w|)^(1/e(h)); the absolute-density functional."""
    if h.edge_count == 0:
        raise ValueError("norm needs a graph with at least one edge")
    return density(h, absolute(w)) ** (1.0 / h.edge_count)
