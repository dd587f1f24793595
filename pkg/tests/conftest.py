"""Shared fixtures and random-object helpers for the test suite."""

from __future__ import annotations

import random

import numpy as np
import pytest

from graphnorms import Graph, StepKernel, cycle, path, star, complete, disjoint_union


@pytest.fixture
def c4():
    return cycle(4)


@pytest.fixture
def c6():
    return cycle(6)


@pytest.fixture
def k12():
    return star(2)


@pytest.fixture
def k3():
    return complete(3)


@pytest.fixture
def p4():
    return path(4)


def random_graph(rng: random.Random, max_vertices: int = 6, p: float = 0.5) -> Graph:
    n = rng.randint(1, max_vertices)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(edges, vertex_count=n)


def random_graph_with_edges(rng: random.Random, max_vertices: int = 6, p: float = 0.5) -> Graph:
    while True:
        g = random_graph(rng, max_vertices, p)
        if g.edge_count > 0:
            return g


def random_measures(rng: random.Random, parts: int) -> np.ndarray:
    raw = np.array([rng.uniform(0.2, 1.0) for _ in range(parts)])
    return raw / raw.sum()


def random_kernel(rng: random.Random, max_parts: int = 4, signed: bool = False) -> StepKernel:
    k = rng.randint(1, max_parts)
    measures = random_measures(rng, k)
    lo = -1.0 if signed else 0.0
    values = np.empty((k, k))
    for i in range(k):
        for j in range(i, k):
            x = rng.uniform(lo, 1.0)
            values[i, j] = values[j, i] = x
    return StepKernel(measures, values)


def graph_text(g: Graph) -> str:
    lines = [f"vertices {g.vertex_count}"]
    lines += [f"{u} {v}" for u, v in g.sorted_edges]
    return "\n".join(lines) + "\n"


def two_copies(g: Graph) -> Graph:
    return disjoint_union(g, g)
