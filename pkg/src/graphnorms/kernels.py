"""Step kernels: symmetric piecewise-constant functions on a partitioned space.

A kernel is a vector of part measures (positive, summing to 1) plus a
symmetric matrix of block values.  Values may leave [0, 1]: being a
graphon is a predicate here, not an invariant.  Kernels are immutable
after construction; the backing arrays are locked read-only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .seeding import counter_uniform

MEASURE_TOL = 1e-12


class PartitionMismatchError(ValueError):
    """Binary kernel operation attempted across different partitions."""


@dataclass(frozen=True, eq=False)
class StepKernel:
    measures: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        measures = np.array(self.measures, dtype=np.float64)
        values = np.array(self.values, dtype=np.float64)
        if measures.ndim != 1 or measures.size == 0:
            raise ValueError("measures must be a non-empty vector")
        k = measures.size
        if values.shape != (k, k):
            raise ValueError(f"values must be a {k}x{k} matrix, got shape {values.shape}")
        if not np.all(np.isfinite(measures)) or not np.all(np.isfinite(values)):
            raise ValueError("measures and values must be finite")
        if not np.all(measures > 0.0):
            raise ValueError("part measures must be strictly positive")
        if abs(float(measures.sum()) - 1.0) > MEASURE_TOL:
            raise ValueError(f"part measures must sum to 1 (got {float(measures.sum())!r})")
        if not np.array_equal(values, values.T):
            raise ValueError("values matrix must be exactly symmetric")
        measures.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "measures", measures)
        object.__setattr__(self, "values", values)

    @property
    def part_count(self) -> int:
        return self.measures.size

    def same_partition(self, other: "StepKernel") -> bool:
        return np.array_equal(self.measures, other.measures)


def _require_same_partition(w1: StepKernel, w2: StepKernel, op: str) -> None:
    if not w1.same_partition(w2):
        raise PartitionMismatchError(
            f"{op}: kernels live on different partitions "
            f"({w1.part_count} vs {w2.part_count} parts); align them with common_refinement first"
        )


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def constant_kernel(p: float) -> StepKernel:
    """One part of full measure with constant value p."""
    if not np.isfinite(p):
        raise ValueError("constant value must be finite")
    return StepKernel(np.array([1.0]), np.array([[float(p)]]))


def half_square_kernel() -> StepKernel:
    """Indicator of X x X for a set X of measure 1/2."""
    return StepKernel(np.array([0.5, 0.5]), np.array([[1.0, 0.0], [0.0, 0.0]]))


@dataclass(frozen=True)
class SpecialKernelSpec:
    """Diagonal kernel on dyadic parts: block i of measure 2^-i carries 2^(i*gamma) * a_i."""

    gamma: float
    a: tuple[float, ...]

    def __post_init__(self) -> None:
        if not (self.gamma > 0):
            raise ValueError("gamma must be positive")
        object.__setattr__(self, "a", tuple(float(x) for x in self.a))
        if len(self.a) < 1:
            raise ValueError("coefficient vector must have length at least 1")

    @property
    def depth(self) -> int:
        return len(self.a)

    def build(self) -> StepKernel:
        return special_kernel(self.gamma, self.a)


def special_kernel(gamma: float, a: Sequence[float]) -> StepKernel:
    """Realize SpecialKernelSpec(gamma, a) as a step kernel.

    Uses N = len(a) dyadic parts plus a zero-valued remainder part of
    measure 2^-N, so the measures sum to 1 exactly.  For a truncated
    infinite coefficient sequence the homomorphism-density error of a
    connected m-edge graph is the dropped tail sum of |a_i|^m.
    """
    spec = SpecialKernelSpec(float(gamma), tuple(a))
    n = spec.depth
    measures = np.array([2.0 ** -(i + 1) for i in range(n)] + [2.0**-n])
    values = np.zeros((n + 1, n + 1))
    for i in range(n):
        values[i, i] = 2.0 ** ((i + 1) * spec.gamma) * spec.a[i]
    return StepKernel(measures, values)


# ---------------------------------------------------------------------------
# Mixtures of point masses on [0, 1]
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiracMixture:
    """Finitely supported probability distribution on [0, 1]."""

    atoms: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        atoms = tuple((float(v), float(p)) for v, p in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if not atoms:
            raise ValueError("mixture needs at least one atom")
        for v, p in atoms:
            if not (0.0 <= v <= 1.0):
                raise ValueError(f"atom value {v} outside [0, 1]")
            if p <= 0.0:
                raise ValueError("atom probabilities must be positive")
        if abs(sum(p for _, p in atoms) - 1.0) > MEASURE_TOL:
            raise ValueError("atom probabilities must sum to 1")

    @property
    def mean(self) -> float:
        return sum(v * p for v, p in self.atoms)

    def pick(self, u: float) -> float:
        """Atom value at quantile u in [0, 1)."""
        acc = 0.0
        for v, p in self.atoms:
            acc += p
            if u < acc:
                return v
        return self.atoms[-1][0]


def dirac_d1() -> DiracMixture:
    """Fair coin on {0, 1}."""
    return DiracMixture(((0.0, 0.5), (1.0, 0.5)))


def dirac_d2() -> DiracMixture:
    """Quarter/half/quarter mixture on {0, 1/2, 1}."""
    return DiracMixture(((0.0, 0.25), (0.5, 0.5), (1.0, 0.25)))


def dirac_d3(eps: float) -> DiracMixture:
    """Uniform on {0, eps, 1-eps, 1}; requires eps in (0, 1)."""
    if not (0.0 < eps < 1.0):
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    return DiracMixture(((0.0, 0.25), (float(eps), 0.25), (1.0 - eps, 0.25), (1.0, 0.25)))


def dirac_d4(eps: float) -> DiracMixture:
    """Uniform on {0, eps/2, 1/2, (1+eps)/2}; requires eps in (0, 1)."""
    if not (0.0 < eps < 1.0):
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    return DiracMixture(((0.0, 0.25), (eps / 2.0, 0.25), (0.5, 0.25), ((1.0 + eps) / 2.0, 0.25)))


def sample_block_random(n: int, d: DiracMixture, seed: int) -> StepKernel:
    """Random block kernel: n equal parts, block (i, j) value drawn i.i.d. from d.

    The value of block (i, j) is a pure function of (seed, i, j), so the
    sample is bit-exact reproducible and independent of iteration order.
    """
    if n < 1:
        raise ValueError("need at least one part")
    values = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            x = d.pick(counter_uniform("block", seed, i, j))
            values[i, j] = x
            values[j, i] = x
    return StepKernel(np.full(n, 1.0 / n), values)


# ---------------------------------------------------------------------------
# Pointwise algebra
# ---------------------------------------------------------------------------

def add(w1: StepKernel, w2: StepKernel) -> StepKernel:
    _require_same_partition(w1, w2, "add")
    return StepKernel(w1.measures, w1.values + w2.values)


def subtract(w1: StepKernel, w2: StepKernel) -> StepKernel:
    _require_same_partition(w1, w2, "subtract")
    return StepKernel(w1.measures, w1.values - w2.values)


def scale(w: StepKernel, c: float) -> StepKernel:
    if not np.isfinite(c):
        raise ValueError("scale factor must be finite")
    return StepKernel(w.measures, c * w.values)


def absolute(w: StepKernel) -> StepKernel:
    return StepKernel(w.measures, np.abs(w.values))


def combine(alpha: float, w1: StepKernel, beta: float, w2: StepKernel) -> StepKernel:
    """alpha * w1 + beta * w2 on the shared partition."""
    _require_same_partition(w1, w2, "combine")
    if not (np.isfinite(alpha) and np.isfinite(beta)):
        raise ValueError("coefficients must be finite")
    return StepKernel(w1.measures, alpha * w1.values + beta * w2.values)


def ones_like(w: StepKernel) -> StepKernel:
    """Constant-1 kernel on the same partition as w."""
    k = w.part_count
    return StepKernel(w.measures, np.ones((k, k)))


def is_nonnegative(w: StepKernel) -> bool:
    return bool(np.all(w.values >= 0.0))


def is_graphon(w: StepKernel) -> bool:
    return bool(np.all(w.values >= 0.0) and np.all(w.values <= 1.0))


def common_refinement(w1: StepKernel, w2: StepKernel) -> tuple[StepKernel, StepKernel]:
    """Re-express both kernels on the product partition.

    Part (i, j) of the refinement gets measure mu_i * mu'_j; each kernel
    keeps its own block values, so homomorphism densities are unchanged.
    """
    k1, k2 = w1.part_count, w2.part_count
    measures = np.outer(w1.measures, w2.measures).reshape(-1)
    ref1 = np.kron(w1.values, np.ones((k2, k2)))
    ref2 = np.kron(np.ones((k1, k1)), w2.values)
    return StepKernel(measures, ref1), StepKernel(measures, ref2)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def kernel_to_json(w: StepKernel) -> dict:
    return {"measures": w.measures.tolist(), "values": w.values.tolist()}


def kernel_from_json(obj: dict) -> StepKernel:
    if not isinstance(obj, dict) or "measures" not in obj or "values" not in obj:
        raise ValueError("kernel JSON must have 'measures' and 'values' fields")
    try:
        return StepKernel(np.array(obj["measures"], dtype=np.float64), np.array(obj["values"], dtype=np.float64))
    except (TypeError, ValueError) as exc:
        raise ValueError(f"bad kernel JSON: {exc}") from None
