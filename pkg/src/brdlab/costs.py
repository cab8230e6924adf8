"""Resource cost models and Rosenthal potential bounds.

Four parameterizations are supported:

* ``TabularCosts``: an explicit value ``c_r(l)`` per resource and load.
* ``StepFunctionCosts``: fixed integer break points with positive jumps.
* ``PolynomialCosts``: nonnegative polynomial coefficients of bounded degree.
* ``CostSharingCosts``: a fixed cost split equally among the users.

Each model can evaluate a single cost directly (``resource_cost``) and can
materialize a dense ``(m, n)`` table used by the dynamics kernels.  The
direct path and the table path are deliberately separate code so the
brute-force oracle never depends on the table.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import ClassVar

import numpy as np

MAX_POLY_DEGREE = 8


def harmonic(n: int) -> float:
    """Harmonic number ``H_n``, by direct summation."""
    return math.fsum(1.0 / j for j in range(1, n + 1))


def _as_rows(values) -> tuple[tuple[float, ...], ...]:
    return tuple(tuple(float(v) for v in row) for row in values)


@dataclass(frozen=True)
class CostModel:
    """Base class; concrete models are frozen dataclasses."""

    kind: ClassVar[str] = ""

    @property
    def m(self) -> int:
        raise NotImplementedError

    def _cost(self, r: int, load: int) -> float:
        raise NotImplementedError

    def resource_cost(self, r: int, load: int, n: int | None = None) -> float:
        """Cost of resource ``r`` when ``load`` players use it."""
        if not 0 <= r < self.m:
            raise IndexError(f"resource {r} out of range [0, {self.m})")
        if load < 1 or (n is not None and load > n):
            raise ValueError(f"load {load} out of range [1, {n if n is not None else 'n'}]")
        return self._cost(r, load)

    def table(self, n: int) -> np.ndarray:
        """Dense cost table; entry ``[r, l - 1]`` is ``c_r(l)``."""
        raise NotImplementedError

    def parameters(self) -> np.ndarray:
        """Perturbable parameters, flattened resource-major."""
        raise NotImplementedError

    def with_parameters(self, values) -> "CostModel":
        """Copy of the model with ``parameters()`` replaced by ``values``."""
        raise NotImplementedError

    def potential_upper_bound(self, n: int) -> float:
        raise NotImplementedError

    def min_cost_lower_bound(self, n: int) -> float:
        raise NotImplementedError

    def violations(self, n: int) -> list[str]:
        raise NotImplementedError


@dataclass(frozen=True)
class TabularCosts(CostModel):
    """General congestion costs given as one row of ``n`` values per resource.

    No monotonicity is required.
    """

    values: tuple[tuple[float, ...], ...]
    kind: ClassVar[str] = "tabular"

    def __post_init__(self):
        object.__setattr__(self, "values", _as_rows(self.values))

    @property
    def m(self) -> int:
        return len(self.values)

    def _cost(self, r, load):
        row = self.values[r]
        if load > len(row):
            raise ValueError(f"load {load} exceeds table length {len(row)} of resource {r}")
        return row[load - 1]

    def table(self, n):
        out = np.array([row[:n] for row in self.values], dtype=np.float64)
        if out.shape != (self.m, n):
            raise ValueError("tabular costs do not cover loads 1..n")
        return out

    def parameters(self):
        return np.array([v for row in self.values for v in row], dtype=np.float64)

    def with_parameters(self, values):
        values = np.asarray(values, dtype=np.float64)
        rows, pos = [], 0
        for row in self.values:
            rows.append(values[pos:pos + len(row)])
            pos += len(row)
        return TabularCosts(rows)

    def potential_upper_bound(self, n):
        return n * self.m * max(max(row[:n]) for row in self.values)

    def min_cost_lower_bound(self, n):
        c_min = min(min(row[:n]) for row in self.values)
        if c_min <= 0.0:
            raise ValueError("tabular costs contain a zero entry; no positive lower bound")
        return c_min

    def violations(self, n):
        out = []
        for r, row in enumerate(self.values):
            if len(row) != n:
                out.append(f"resource {r + 1}: table length {len(row)} != n = {n}")
            if any(not (0.0 <= v <= 1.0) for v in row):
                out.append(f"resource {r + 1}: table entries must lie in [0, 1]")
        return out


@dataclass(frozen=True)
class StepFunctionCosts(CostModel):
    """Nondecreasing step costs: ``c_r(l)`` sums the jumps whose break is <= l.

    The first break of every resource is 1, so the first jump is always paid.
    """

    breaks: tuple[tuple[int, ...], ...]
    jumps: tuple[tuple[float, ...], ...]
    kind: ClassVar[str] = "step"

    def __post_init__(self):
        object.__setattr__(self, "breaks", tuple(tuple(int(b) for b in row) for row in self.breaks))
        object.__setattr__(self, "jumps", _as_rows(self.jumps))

    @property
    def m(self) -> int:
        return len(self.breaks)

    @property
    def d(self) -> int:
        """Total number of break points."""
        return sum(len(row) for row in self.breaks)

    def _cost(self, r, load):
        total = 0.0
        for b, a in zip(self.breaks[r], self.jumps[r]):
            if b <= load:
                total += a
        return total

    def table(self, n):
        out = np.zeros((self.m, n), dtype=np.float64)
        loads = np.arange(1, n + 1)
        for r, (bs, js) in enumerate(zip(self.breaks, self.jumps)):
            for b, a in zip(bs, js):
                out[r] += np.where(loads >= b, a, 0.0)
        return out

    def parameters(self):
        return np.array([a for row in self.jumps for a in row], dtype=np.float64)

    def with_parameters(self, values):
        values = np.asarray(values, dtype=np.float64)
        rows, pos = [], 0
        for row in self.jumps:
            rows.append(values[pos:pos + len(row)])
            pos += len(row)
        return StepFunctionCosts(self.breaks, rows)

    def potential_upper_bound(self, n):
        return n * self.d * float(self.parameters().max())

    def min_cost_lower_bound(self, n):
        a_min = float(self.parameters().min())
        if a_min <= 0.0:
            raise ValueError("step jumps must be strictly positive")
        return a_min

    def violations(self, n):
        out = []
        if len(self.jumps) != len(self.breaks):
            return ["step costs: breaks and jumps disagree on the resource count"]
        for r, (bs, js) in enumerate(zip(self.breaks, self.jumps)):
            if len(bs) == 0:
                out.append(f"resource {r + 1}: needs at least one break point")
                continue
            if len(bs) != len(js):
                out.append(f"resource {r + 1}: {len(bs)} breaks but {len(js)} jumps")
            if bs[0] != 1:
                out.append(f"resource {r + 1}: first break point must be 1 (b_r1 = 1), got {bs[0]}")
            if any(b2 <= b1 for b1, b2 in zip(bs, bs[1:])):
                out.append(f"resource {r + 1}: break points must be strictly increasing")
            if bs[-1] > n:
                out.append(f"resource {r + 1}: break point {bs[-1]} exceeds n = {n}")
            if any(not (0.0 < a <= 1.0) for a in js):
                out.append(f"resource {r + 1}: jumps must lie in (0, 1]")
        return out


@dataclass(frozen=True)
class PolynomialCosts(CostModel):
    """Polynomial costs ``sum_j a_rj * l**j`` with nonnegative coefficients.

    ``coefficients[r]`` has ``degree + 1`` entries; the support of resource
    ``r`` is the set of indices with a strictly positive coefficient.
    """

    coefficients: tuple[tuple[float, ...], ...]
    degree: int = field(default=-1)
    kind: ClassVar[str] = "polynomial"

    def __post_init__(self):
        coeffs = _as_rows(self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        if self.degree < 0:
            object.__setattr__(self, "degree", max(len(row) for row in coeffs) - 1)

    @property
    def m(self) -> int:
        return len(self.coefficients)

    @cached_property
    def supports(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(j for j, a in enumerate(row) if a > 0.0) for row in self.coefficients)

    @property
    def d_tilde(self) -> int:
        """Number of nonzero coefficients over all resources."""
        return sum(len(s) for s in self.supports)

    def _cost(self, r, load):
        total = 0.0
        for j, a in enumerate(self.coefficients[r]):
            if a > 0.0:
                total += a * float(load) ** j
        return total

    def table(self, n):
        loads = np.arange(1, n + 1, dtype=np.float64)
        out = np.zeros((self.m, n), dtype=np.float64)
        for r, row in enumerate(self.coefficients):
            for j, a in enumerate(row):
                if a > 0.0:
                    out[r] += a * loads**j
        return out

    def parameters(self):
        return np.array([self.coefficients[r][j] for r, s in enumerate(self.supports) for j in s],
                        dtype=np.float64)

    def with_parameters(self, values):
        values = np.asarray(values, dtype=np.float64)
        rows, pos = [], 0
        for row, s in zip(self.coefficients, self.supports):
            new = [0.0] * len(row)
            for j in s:
                new[j] = float(values[pos])
                pos += 1
            rows.append(new)
        return PolynomialCosts(rows, self.degree)

    def potential_upper_bound(self, n):
        return self.d_tilde * float(n) ** (self.degree + 1) * float(self.parameters().max())

    def min_cost_lower_bound(self, n):
        params = self.parameters()
        if params.size == 0:
            raise ValueError("polynomial costs have no nonzero coefficient")
        return float(params.min())

    def violations(self, n):
        out = []
        if self.degree > MAX_POLY_DEGREE:
            out.append(f"polynomial degree {self.degree} exceeds the cap {MAX_POLY_DEGREE}")
        for r, row in enumerate(self.coefficients):
            if len(row) != self.degree + 1:
                out.append(f"resource {r + 1}: expected {self.degree + 1} coefficients, got {len(row)}")
            if any(not (0.0 <= a <= 1.0) for a in row):
                out.append(f"resource {r + 1}: coefficients must lie in [0, 1]")
            if not any(a > 0.0 for a in row):
                out.append(f"resource {r + 1}: needs at least one nonzero coefficient")
        return out


@dataclass(frozen=True)
class CostSharingCosts(CostModel):
    """Fair cost sharing: a fixed cost ``a_r`` split equally, ``c_r(l) = a_r / l``."""

    fixed_costs: tuple[float, ...]
    kind: ClassVar[str] = "cost_sharing"

    def __post_init__(self):
        object.__setattr__(self, "fixed_costs", tuple(float(a) for a in self.fixed_costs))

    @property
    def m(self) -> int:
        return len(self.fixed_costs)

    def _cost(self, r, load):
        return self.fixed_costs[r] / load

    def table(self, n):
        a = np.asarray(self.fixed_costs, dtype=np.float64)
        return a[:, None] / np.arange(1, n + 1, dtype=np.float64)[None, :]

    def parameters(self):
        return np.asarray(self.fixed_costs, dtype=np.float64)

    def with_parameters(self, values):
        return CostSharingCosts(tuple(np.asarray(values, dtype=np.float64)))

    def potential_upper_bound(self, n):
        return self.m * harmonic(n) * max(self.fixed_costs)

    def min_cost_lower_bound(self, n):
        a_min = min(self.fixed_costs)
        if a_min <= 0.0:
            raise ValueError("fixed costs must be strictly positive")
        return a_min / n

    def violations(self, n):
        return [f"resource {r + 1}: fixed cost must lie in (0, 1]"
                for r, a in enumerate(self.fixed_costs) if not (0.0 < a <= 1.0)]


MODELS: dict[str, type[CostModel]] = {
    cls.kind: cls for cls in (TabularCosts, StepFunctionCosts, PolynomialCosts, CostSharingCosts)
}


def resource_cost(model: CostModel, r: int, load: int) -> float:
    return model.resource_cost(r, load)


# Game-level helpers live in brdlab.game to avoid a circular import; the
# functions below only need the loads and the model.

def potential_from_loads(model: CostModel, loads) -> float:
    """Rosenthal potential computed by direct summation over loads."""
    total = 0.0
    for r, load in enumerate(loads):
        for j in range(1, int(load) + 1):
            total += model.resource_cost(r, j)
    return total
