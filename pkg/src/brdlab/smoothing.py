"""phi-smooth perturbation of adversarial game skeletons.

A phi-smooth random variable lives on [0, 1] with density at most phi.  Two
families are provided, both with density exactly phi on their support:

``UniformLow(phi)``
    uniform on ``[0, 1/phi]``; the extremal family that puts all mass as
    close to zero as the density cap allows.
``UniformWindow(center, phi)``
    uniform on a width ``1/phi`` window around ``center``.  Near the ends of
    [0, 1] the window slides inward instead of being truncated.

``perturb`` replaces exactly the parameters each cost model designates as
random (all table entries, step jumps, nonzero polynomial coefficients,
cost-sharing fixed costs) and leaves the structure bit-identical.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .game import Game


@dataclass(frozen=True)
class UniformLow:
    phi: float

    def __post_init__(self):
        if not self.phi >= 1:
            raise ValueError("phi must be >= 1")

    def interval(self) -> tuple[float, float]:
        return 0.0, 1.0 / self.phi

    def transform(self, u):
        """Map uniforms on [0, 1) to samples of this family."""
        return np.asarray(u) / self.phi


@dataclass(frozen=True)
class UniformWindow:
    center: float
    phi: float

    def __post_init__(self):
        if not self.phi >= 1:
            raise ValueError("phi must be >= 1")

    def interval(self) -> tuple[float, float]:
        width = 1.0 / self.phi
        low = min(max(self.center - width / 2, 0.0), 1.0 - width)
        return low, low + width

    def transform(self, u):
        low, _ = self.interval()
        return low + np.asarray(u) / self.phi


FAMILY_KINDS = ("low", "window")


def make_family(kind: str, phi: float, center: float = 0.5):
    if kind == "low":
        return UniformLow(phi)
    if kind == "window":
        return UniformWindow(center, phi)
    raise ValueError(f"unknown smooth family {kind!r}; expected one of {FAMILY_KINDS}")


@dataclass(frozen=True)
class PerturbationSpec:
    phi: float
    family: str = "window"
    seed: int = 0

    def __post_init__(self):
        if not self.phi >= 1:
            raise ValueError("phi must be >= 1")
        if self.family not in FAMILY_KINDS:
            raise ValueError(f"unknown smooth family {self.family!r}")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")


def parameter_stream(seed: int) -> np.random.Generator:
    """Counter-based generator: draw ``k`` always comes from counter block ``k``."""
    return np.random.Generator(np.random.Philox(key=seed))


def sample_phi_smooth(family, rng: np.random.Generator, size=None):
    """Draw from ``family`` using ``rng``."""
    return family.transform(rng.random(size))


def _positive_uniforms(rng: np.random.Generator, size: int) -> np.ndarray:
    u = rng.random(size)
    # A literal 0.0 has probability 2**-53; redraw so positivity invariants hold.
    zero = np.flatnonzero(u == 0.0)
    while zero.size:
        u[zero] = rng.random(zero.size)
        zero = zero[u[zero] == 0.0]
    return u


def perturb(skeleton: Game, spec: PerturbationSpec) -> Game:
    """A concrete game drawn around ``skeleton``.

    Parameter ``k`` (in the model's resource-major order) is the ``k``-th draw
    of the seeded stream, so the map from seed to game is deterministic.
    """
    nominal = skeleton.costs.parameters()
    u = _positive_uniforms(parameter_stream(spec.seed), nominal.size)
    if spec.family == "low":
        values = u / spec.phi
    else:
        width = 1.0 / spec.phi
        low = np.clip(nominal - width / 2, 0.0, 1.0 - width)
        values = low + u / spec.phi
    return replace(skeleton, costs=skeleton.costs.with_parameters(values))
