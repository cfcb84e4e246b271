"""Search space, observation storage, and seeded random streams.

All surrogate models and the acquisition search operate in normalized
[0, 1]^d coordinates; user-facing I/O stays in original units.

Randomness is derived, never shared: every consumer gets its own
generator keyed by ``(seed, purpose, iteration)`` through
``numpy.random.SeedSequence`` feeding a Philox counter-based engine.
Philox streams are platform-stable, so trajectories replay bit-for-bit
across machines and across the run/ask-tell drivers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatchError,
    NonFiniteValueError,
    OutOfBoundsError,
)

# Purpose codes for derived random streams.
STREAM_INIT = 1  # initial design
STREAM_GP = 2  # GP hyperparameter restarts
STREAM_REGRESSOR = 3  # corrective-model fitting (bootstrap etc.)
STREAM_ACQ = 4  # acquisition candidate sampling
STREAM_RANDOM_SEARCH = 5  # random-search baseline draws


def stream(seed: int, purpose: int, iteration: int = 0) -> np.random.Generator:
    """Return the deterministic generator for one (seed, purpose, iteration) slot."""
    ss = np.random.SeedSequence(entropy=[int(seed), int(purpose), int(iteration)])
    return np.random.Generator(np.random.Philox(ss))


@dataclass(frozen=True)
class SearchSpace:
    """Box-bounded continuous domain.

    Parameters
    ----------
    lower, upper : array-like of shape (dim,)
        Componentwise bounds; each lower bound must be strictly below its
        upper bound (no degenerate dimensions).
    """

    lower: np.ndarray
    upper: np.ndarray

    def __init__(self, lower, upper):
        lower = np.atleast_1d(np.asarray(lower, dtype=float))
        upper = np.atleast_1d(np.asarray(upper, dtype=float))
        if lower.ndim != 1 or lower.shape != upper.shape:
            raise DimensionMismatchError(
                f"bounds shapes differ: {lower.shape} vs {upper.shape}"
            )
        if lower.size < 1:
            raise ValueError("search space needs at least one dimension")
        if not (np.isfinite(lower).all() and np.isfinite(upper).all()):
            raise ValueError("bounds must be finite")
        if not np.all(lower < upper):
            bad = int(np.argmin(upper - lower))
            raise ValueError(
                f"degenerate bounds in dimension {bad}: "
                f"[{lower[bad]}, {upper[bad]}] is not a proper interval"
            )
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def dim(self) -> int:
        return self.lower.size

    @property
    def widths(self) -> np.ndarray:
        return self.upper - self.lower

    def contains(self, x: np.ndarray, atol: float = 0.0) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(
            np.all(x >= self.lower - atol) and np.all(x <= self.upper + atol)
        )

    def _check_vector(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.dim:
            raise DimensionMismatchError(
                f"expected {self.dim} coordinates, got {x.shape[-1]}"
            )
        return x

    def normalize(self, x) -> np.ndarray:
        """Map in-bounds points to [0, 1]^dim; raises if out of bounds."""
        x = self._check_vector(x)
        if np.any(x < self.lower) or np.any(x > self.upper):
            raise OutOfBoundsError(f"point {np.ravel(x)} outside {self.describe()}")
        return (x - self.lower) / self.widths

    def denormalize(self, z) -> np.ndarray:
        """Inverse of :meth:`normalize`; exact to ~1e-12 round trip."""
        z = self._check_vector(z)
        return self.lower + z * self.widths

    def sample_uniform(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """Draw ``n`` uniform points, shape (n, dim), in original units."""
        if n < 1:
            raise ValueError("n must be >= 1")
        z = rng.random((n, self.dim))
        return self.lower + z * self.widths

    def describe(self) -> str:
        return " x ".join(
            f"[{lo:g}, {hi:g}]" for lo, hi in zip(self.lower, self.upper)
        )


@dataclass(frozen=True)
class Observation:
    """A single evaluated point, in original units."""

    x: np.ndarray
    y: float


@dataclass
class Dataset:
    """Ordered observation set; index equals acquisition order.

    Appending never reorders, so positional indices are stable and the
    early-stop arithmetic can address "the first i points" directly.
    """

    space: SearchSpace
    observations: list[Observation] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.observations)

    def append(self, x, y: float) -> None:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.space.dim,):
            raise DimensionMismatchError(
                f"expected shape ({self.space.dim},), got {x.shape}"
            )
        if not self.space.contains(x):
            raise OutOfBoundsError(
                f"point {x} outside {self.space.describe()}"
            )
        y = float(y)
        if not np.isfinite(y):
            raise NonFiniteValueError(f"objective value {y!r} at x={x}")
        self.observations.append(Observation(x.copy(), y))

    @property
    def X(self) -> np.ndarray:
        if not self.observations:
            return np.empty((0, self.space.dim))
        return np.stack([o.x for o in self.observations])

    @property
    def y(self) -> np.ndarray:
        return np.array([o.y for o in self.observations], dtype=float)
