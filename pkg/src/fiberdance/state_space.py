"""Configuration spaces for planar robots.

Spaces know their metric, bounds, sampling and geodesic interpolation.
States are plain float64 numpy arrays laid out as the space dictates
(Euclidean coordinates, then one angle per rotation component, recursively
for products). Angles always live in [-pi, pi).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi


class ContractError(ValueError):
    """An operation was called outside its stated contract."""


def normalize_angle(a):
    """Wrap an angle (or array of angles) into [-pi, pi)."""
    return (a + math.pi) % TWO_PI - math.pi


def as_state(values) -> np.ndarray:
    return np.asarray(values, dtype=float)


class StateSpace:
    """Base class; concrete spaces implement the metric primitives."""

    dimension: int = 0
    extent: float = 0.0

    def _check_dim(self, x: np.ndarray):
        if x.shape[-1] != self.dimension:
            raise ContractError(
                f"state has {x.shape[-1]} coordinates, space needs {self.dimension}"
            )

    def distance(self, a: np.ndarray, b: np.ndarray) -> float:
        raise NotImplementedError

    def distances_to(self, pts: np.ndarray, q: np.ndarray) -> np.ndarray:
        """Vectorized distance from each row of pts to q."""
        raise NotImplementedError

    def interpolate(self, a: np.ndarray, b: np.ndarray, t: float) -> np.ndarray:
        if not 0.0 <= t <= 1.0:
            raise ContractError(f"interpolation parameter {t} outside [0, 1]")
        return self._interp(as_state(a), as_state(b), t)

    def interpolate_many(self, a: np.ndarray, b: np.ndarray, ts: np.ndarray) -> np.ndarray:
        """Geodesic states at each parameter in ts; shape (len(ts), dim)."""
        raise NotImplementedError

    def _interp(self, a, b, t):
        raise NotImplementedError

    def sample_uniform(self, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError

    def sample_uniform_near(self, center, eps: float, rng: np.random.Generator) -> np.ndarray:
        """Sample within metric distance eps of center, inside bounds.

        Draws from the per-component box enclosing the eps-ball, clamps into
        bounds, then pulls the candidate back along the geodesic when the box
        corner exceeds the metric ball, so distance(center, result) <= eps
        always holds.
        """
        center = as_state(center)
        self._check_dim(center)
        if eps <= 0.0:
            return center.copy()
        x = self.clamp(self._sample_box_near(center, eps, rng))
        d = self.distance(center, x)
        if d > eps:
            x = self._interp(center, x, eps / d)
        return x

    def _sample_box_near(self, center, eps, rng):
        raise NotImplementedError

    def clamp(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def contains(self, x: np.ndarray, tol: float = 1e-9) -> bool:
        raise NotImplementedError


class EuclideanSpace(StateSpace):
    """Axis-aligned bounded R^n with the L2 metric."""

    def __init__(self, lower, upper):
        self.lower = np.asarray(lower, dtype=float)
        self.upper = np.asarray(upper, dtype=float)
        if self.lower.shape != self.upper.shape or self.lower.ndim != 1:
            raise ContractError("bounds must be 1-d arrays of equal length")
        if not np.all(self.lower < self.upper):
            raise ContractError("every axis needs lower < upper")
        self.dimension = len(self.lower)
        self.extent = float(np.linalg.norm(self.upper - self.lower))

    def distance(self, a, b):
        a, b = as_state(a), as_state(b)
        self._check_dim(a)
        self._check_dim(b)
        return float(np.linalg.norm(a - b))

    def distances_to(self, pts, q):
        return np.linalg.norm(pts - q, axis=1)

    def _interp(self, a, b, t):
        return a + t * (b - a)

    def interpolate_many(self, a, b, ts):
        a, b = as_state(a), as_state(b)
        return a + np.asarray(ts)[:, None] * (b - a)

    def sample_uniform(self, rng):
        return rng.uniform(self.lower, self.upper)

    def _sample_box_near(self, center, eps, rng):
        return rng.uniform(center - eps, center + eps)

    def clamp(self, x):
        return np.clip(x, self.lower, self.upper)

    def contains(self, x, tol=1e-9):
        x = as_state(x)
        return bool(np.all(x >= self.lower - tol) and np.all(x <= self.upper + tol))


class PlanarRotationSpace(StateSpace):
    """Single angle in [-pi, pi) with shortest-arc metric (extent pi)."""

    def __init__(self):
        self.dimension = 1
        self.extent = math.pi

    def distance(self, a, b):
        a, b = as_state(a), as_state(b)
        self._check_dim(a)
        self._check_dim(b)
        d = abs(float(a[0]) - float(b[0])) % TWO_PI
        return min(d, TWO_PI - d)

    def distances_to(self, pts, q):
        d = np.abs(pts[:, 0] - q[0]) % TWO_PI
        return np.minimum(d, TWO_PI - d)

    def _interp(self, a, b, t):
        delta = normalize_angle(float(b[0]) - float(a[0]))
        return np.array([normalize_angle(float(a[0]) + t * delta)])

    def interpolate_many(self, a, b, ts):
        a, b = as_state(a), as_state(b)
        delta = normalize_angle(float(b[0]) - float(a[0]))
        return normalize_angle(float(a[0]) + np.asarray(ts)[:, None] * delta)

    def sample_uniform(self, rng):
        return rng.uniform(-math.pi, math.pi, size=1)

    def _sample_box_near(self, center, eps, rng):
        half = min(eps, math.pi)
        return normalize_angle(rng.uniform(center - half, center + half))

    def clamp(self, x):
        return normalize_angle(as_state(x))

    def contains(self, x, tol=1e-9):
        x = as_state(x)
        return bool(-math.pi - tol <= float(x[0]) < math.pi + tol)


class ProductSpace(StateSpace):
    """Ordered product of component spaces under a weighted-sum metric.

    distance = sum_i w_i * d_i, so geodesic interpolation stays exactly
    proportional and extents add as sum_i w_i * extent_i.
    """

    def __init__(self, components, weights=None):
        self.components = list(components)
        if weights is None:
            weights = [1.0] * len(self.components)
        self.weights = [float(w) for w in weights]
        if len(self.weights) != len(self.components):
            raise ContractError("one weight per component required")
        if any(w <= 0 for w in self.weights):
            raise ContractError("metric weights must be positive")
        self.dimension = sum(c.dimension for c in self.components)
        self.extent = float(sum(w * c.extent for c, w in zip(self.components, self.weights)))
        self._slices = []
        at = 0
        for c in self.components:
            self._slices.append(slice(at, at + c.dimension))
            at += c.dimension

    def distance(self, a, b):
        a, b = as_state(a), as_state(b)
        self._check_dim(a)
        self._check_dim(b)
        return float(
            sum(
                w * c.distance(a[s], b[s])
                for c, w, s in zip(self.components, self.weights, self._slices)
            )
        )

    def distances_to(self, pts, q):
        total = np.zeros(len(pts))
        for c, w, s in zip(self.components, self.weights, self._slices):
            total += w * c.distances_to(pts[:, s], q[s])
        return total

    def _interp(self, a, b, t):
        out = np.empty(self.dimension)
        for c, s in zip(self.components, self._slices):
            out[s] = c._interp(a[s], b[s], t)
        return out

    def interpolate_many(self, a, b, ts):
        a, b = as_state(a), as_state(b)
        ts = np.asarray(ts)
        out = np.empty((len(ts), self.dimension))
        for c, s in zip(self.components, self._slices):
            out[:, s] = c.interpolate_many(a[s], b[s], ts)
        return out

    def sample_uniform(self, rng):
        return np.concatenate([c.sample_uniform(rng) for c in self.components])

    def _sample_box_near(self, center, eps, rng):
        # The eps-ball projects onto component i as a ball of radius eps/w_i.
        out = np.empty(self.dimension)
        for c, w, s in zip(self.components, self.weights, self._slices):
            out[s] = c._sample_box_near(center[s], eps / w, rng)
        return out

    def clamp(self, x):
        x = as_state(x)
        out = np.empty(self.dimension)
        for c, s in zip(self.components, self._slices):
            out[s] = c.clamp(x[s])
        return out

    def contains(self, x, tol=1e-9):
        x = as_state(x)
        return all(c.contains(x[s], tol) for c, s in zip(self.components, self._slices))


@dataclass(frozen=True)
class MotionResult:
    """Outcome of a discretized motion check."""

    reached: bool
    last_valid: np.ndarray
    last_valid_fraction: float


class ValidityChecker:
    """Deterministic state predicate plus the evaluation resolution.

    resolution is the maximum metric step between consecutive evaluations
    along a motion. A vectorized predicate over an (n, dim) array can be
    supplied for speed; otherwise the scalar one is mapped.
    """

    def __init__(self, fn, resolution: float, batch_fn=None):
        if resolution <= 0:
            raise ContractError("resolution must be positive")
        self._fn = fn
        self._batch_fn = batch_fn
        self.resolution = float(resolution)

    def is_valid(self, x) -> bool:
        return bool(self._fn(as_state(x)))

    def is_valid_many(self, xs: np.ndarray) -> np.ndarray:
        if self._batch_fn is not None:
            return np.asarray(self._batch_fn(xs), dtype=bool)
        return np.fromiter((bool(self._fn(x)) for x in xs), dtype=bool, count=len(xs))

    def with_resolution(self, resolution: float) -> "ValidityChecker":
        return ValidityChecker(self._fn, resolution, self._batch_fn)


_CHUNK = 16


def check_motion(checker: ValidityChecker, space: StateSpace, a, b) -> MotionResult:
    """Sweep the geodesic from a to b at spacing <= checker.resolution.

    Both endpoints are evaluated, in forward order with b last. reached is
    true iff every evaluated state is valid; otherwise last_valid is the
    final consecutive valid state from a (a itself if the very first
    evaluation fails, with fraction 0).
    """
    a, b = as_state(a), as_state(b)
    space._check_dim(a)
    space._check_dim(b)
    d = space.distance(a, b)
    if d == 0.0:
        ok = checker.is_valid(a)
        return MotionResult(ok, a.copy(), 1.0 if ok else 0.0)
    n = max(1, int(math.ceil(d / checker.resolution)))
    ts = np.linspace(0.0, 1.0, n + 1)
    for start in range(0, n + 1, _CHUNK):
        chunk_ts = ts[start : start + _CHUNK]
        states = space.interpolate_many(a, b, chunk_ts)
        valid = checker.is_valid_many(states)
        if not valid.all():
            j = start + int(np.argmin(valid))
            if j == 0:
                return MotionResult(False, a.copy(), 0.0)
            last = space.interpolate(a, b, float(ts[j - 1]))
            return MotionResult(False, last, float(ts[j - 1]))
    return MotionResult(True, b.copy(), 1.0)


def check_motion_path(checker: ValidityChecker, space: StateSpace, states) -> MotionResult:
    """Pairwise motion check along a sequence of states."""
    reached, last, idx, frac = _check_motion_path_indexed(checker, space, states)
    states = [as_state(s) for s in states]
    if reached:
        return MotionResult(True, last, 1.0)
    lengths = [space.distance(states[i], states[i + 1]) for i in range(len(states) - 1)]
    total = sum(lengths)
    if total == 0.0:
        return MotionResult(False, last, 0.0)
    covered = sum(lengths[:idx]) + frac * lengths[idx] if idx < len(lengths) else total
    return MotionResult(False, last, covered / total)


def _check_motion_path_indexed(checker, space, states):
    """Like check_motion_path but reports (reached, last_valid, seg, seg_frac)."""
    states = [as_state(s) for s in states]
    if not states:
        raise ContractError("path overload needs at least one state")
    if len(states) == 1:
        ok = checker.is_valid(states[0])
        return ok, states[0].copy(), 0, 1.0 if ok else 0.0
    for i in range(len(states) - 1):
        res = check_motion(checker, space, states[i], states[i + 1])
        if not res.reached:
            return False, res.last_valid, i, res.last_valid_fraction
    return True, states[-1].copy(), len(states) - 2, 1.0
