"""Fiber bundles over coordinate-selection projections.

A bundle splits a total space's coordinates into a base part and the
complementary fiber part. Lifting interleaves them back, so
lift(project_base(x), project_fiber(x)) == x bitwise.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .state_space import ContractError, StateSpace, ValidityChecker, as_state


class Bundle:
    """(total, base, fiber) with a boolean mask choosing the base coordinates."""

    def __init__(self, total: StateSpace, base: StateSpace, fiber: StateSpace, base_mask):
        self.total = total
        self.base = base
        self.fiber = fiber
        self.base_mask = np.asarray(base_mask, dtype=bool)
        if len(self.base_mask) != total.dimension:
            raise ContractError("mask length must equal the total dimension")
        if int(self.base_mask.sum()) != base.dimension:
            raise ContractError("mask selects a different count than the base dimension")
        if total.dimension != base.dimension + fiber.dimension:
            raise ContractError("total dimension must equal base + fiber dimensions")
        self._base_idx = np.flatnonzero(self.base_mask)
        self._fiber_idx = np.flatnonzero(~self.base_mask)

    def project_base(self, x) -> np.ndarray:
        x = as_state(x)
        self.total._check_dim(x)
        return x[self._base_idx]

    def project_fiber(self, x) -> np.ndarray:
        x = as_state(x)
        self.total._check_dim(x)
        return x[self._fiber_idx]

    def lift(self, b, f) -> np.ndarray:
        b, f = as_state(b), as_state(f)
        self.base._check_dim(b)
        self.fiber._check_dim(f)
        out = np.empty(self.total.dimension)
        out[self._base_idx] = b
        out[self._fiber_idx] = f
        return out

    def lift_many(self, bs: np.ndarray, fs: np.ndarray) -> np.ndarray:
        out = np.empty((len(bs), self.total.dimension))
        out[:, self._base_idx] = bs
        out[:, self._fiber_idx] = fs
        return out


def project_base(bundle: Bundle, x) -> np.ndarray:
    return bundle.project_base(x)


def project_fiber(bundle: Bundle, x) -> np.ndarray:
    return bundle.project_fiber(x)


def lift(bundle: Bundle, b, f) -> np.ndarray:
    return bundle.lift(b, f)


class BundleLadder:
    """Spaces X_1..X_K with a bundle between each adjacent pair.

    spaces[k] is level k+1 in 1-based speak; checkers[k] validates states of
    spaces[k]; bundles[k] connects total spaces[k+1] to base spaces[k].
    """

    def __init__(self, spaces, checkers, bundles):
        self.spaces = list(spaces)
        self.checkers = list(checkers)
        self.bundles = list(bundles)
        if len(self.spaces) != len(self.checkers):
            raise ContractError("one validity checker per level required")
        if len(self.bundles) != len(self.spaces) - 1:
            raise ContractError("need exactly K-1 bundles for K spaces")
        for k, bundle in enumerate(self.bundles):
            if bundle.base is not self.spaces[k] or bundle.total is not self.spaces[k + 1]:
                raise ContractError(f"bundle {k} does not join spaces {k} and {k + 1}")

    @property
    def num_levels(self) -> int:
        return len(self.spaces)

    def top_space(self) -> StateSpace:
        return self.spaces[-1]

    def top_checker(self) -> ValidityChecker:
        return self.checkers[-1]

    def project_to_level(self, x, level: int) -> np.ndarray:
        """Project a top-space state down to 1-based level."""
        x = as_state(x)
        for bundle in reversed(self.bundles[level - 1 :]):
            x = bundle.project_base(x)
        return x


@dataclass
class AdmissibilityReport:
    """Outcome of an empirical admissibility check on one ladder level."""

    samples: int = 0
    violations: int = 0
    witnesses: list = field(default_factory=list)


def check_admissibility(
    ladder: BundleLadder, level: int, n_samples: int, rng: np.random.Generator
) -> AdmissibilityReport:
    """Count sampled states valid upstairs but invalid under projection.

    level is 1-based; the bundle between X_level and X_{level+1} is examined.
    A ladder too short to have that bundle yields a vacuous zero report.
    """
    if level < 1 or level > ladder.num_levels - 1:
        return AdmissibilityReport(samples=0)
    bundle = ladder.bundles[level - 1]
    check_base = ladder.checkers[level - 1]
    check_total = ladder.checkers[level]
    report = AdmissibilityReport(samples=n_samples)
    for _ in range(n_samples):
        x = bundle.total.sample_uniform(rng)
        if check_total.is_valid(x) and not check_base.is_valid(bundle.project_base(x)):
            report.violations += 1
            if len(report.witnesses) < 10:
                report.witnesses.append(x)
    return report
