"""Base paths, path restrictions and the head pointer the patterns advance."""
from __future__ import annotations

import bisect
from dataclasses import dataclass

import numpy as np

from .bundle import Bundle
from .state_space import ContractError, StateSpace, ValidityChecker, as_state


class BasePath:
    """Arc-length parameterized polyline of base-space waypoints."""

    def __init__(self, space: StateSpace, waypoints):
        self.space = space
        pts = [as_state(w) for w in waypoints]
        if len(pts) < 2:
            raise ContractError("a base path needs at least two waypoints")
        cumulative = [0.0]
        for prev, cur in zip(pts, pts[1:]):
            step = space.distance(prev, cur)
            if step <= 0.0:
                raise ContractError("consecutive waypoints must be distinct")
            cumulative.append(cumulative[-1] + step)
        self.waypoints = pts
        self.cumulative_lengths = cumulative

    @property
    def length(self) -> float:
        return self.cumulative_lengths[-1]

    def at(self, l: float) -> np.ndarray:
        """State on the path at arc length l, clamped into [0, length]."""
        l = min(max(l, 0.0), self.length)
        i = bisect.bisect_right(self.cumulative_lengths, l) - 1
        if i >= len(self.waypoints) - 1:
            return self.waypoints[-1].copy()
        seg = self.cumulative_lengths[i + 1] - self.cumulative_lengths[i]
        t = (l - self.cumulative_lengths[i]) / seg
        return self.space.interpolate(self.waypoints[i], self.waypoints[i + 1], t)


def base_path_at(path: BasePath, l: float) -> np.ndarray:
    return path.at(l)


def make_base_path(space: StateSpace, states) -> BasePath | None:
    """Build a BasePath from raw states, dropping zero-length segments."""
    pts = []
    for s in states:
        s = as_state(s)
        if not pts or space.distance(pts[-1], s) > 0.0:
            pts.append(s)
    if len(pts) < 2:
        return None
    return BasePath(space, pts)


@dataclass(frozen=True)
class PathRestriction:
    """The set of total-space states projecting onto a base path's image.

    Held implicitly by its three constituents; never materialized.
    """

    base_path: BasePath
    bundle: Bundle
    checker: ValidityChecker


class HeadPointer:
    """Cursor (state, arc-length location) moving along a path restriction."""

    def __init__(self, restriction: PathRestriction, state, location: float):
        self.restriction = restriction
        state = as_state(state)
        if not restriction.checker.is_valid(state):
            raise ContractError("head pointer created at an invalid state")
        self.state = state
        self.location = float(location)

    def update(self, x, l: float):
        x = as_state(x)
        if not self.restriction.checker.is_valid(x):
            raise ContractError("head pointer may not move to an invalid state")
        self.state = x
        self.location = float(min(max(l, 0.0), self.restriction.base_path.length))


def update_head(head: HeadPointer, x, l: float):
    head.update(x, l)


def has_reached_goal(head: HeadPointer, goal, tol: float) -> bool:
    total = head.restriction.bundle.total
    return total.distance(head.state, as_state(goal)) <= tol
