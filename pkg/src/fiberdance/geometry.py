"""Planar polygon primitives: SAT overlap tests, convex decomposition,
point containment and distance queries. Everything here is pure geometry;
robot models and worlds live in scenarios.
"""
from __future__ import annotations

import math

import numpy as np


def polygon_area(verts: np.ndarray) -> float:
    """Signed area (positive for counter-clockwise winding)."""
    x, y = verts[:, 0], verts[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def ensure_ccw(verts: np.ndarray) -> np.ndarray:
    verts = np.asarray(verts, dtype=float)
    if polygon_area(verts) < 0:
        return verts[::-1].copy()
    return verts


def _segments_intersect(p1, p2, p3, p4) -> bool:
    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    d1, d2 = orient(p3, p4, p1), orient(p3, p4, p2)
    d3, d4 = orient(p1, p2, p3), orient(p1, p2, p4)
    return ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0))


def is_simple(verts: np.ndarray) -> bool:
    """True when no two non-adjacent edges intersect."""
    n = len(verts)
    for i in range(n):
        a1, a2 = verts[i], verts[(i + 1) % n]
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue
            if _segments_intersect(a1, a2, verts[j], verts[(j + 1) % n]):
                return False
    return True


def _is_convex_loop(pts: np.ndarray, eps: float = 1e-12) -> bool:
    n = len(pts)
    for i in range(n):
        a, b, c = pts[i], pts[(i + 1) % n], pts[(i + 2) % n]
        cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
        if cross < -eps:
            return False
    return True


def ear_clip(verts: np.ndarray) -> list[list[int]]:
    """Triangulate a simple CCW polygon; returns index triples."""
    n = len(verts)
    idx = list(range(n))
    triangles = []

    def cross_at(i):
        a, b, c = verts[idx[i - 1]], verts[idx[i]], verts[idx[(i + 1) % len(idx)]]
        return (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])

    def point_in_tri(p, a, b, c):
        d1 = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
        d2 = (c[0] - b[0]) * (p[1] - b[1]) - (c[1] - b[1]) * (p[0] - b[0])
        d3 = (a[0] - c[0]) * (p[1] - c[1]) - (a[1] - c[1]) * (p[0] - c[0])
        return d1 > 1e-12 and d2 > 1e-12 and d3 > 1e-12

    guard = 0
    while len(idx) > 3:
        guard += 1
        if guard > 10 * n * n:
            raise ValueError("ear clipping failed; polygon may be degenerate")
        clipped = False
        for i in range(len(idx)):
            if cross_at(i) <= 1e-12:
                continue
            a, b, c = verts[idx[i - 1]], verts[idx[i]], verts[idx[(i + 1) % len(idx)]]
            if any(
                point_in_tri(verts[idx[j]], a, b, c)
                for j in range(len(idx))
                if idx[j] not in (idx[i - 1], idx[i], idx[(i + 1) % len(idx)])
            ):
                continue
            triangles.append([idx[i - 1], idx[i], idx[(i + 1) % len(idx)]])
            del idx[i]
            clipped = True
            break
        if not clipped:
            raise ValueError("no ear found; polygon is not simple")
    triangles.append(list(idx))
    return triangles


def _merge_loops(loop1, loop2):
    """Join two CCW index loops across their single shared edge, or None."""
    edges2 = {(loop2[i], loop2[(i + 1) % len(loop2)]): i for i in range(len(loop2))}
    for i in range(len(loop1)):
        u, v = loop1[i], loop1[(i + 1) % len(loop1)]
        if (v, u) in edges2:
            j = edges2[(v, u)]
            path = [loop2[(j + 2 + k) % len(loop2)] for k in range(len(loop2) - 2)]
            return loop1[: i + 1] + path + loop1[i + 1 :]
    return None


def convex_decompose(verts: np.ndarray) -> list[np.ndarray]:
    """Split a simple CCW polygon into convex pieces (triangles greedily merged)."""
    verts = ensure_ccw(np.asarray(verts, dtype=float))
    if _is_convex_loop(verts):
        return [verts.copy()]
    loops = ear_clip(verts)
    merged = True
    while merged:
        merged = False
        for i in range(len(loops)):
            for j in range(i + 1, len(loops)):
                candidate = _merge_loops(loops[i], loops[j])
                if candidate is not None and _is_convex_loop(verts[candidate]):
                    loops[i] = candidate
                    del loops[j]
                    merged = True
                    break
            if merged:
                break
    return [verts[loop].copy() for loop in loops]


def edge_normals(verts: np.ndarray) -> np.ndarray:
    """Outward unit normals of a CCW convex polygon's edges."""
    edges = np.roll(verts, -1, axis=0) - verts
    normals = np.stack([edges[:, 1], -edges[:, 0]], axis=1)
    return normals / np.linalg.norm(normals, axis=1, keepdims=True)


def convex_overlap(a: np.ndarray, b: np.ndarray) -> bool:
    """SAT overlap test for two convex CCW polygons (touching counts as overlap)."""
    for axes in (edge_normals(a), edge_normals(b)):
        pa = a @ axes.T
        pb = b @ axes.T
        if np.any(pa.max(axis=0) < pb.min(axis=0)) or np.any(pb.max(axis=0) < pa.min(axis=0)):
            return False
    return True


def sat_separation(a: np.ndarray, b: np.ndarray) -> float:
    """Largest separating gap (positive) or SAT penetration estimate (negative)."""
    best = -math.inf
    for axes in (edge_normals(a), edge_normals(b)):
        pa = a @ axes.T
        pb = b @ axes.T
        gaps = np.maximum(pb.min(axis=0) - pa.max(axis=0), pa.min(axis=0) - pb.max(axis=0))
        best = max(best, float(gaps.max()))
    return best


def points_in_convex(points: np.ndarray, verts: np.ndarray, tol: float = 0.0) -> np.ndarray:
    """Boolean mask of points inside (or within tol of) a convex CCW polygon."""
    normals = edge_normals(verts)
    offsets = np.einsum("ij,ij->i", normals, verts)
    return np.all(points @ normals.T <= offsets + tol, axis=1)


def dist_points_to_convex(points: np.ndarray, verts: np.ndarray) -> np.ndarray:
    """Distance from each point to a convex polygon (0 inside)."""
    n = len(verts)
    starts = verts
    vecs = np.roll(verts, -1, axis=0) - verts
    lens2 = np.einsum("ij,ij->i", vecs, vecs)
    rel = points[:, None, :] - starts[None, :, :]
    t = np.clip(np.einsum("pek,ek->pe", rel, vecs) / lens2, 0.0, 1.0)
    closest = starts[None, :, :] + t[:, :, None] * vecs[None, :, :]
    d = np.linalg.norm(points[:, None, :] - closest, axis=2).min(axis=1)
    d[points_in_convex(points, verts)] = 0.0
    return d


def pose_matrices(poses: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Rotation matrices (n,2,2) and translations (n,2) from (x, y, theta) rows."""
    c, s = np.cos(poses[:, 2]), np.sin(poses[:, 2])
    rot = np.empty((len(poses), 2, 2))
    rot[:, 0, 0], rot[:, 0, 1] = c, -s
    rot[:, 1, 0], rot[:, 1, 1] = s, c
    return rot, poses[:, :2]


def transform_verts(local: np.ndarray, rot: np.ndarray, trans: np.ndarray) -> np.ndarray:
    """Posed copies of local vertices: (n, k, 2)."""
    return np.einsum("nij,kj->nki", rot, local) + trans[:, None, :]


class StaticConvex:
    """Precomputed projection data for one static convex obstacle piece."""

    def __init__(self, verts: np.ndarray):
        self.verts = ensure_ccw(np.asarray(verts, dtype=float))
        self.normals = edge_normals(self.verts)
        proj = self.verts @ self.normals.T
        self.proj_min = proj.min(axis=0)
        self.proj_max = proj.max(axis=0)


def batch_overlap_static(
    world_verts: np.ndarray, local_normals: np.ndarray, rot: np.ndarray, piece: StaticConvex
) -> np.ndarray:
    """Per-pose SAT overlap of posed convex vertices against a static piece.

    world_verts: (n, k, 2) posed robot vertices; local_normals: (e, 2) robot
    edge normals in the local frame; rot: (n, 2, 2) the pose rotations.
    """
    proj = np.einsum("nki,ei->nke", world_verts, piece.normals)
    sep = np.any(proj.max(axis=1) < piece.proj_min, axis=1) | np.any(
        proj.min(axis=1) > piece.proj_max, axis=1
    )
    live = ~sep
    if np.any(live):
        axes = np.einsum("nij,ej->nei", rot[live], local_normals)
        own = np.einsum("nki,nei->nke", world_verts[live], axes)
        other = np.einsum("nei,mi->nem", axes, piece.verts)
        gap = np.any(own.max(axis=1) < other.min(axis=2), axis=1) | np.any(
            own.min(axis=1) > other.max(axis=2), axis=1
        )
        upd = np.zeros_like(sep)
        upd[live] = gap
        sep |= upd
    return ~sep
