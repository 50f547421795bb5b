"""Pure-Python kernel implementations.

Mirrors the compiled extension in sonobe._kernels._fast; both expose the
same functions with identical semantics so the backend can be swapped at
import time.  Tolerances are absolute and assume unit-edge scale.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

# On-plane / inside band for the intersection predicates.
EPS_GEOM = 1e-9
# A witness point farther than this from the shared simplex counts as
# penetration rather than contact noise.
EPS_BEYOND = 1e-6
# 2D overlap area below this is contact along an edge or vertex, not overlap.
EPS_AREA = 1e-8


# ---------------------------------------------------------------------------
# edge-length kernels


def edge_lengths(coords: np.ndarray, edges: np.ndarray) -> np.ndarray:
    d = coords[edges[:, 0]] - coords[edges[:, 1]]
    return np.sqrt(np.einsum("ij,ij->i", d, d))


def edge_energy(coords: np.ndarray, edges: np.ndarray) -> float:
    r = edge_lengths(coords, edges) - 1.0
    return float(r @ r)


def energy_gradient(coords: np.ndarray, edges: np.ndarray) -> np.ndarray:
    """Exact gradient of edge_energy.  Caller guarantees no zero-length edge."""
    a = edges[:, 0]
    b = edges[:, 1]
    d = coords[a] - coords[b]
    ln = np.sqrt(np.einsum("ij,ij->i", d, d))
    w = (2.0 * (ln - 1.0) / ln)[:, None] * d
    g = np.zeros_like(coords)
    np.add.at(g, a, w)
    np.add.at(g, b, -w)
    return g


def residual_jacobian(coords: np.ndarray, edges: np.ndarray):
    """Residuals (length - 1) and the dense Jacobian wrt flattened coords."""
    nv = coords.shape[0]
    ne = edges.shape[0]
    a = edges[:, 0]
    b = edges[:, 1]
    d = coords[a] - coords[b]
    ln = np.sqrt(np.einsum("ij,ij->i", d, d))
    u = d / ln[:, None]
    jac = np.zeros((ne, 3 * nv))
    rows = np.arange(ne)
    for k in range(3):
        jac[rows, 3 * a + k] = u[:, k]
        jac[rows, 3 * b + k] = -u[:, k]
    return ln - 1.0, jac


# ---------------------------------------------------------------------------
# 2D convex clipping


def _signed_area(poly) -> float:
    s = 0.0
    n = len(poly)
    for i in range(n):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return 0.5 * s


def _clip_convex(subject, clip):
    """Sutherland-Hodgman: clip polygon `subject` by CCW convex `clip`."""
    poly = list(subject)
    n = len(clip)
    for i in range(n):
        if not poly:
            return poly
        ax, ay = clip[i]
        bx, by = clip[(i + 1) % n]
        ex, ey = bx - ax, by - ay
        out = []
        m = len(poly)
        for j in range(m):
            px, py = poly[j - 1]
            cx, cy = poly[j]
            sp = ex * (py - ay) - ey * (px - ax)
            sc = ex * (cy - ay) - ey * (cx - ax)
            if sc >= 0.0:
                if sp < 0.0:
                    t = sp / (sp - sc)
                    out.append((px + t * (cx - px), py + t * (cy - py)))
                out.append((cx, cy))
            elif sp >= 0.0:
                t = sp / (sp - sc)
                out.append((px + t * (cx - px), py + t * (cy - py)))
        poly = out
    return poly


def tri_overlap_area_2d(tri_a: np.ndarray, tri_b: np.ndarray) -> float:
    """Area of the intersection of two 2D triangles ((3,2) arrays)."""
    a = [(float(p[0]), float(p[1])) for p in tri_a]
    b = [(float(p[0]), float(p[1])) for p in tri_b]
    if _signed_area(a) < 0.0:
        a.reverse()
    if _signed_area(b) < 0.0:
        b.reverse()
    poly = _clip_convex(a, b)
    if len(poly) < 3:
        return 0.0
    return abs(_signed_area(poly))


# ---------------------------------------------------------------------------
# triangle-triangle penetration predicate


def _unit_normal(tri):
    n = np.cross(tri[1] - tri[0], tri[2] - tri[0])
    ln = float(np.linalg.norm(n))
    if ln < 1e-14:
        return None
    return n / ln


def _point_in_tri(x, tri, n, eps) -> bool:
    for i in range(3):
        j = (i + 1) % 3
        if float(np.dot(np.cross(tri[j] - tri[i], x - tri[i]), n)) < -eps:
            return False
    return True


def _crossing_witnesses(tri, dists, other, n_other, eps, out) -> None:
    # Strict sign changes only: grazing endpoints (|d| <= eps) are contact.
    for i in range(3):
        j = (i + 1) % 3
        di = dists[i]
        dj = dists[j]
        if (di > eps and dj < -eps) or (di < -eps and dj > eps):
            t = di / (di - dj)
            x = tri[i] + t * (tri[j] - tri[i])
            if _point_in_tri(x, other, n_other, eps):
                out.append(x)


def _coplanar_overlap(tri_a, tri_b, n) -> float:
    base = tri_b[0]
    u = tri_b[1] - tri_b[0]
    u = u / np.linalg.norm(u)
    w = np.cross(n, u)
    pa = np.stack([((p - base) @ u, (p - base) @ w) for p in tri_a])
    pb = np.stack([((p - base) @ u, (p - base) @ w) for p in tri_b])
    return tri_overlap_area_2d(pa, pb)


def _dist_point_segment(p, a, b) -> float:
    ab = b - a
    denom = float(ab @ ab)
    if denom < 1e-30:
        return float(np.linalg.norm(p - a))
    t = float((p - a) @ ab) / denom
    t = min(1.0, max(0.0, t))
    return float(np.linalg.norm(p - (a + t * ab)))


def tri_pair_collides(tri_a, tri_b, ids_a, ids_b,
                      eps: float = EPS_GEOM, beyond: float = EPS_BEYOND) -> bool:
    """True if the triangles intersect beyond their shared simplex.

    Sharing is decided by vertex ids, not coordinates.  Pairs sharing an
    edge collide only when coplanar and folded onto the same side; pairs
    sharing one vertex collide when a transversal crossing point lies
    farther than `beyond` from that vertex; disjoint pairs collide on any
    transversal crossing.  Contact within tolerance never counts.
    """
    tri_a = np.asarray(tri_a, dtype=float)
    tri_b = np.asarray(tri_b, dtype=float)
    shared = [(i, j) for i in range(3) for j in range(3)
              if ids_a[i] >= 0 and ids_a[i] == ids_b[j]]
    if len(shared) >= 3:
        return False

    nb = _unit_normal(tri_b)
    na = _unit_normal(tri_a)
    if nb is None or na is None:
        return False

    da = np.array([float((tri_a[i] - tri_b[0]) @ nb) for i in range(3)])
    if np.all(np.abs(da) <= eps):
        return _coplanar_overlap(tri_a, tri_b, nb) > EPS_AREA
    if np.all(da > eps) or np.all(da < -eps):
        return False
    db = np.array([float((tri_b[i] - tri_a[0]) @ na) for i in range(3)])
    if np.all(db > eps) or np.all(db < -eps):
        return False

    witnesses = []
    _crossing_witnesses(tri_a, da, tri_b, nb, eps, witnesses)
    _crossing_witnesses(tri_b, db, tri_a, na, eps, witnesses)
    if not witnesses:
        return False
    if not shared:
        return True
    if len(shared) == 1:
        s = tri_a[shared[0][0]]
        return any(float(np.linalg.norm(w - s)) > beyond for w in witnesses)
    p0 = tri_a[shared[0][0]]
    p1 = tri_a[shared[1][0]]
    return any(_dist_point_segment(w, p0, p1) > beyond for w in witnesses)


def collide_pairs(tris, vids, pairs, eps: float = EPS_GEOM,
                  beyond: float = EPS_BEYOND) -> np.ndarray:
    """Evaluate tri_pair_collides for each (i, j) row of `pairs`."""
    tris = np.asarray(tris, dtype=float)
    vids = np.asarray(vids)
    out = np.zeros(len(pairs), dtype=bool)
    for k, (i, j) in enumerate(pairs):
        out[k] = tri_pair_collides(tris[i], tris[j], vids[i], vids[j], eps, beyond)
    return out
