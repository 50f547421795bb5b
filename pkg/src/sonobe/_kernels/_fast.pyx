# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel implementations (twin of sonobe._kernels._pure)."""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()

BACKEND = "cython"

EPS_GEOM = 1e-9
EPS_BEYOND = 1e-6
EPS_AREA = 1e-8

cdef double C_EPS_AREA = 1e-8


# ---------------------------------------------------------------------------
# edge-length kernels


def edge_lengths(coords, edges):
    cdef double[:, ::1] c = np.ascontiguousarray(coords, dtype=np.float64)
    cdef int[:, ::1] e = np.ascontiguousarray(edges, dtype=np.int32)
    cdef Py_ssize_t ne = e.shape[0]
    out_arr = np.empty(ne, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t k
    cdef int a, b
    cdef double dx, dy, dz
    for k in range(ne):
        a = e[k, 0]
        b = e[k, 1]
        dx = c[a, 0] - c[b, 0]
        dy = c[a, 1] - c[b, 1]
        dz = c[a, 2] - c[b, 2]
        out[k] = sqrt(dx * dx + dy * dy + dz * dz)
    return out_arr


def edge_energy(coords, edges):
    cdef double[:, ::1] c = np.ascontiguousarray(coords, dtype=np.float64)
    cdef int[:, ::1] e = np.ascontiguousarray(edges, dtype=np.int32)
    cdef Py_ssize_t ne = e.shape[0]
    cdef Py_ssize_t k
    cdef int a, b
    cdef double dx, dy, dz, r, total = 0.0
    for k in range(ne):
        a = e[k, 0]
        b = e[k, 1]
        dx = c[a, 0] - c[b, 0]
        dy = c[a, 1] - c[b, 1]
        dz = c[a, 2] - c[b, 2]
        r = sqrt(dx * dx + dy * dy + dz * dz) - 1.0
        total += r * r
    return total


def energy_gradient(coords, edges):
    cdef double[:, ::1] c = np.ascontiguousarray(coords, dtype=np.float64)
    cdef int[:, ::1] e = np.ascontiguousarray(edges, dtype=np.int32)
    cdef Py_ssize_t ne = e.shape[0]
    grad_arr = np.zeros((c.shape[0], 3), dtype=np.float64)
    cdef double[:, ::1] g = grad_arr
    cdef Py_ssize_t k
    cdef int a, b
    cdef double dx, dy, dz, ln, w
    for k in range(ne):
        a = e[k, 0]
        b = e[k, 1]
        dx = c[a, 0] - c[b, 0]
        dy = c[a, 1] - c[b, 1]
        dz = c[a, 2] - c[b, 2]
        ln = sqrt(dx * dx + dy * dy + dz * dz)
        w = 2.0 * (ln - 1.0) / ln
        g[a, 0] += w * dx
        g[a, 1] += w * dy
        g[a, 2] += w * dz
        g[b, 0] -= w * dx
        g[b, 1] -= w * dy
        g[b, 2] -= w * dz
    return grad_arr


def residual_jacobian(coords, edges):
    cdef double[:, ::1] c = np.ascontiguousarray(coords, dtype=np.float64)
    cdef int[:, ::1] e = np.ascontiguousarray(edges, dtype=np.int32)
    cdef Py_ssize_t ne = e.shape[0]
    cdef Py_ssize_t nv = c.shape[0]
    r_arr = np.empty(ne, dtype=np.float64)
    j_arr = np.zeros((ne, 3 * nv), dtype=np.float64)
    cdef double[::1] r = r_arr
    cdef double[:, ::1] jac = j_arr
    cdef Py_ssize_t k
    cdef int a, b
    cdef double dx, dy, dz, ln
    for k in range(ne):
        a = e[k, 0]
        b = e[k, 1]
        dx = c[a, 0] - c[b, 0]
        dy = c[a, 1] - c[b, 1]
        dz = c[a, 2] - c[b, 2]
        ln = sqrt(dx * dx + dy * dy + dz * dz)
        r[k] = ln - 1.0
        jac[k, 3 * a] = dx / ln
        jac[k, 3 * a + 1] = dy / ln
        jac[k, 3 * a + 2] = dz / ln
        jac[k, 3 * b] = -dx / ln
        jac[k, 3 * b + 1] = -dy / ln
        jac[k, 3 * b + 2] = -dz / ln
    return r_arr, j_arr


# ---------------------------------------------------------------------------
# small vector helpers


cdef inline void _sub(const double* a, const double* b, double* out) noexcept nogil:
    out[0] = a[0] - b[0]
    out[1] = a[1] - b[1]
    out[2] = a[2] - b[2]


cdef inline double _dot(const double* a, const double* b) noexcept nogil:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


cdef inline void _cross(const double* a, const double* b, double* out) noexcept nogil:
    out[0] = a[1] * b[2] - a[2] * b[1]
    out[1] = a[2] * b[0] - a[0] * b[2]
    out[2] = a[0] * b[1] - a[1] * b[0]


cdef inline double _norm(const double* a) noexcept nogil:
    return sqrt(_dot(a, a))


# ---------------------------------------------------------------------------
# 2D convex clipping


cdef double _polygon_area(const double* xs, const double* ys, int n) noexcept nogil:
    cdef double s = 0.0
    cdef int i, j
    for i in range(n):
        j = (i + 1) % n
        s += xs[i] * ys[j] - xs[j] * ys[i]
    return 0.5 * s


cdef double _clip_area_c(double* ax, double* ay, double* bx, double* by) noexcept nogil:
    """Area of intersection; a and b are triangles, both oriented CCW."""
    cdef double px[16]
    cdef double py[16]
    cdef double qx[16]
    cdef double qy[16]
    cdef int n = 3, m, i, j, jm
    cdef double ex, ey, sp, sc, t
    for i in range(3):
        px[i] = ax[i]
        py[i] = ay[i]
    for i in range(3):
        if n == 0:
            return 0.0
        j = (i + 1) % 3
        ex = bx[j] - bx[i]
        ey = by[j] - by[i]
        m = 0
        for j in range(n):
            jm = (j - 1) % n
            if jm < 0:
                jm += n
            sp = ex * (py[jm] - by[i]) - ey * (px[jm] - bx[i])
            sc = ex * (py[j] - by[i]) - ey * (px[j] - bx[i])
            if sc >= 0.0:
                if sp < 0.0:
                    t = sp / (sp - sc)
                    qx[m] = px[jm] + t * (px[j] - px[jm])
                    qy[m] = py[jm] + t * (py[j] - py[jm])
                    m += 1
                qx[m] = px[j]
                qy[m] = py[j]
                m += 1
            elif sp >= 0.0:
                t = sp / (sp - sc)
                qx[m] = px[jm] + t * (px[j] - px[jm])
                qy[m] = py[jm] + t * (py[j] - py[jm])
                m += 1
        n = m
        for j in range(n):
            px[j] = qx[j]
            py[j] = qy[j]
    if n < 3:
        return 0.0
    return fabs(_polygon_area(px, py, n))


cdef double _tri_overlap_area_2d_c(double* ax, double* ay, double* bx, double* by) noexcept nogil:
    cdef double tmp
    if _polygon_area(ax, ay, 3) < 0.0:
        tmp = ax[1]; ax[1] = ax[2]; ax[2] = tmp
        tmp = ay[1]; ay[1] = ay[2]; ay[2] = tmp
    if _polygon_area(bx, by, 3) < 0.0:
        tmp = bx[1]; bx[1] = bx[2]; bx[2] = tmp
        tmp = by[1]; by[1] = by[2]; by[2] = tmp
    return _clip_area_c(ax, ay, bx, by)


def tri_overlap_area_2d(tri_a, tri_b):
    cdef double[:, ::1] a = np.ascontiguousarray(tri_a, dtype=np.float64)
    cdef double[:, ::1] b = np.ascontiguousarray(tri_b, dtype=np.float64)
    cdef double ax[3]
    cdef double ay[3]
    cdef double bx[3]
    cdef double by[3]
    cdef int i
    for i in range(3):
        ax[i] = a[i, 0]
        ay[i] = a[i, 1]
        bx[i] = b[i, 0]
        by[i] = b[i, 1]
    return _tri_overlap_area_2d_c(ax, ay, bx, by)


# ---------------------------------------------------------------------------
# triangle-triangle penetration predicate


cdef bint _point_in_tri_c(const double* x, const double* t0, const double* t1,
                          const double* t2, const double* n, double eps) noexcept nogil:
    cdef double e[3]
    cdef double v[3]
    cdef double c[3]
    _sub(t1, t0, e)
    _sub(x, t0, v)
    _cross(e, v, c)
    if _dot(c, n) < -eps:
        return False
    _sub(t2, t1, e)
    _sub(x, t1, v)
    _cross(e, v, c)
    if _dot(c, n) < -eps:
        return False
    _sub(t0, t2, e)
    _sub(x, t2, v)
    _cross(e, v, c)
    if _dot(c, n) < -eps:
        return False
    return True


cdef int _witnesses_c(const double* tri, const double* d, const double* other,
                      const double* n_other, double eps, double* out, int count) noexcept nogil:
    cdef int i, j, k
    cdef double di, dj, t
    cdef double x[3]
    for i in range(3):
        j = (i + 1) % 3
        di = d[i]
        dj = d[j]
        if (di > eps and dj < -eps) or (di < -eps and dj > eps):
            t = di / (di - dj)
            for k in range(3):
                x[k] = tri[3 * i + k] + t * (tri[3 * j + k] - tri[3 * i + k])
            if _point_in_tri_c(x, other, other + 3, other + 6, n_other, eps):
                out[3 * count] = x[0]
                out[3 * count + 1] = x[1]
                out[3 * count + 2] = x[2]
                count += 1
    return count


cdef double _dist_point_segment_c(const double* p, const double* a, const double* b) noexcept nogil:
    cdef double ab[3]
    cdef double v[3]
    cdef double t, denom
    cdef int k
    _sub(b, a, ab)
    denom = _dot(ab, ab)
    if denom < 1e-30:
        _sub(p, a, v)
        return _norm(v)
    _sub(p, a, v)
    t = _dot(v, ab) / denom
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    for k in range(3):
        v[k] = p[k] - (a[k] + t * ab[k])
    return _norm(v)


cdef bint _coplanar_overlap_c(const double* A, const double* B, const double* n) noexcept nogil:
    cdef double u[3]
    cdef double w[3]
    cdef double v[3]
    cdef double ax[3]
    cdef double ay[3]
    cdef double bx[3]
    cdef double by[3]
    cdef double ln
    cdef int i
    _sub(B + 3, B, u)
    ln = _norm(u)
    if ln < 1e-14:
        return False
    for i in range(3):
        u[i] /= ln
    _cross(n, u, w)
    for i in range(3):
        _sub(A + 3 * i, B, v)
        ax[i] = _dot(v, u)
        ay[i] = _dot(v, w)
        _sub(B + 3 * i, B, v)
        bx[i] = _dot(v, u)
        by[i] = _dot(v, w)
    return _tri_overlap_area_2d_c(ax, ay, bx, by) > C_EPS_AREA


cdef bint _collide_one_c(const double* A, const double* B, const int* ia,
                         const int* ib, double eps, double beyond) noexcept nogil:
    cdef int shared_a[3]
    cdef int n_shared = 0
    cdef int i, j, k
    cdef double na[3]
    cdef double nb[3]
    cdef double e1[3]
    cdef double e2[3]
    cdef double v[3]
    cdef double da[3]
    cdef double db[3]
    cdef double wit[18]
    cdef int n_wit = 0
    cdef double ln, dist
    cdef bint all_cop, all_pos, all_neg

    for i in range(3):
        for j in range(3):
            if ia[i] >= 0 and ia[i] == ib[j]:
                if n_shared < 3:
                    shared_a[n_shared] = i
                n_shared += 1
    if n_shared >= 3:
        return False

    _sub(B + 3, B, e1)
    _sub(B + 6, B, e2)
    _cross(e1, e2, nb)
    ln = _norm(nb)
    if ln < 1e-14:
        return False
    for k in range(3):
        nb[k] /= ln
    _sub(A + 3, A, e1)
    _sub(A + 6, A, e2)
    _cross(e1, e2, na)
    ln = _norm(na)
    if ln < 1e-14:
        return False
    for k in range(3):
        na[k] /= ln

    for i in range(3):
        _sub(A + 3 * i, B, v)
        da[i] = _dot(v, nb)
    all_cop = True
    all_pos = True
    all_neg = True
    for i in range(3):
        if fabs(da[i]) > eps:
            all_cop = False
        if da[i] <= eps:
            all_pos = False
        if da[i] >= -eps:
            all_neg = False
    if all_cop:
        return _coplanar_overlap_c(A, B, nb)
    if all_pos or all_neg:
        return False
    for i in range(3):
        _sub(B + 3 * i, A, v)
        db[i] = _dot(v, na)
    all_pos = True
    all_neg = True
    for i in range(3):
        if db[i] <= eps:
            all_pos = False
        if db[i] >= -eps:
            all_neg = False
    if all_pos or all_neg:
        return False

    n_wit = _witnesses_c(A, da, B, nb, eps, wit, n_wit)
    n_wit = _witnesses_c(B, db, A, na, eps, wit, n_wit)
    if n_wit == 0:
        return False
    if n_shared == 0:
        return True
    if n_shared == 1:
        for k in range(n_wit):
            _sub(wit + 3 * k, A + 3 * shared_a[0], v)
            if _norm(v) > beyond:
                return True
        return False
    for k in range(n_wit):
        dist = _dist_point_segment_c(wit + 3 * k, A + 3 * shared_a[0],
                                     A + 3 * shared_a[1])
        if dist > beyond:
            return True
    return False


def tri_pair_collides(tri_a, tri_b, ids_a, ids_b, double eps=EPS_GEOM,
                      double beyond=EPS_BEYOND):
    cdef double[:, ::1] a = np.ascontiguousarray(tri_a, dtype=np.float64)
    cdef double[:, ::1] b = np.ascontiguousarray(tri_b, dtype=np.float64)
    cdef int[::1] ia = np.ascontiguousarray(ids_a, dtype=np.int32)
    cdef int[::1] ib = np.ascontiguousarray(ids_b, dtype=np.int32)
    return bool(_collide_one_c(&a[0, 0], &b[0, 0], &ia[0], &ib[0], eps, beyond))


def collide_pairs(tris, vids, pairs, double eps=EPS_GEOM, double beyond=EPS_BEYOND):
    cdef double[:, :, ::1] t = np.ascontiguousarray(tris, dtype=np.float64)
    cdef int[:, ::1] v = np.ascontiguousarray(vids, dtype=np.int32)
    cdef int[:, ::1] p = np.ascontiguousarray(pairs, dtype=np.int32)
    cdef Py_ssize_t n = p.shape[0]
    out_arr = np.zeros(n, dtype=bool)
    cdef cnp.uint8_t[::1] out = out_arr.view(np.uint8)
    cdef Py_ssize_t k
    cdef int i, j
    for k in range(n):
        i = p[k, 0]
        j = p[k, 1]
        out[k] = _collide_one_c(&t[i, 0, 0], &t[j, 0, 0], &v[i, 0], &v[j, 0],
                                eps, beyond)
    return out_arr
