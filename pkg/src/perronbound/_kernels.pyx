# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled numerical kernels; twin of ``_pykernels`` with identical semantics."""

import numpy as np

from libc.math cimport sqrt, fabs, copysign, INFINITY
from libc.stdint cimport int64_t, uint64_t

cdef enum:
    MAXN = 16
    _MAIN_STALLED = 1
    _DELETED_STALLED = 2
    _NOT_SPD = 3

STATUS_OK = 0
STATUS_MAIN_STALLED = 1
STATUS_DELETED_STALLED = 2
STATUS_NOT_SPD = 3


cdef long _power(const double* a, int n, double* x, double* y, double tol,
                 long max_iter, double* rho_out, double* res_out) noexcept nogil:
    # >0: iterations to convergence; <0: stalled after -result iterations
    cdef int i, j
    cdef long it
    cdef double s, rho = 0.0, r = INFINITY, d, nrm
    s = 1.0 / sqrt(<double>n)
    for i in range(n):
        x[i] = s
    for it in range(1, max_iter + 1):
        for i in range(n):
            s = 0.0
            for j in range(n):
                s = s + a[i * n + j] * x[j]
            y[i] = s
        rho = 0.0
        for i in range(n):
            rho = rho + x[i] * y[i]
        r = 0.0
        for i in range(n):
            d = fabs(y[i] - rho * x[i])
            if d > r:
                r = d
        if r <= tol:
            rho_out[0] = rho
            res_out[0] = r
            return it
        nrm = 0.0
        for i in range(n):
            y[i] = y[i] + x[i]
            nrm = nrm + y[i] * y[i]
        nrm = 1.0 / sqrt(nrm)
        for i in range(n):
            x[i] = y[i] * nrm
    rho_out[0] = rho
    res_out[0] = r
    return -max_iter


cdef int _chol_solve(double* m, int n, double* b) noexcept nogil:
    # m is overwritten by its Cholesky factor, b by the solution
    cdef int i, j, k
    cdef double s, d
    for j in range(n):
        s = m[j * n + j]
        for k in range(j):
            s = s - m[j * n + k] * m[j * n + k]
        if s <= 0.0:
            return -1 - j
        d = sqrt(s)
        m[j * n + j] = d
        for i in range(j + 1, n):
            s = m[i * n + j]
            for k in range(j):
                s = s - m[i * n + k] * m[j * n + k]
            m[i * n + j] = s / d
    for i in range(n):
        s = b[i]
        for k in range(i):
            s = s - m[i * n + k] * b[k]
        b[i] = s / m[i * n + i]
    for i in range(n - 1, -1, -1):
        s = b[i]
        for k in range(i + 1, n):
            s = s - m[k * n + i] * b[k]
        b[i] = s / m[i * n + i]
    return 0


cdef inline uint64_t _component_of(const uint64_t* rows, uint64_t alive) noexcept nogil:
    # component of the lowest set bit of alive, restricted to alive
    cdef uint64_t comp = alive & (~alive + 1)
    cdef uint64_t frontier = comp, bit, new
    cdef int idx
    while frontier:
        bit = frontier & (~frontier + 1)
        frontier ^= bit
        idx = 0
        while (bit >> idx) != 1:
            idx += 1
        new = rows[idx] & alive & ~comp
        comp |= new
        frontier |= new
    return comp


def power_iteration(a, double tol, long max_iter):
    """Power iteration on ``a + I`` from the normalized all-ones vector.

    Returns ``(rho, x, iterations, residual, converged)``.
    """
    cdef const double[:, ::1] am = np.ascontiguousarray(a, dtype=np.float64)
    cdef int n = am.shape[0]
    x = np.empty(n)
    y = np.empty(n)
    cdef double[::1] xv = x
    cdef double[::1] yv = y
    cdef double rho = 0.0, res = 0.0
    cdef long it
    with nogil:
        it = _power(&am[0, 0], n, &xv[0], &yv[0], tol, max_iter, &rho, &res)
    if it > 0:
        return rho, x, it, res, True
    return rho, x, -it, res, False


def jacobi_eigh(a, double tol=1e-13, int max_sweeps=50):
    """Cyclic Jacobi rotations until every off-diagonal magnitude is <= tol.

    Returns ``(eigenvalues, eigenvectors, sweeps, converged)``; eigenvalues
    unsorted, eigenvectors as columns.
    """
    w = np.array(a, dtype=np.float64, order="C")
    v = np.eye(w.shape[0])
    cdef double[:, ::1] am = w
    cdef double[:, ::1] vm = v
    cdef int n = am.shape[0]
    cdef int p, q, k, sweep = 0
    cdef double off, apq, theta, t, c, s, x1, x2
    cdef bint converged = False
    with nogil:
        while True:
            off = 0.0
            for p in range(n - 1):
                for q in range(p + 1, n):
                    if fabs(am[p, q]) > off:
                        off = fabs(am[p, q])
            if off <= tol:
                converged = True
                break
            if sweep == max_sweeps:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = am[p, q]
                    if apq == 0.0:
                        continue
                    theta = (am[q, q] - am[p, p]) / (2.0 * apq)
                    if fabs(theta) > 1e150:
                        t = 0.5 / theta
                    else:
                        t = copysign(1.0, theta) / (fabs(theta) + sqrt(theta * theta + 1.0))
                    c = 1.0 / sqrt(t * t + 1.0)
                    s = t * c
                    for k in range(n):
                        x1 = am[k, p]
                        x2 = am[k, q]
                        am[k, p] = c * x1 - s * x2
                        am[k, q] = s * x1 + c * x2
                    for k in range(n):
                        x1 = am[p, k]
                        x2 = am[q, k]
                        am[p, k] = c * x1 - s * x2
                        am[q, k] = s * x1 + c * x2
                    am[p, q] = 0.0
                    am[q, p] = 0.0
                    for k in range(n):
                        x1 = vm[k, p]
                        x2 = vm[k, q]
                        vm[k, p] = c * x1 - s * x2
                        vm[k, q] = s * x1 + c * x2
            sweep += 1
    return np.diag(w).copy(), v, sweep, bool(converged)


def cholesky_solve(m, b):
    """Solve ``m y = b`` for symmetric positive-definite ``m`` via Cholesky.

    Raises ``ValueError`` on a non-positive pivot.
    """
    cdef double[:, ::1] mm = np.array(m, dtype=np.float64, order="C")
    y = np.array(b, dtype=np.float64)
    cdef double[::1] yv = y
    cdef int n = mm.shape[0]
    cdef int rc
    if n == 0:
        return y
    with nogil:
        rc = _chol_solve(&mm[0, 0], n, &yv[0])
    if rc != 0:
        raise ValueError(f"matrix is not positive definite (pivot {-rc - 1})")
    return y


cdef void _rows_from_mask(int n, uint64_t mask, uint64_t* rows) noexcept nogil:
    cdef int i, j, k = 0
    for i in range(n):
        rows[i] = 0
    for j in range(1, n):
        for i in range(j):
            if (mask >> k) & 1:
                rows[i] |= (<uint64_t>1) << j
                rows[j] |= (<uint64_t>1) << i
            k += 1


def connected_masks(int n):
    """Edge bitmasks of every connected labelled graph on ``n`` vertices, ascending."""
    if n < 1 or n > 11:
        raise ValueError("mask enumeration supports 1 <= n <= 11")
    cdef int m = n * (n - 1) // 2
    cdef uint64_t total = (<uint64_t>1) << m
    cdef uint64_t full = ((<uint64_t>1) << n) - 1
    cdef uint64_t mask
    cdef uint64_t rows[MAXN]
    cdef int64_t count = 0
    with nogil:
        for mask in range(total):
            _rows_from_mask(n, mask, rows)
            if _component_of(rows, full) == full:
                count += 1
    out = np.empty(count, dtype=np.int64)
    cdef int64_t[::1] ov = out
    cdef int64_t pos = 0
    with nogil:
        for mask in range(total):
            _rows_from_mask(n, mask, rows)
            if _component_of(rows, full) == full:
                ov[pos] = <int64_t>mask
                pos += 1
    return out


def analyze_masks(int n, masks, double tol, long max_iter):
    """Eigenpair, vertex-deleted radii and Tao-Vu norms for a batch of graphs.

    Returns arrays ``(rho, x, rho_del, t1, iterations, residual, status)``
    where ``t1[g, v] = ||(rho I - B_v)^{-1} b_v||^2``.
    """
    if n < 1 or n > 11:
        raise ValueError("mask analysis supports 1 <= n <= 11")
    cdef const int64_t[::1] mv = np.ascontiguousarray(masks, dtype=np.int64)
    cdef Py_ssize_t count = mv.shape[0]
    rho_a = np.zeros(count)
    x_a = np.zeros((count, n))
    del_a = np.zeros((count, n))
    t1_a = np.zeros((count, n))
    it_a = np.zeros(count, dtype=np.int64)
    res_a = np.zeros(count)
    st_a = np.zeros(count, dtype=np.int8)
    cdef double[::1] rho_v = rho_a
    cdef double[:, ::1] x_v = x_a
    cdef double[:, ::1] del_v = del_a
    cdef double[:, ::1] t1_v = t1_a
    cdef int64_t[::1] it_v = it_a
    cdef double[::1] res_v = res_a
    cdef signed char[::1] st_v = st_a

    cdef double a[MAXN * MAXN]
    cdef double sub[MAXN * MAXN]
    cdef double x[MAXN]
    cdef double y[MAXN]
    cdef double b[MAXN]
    cdef uint64_t rows[MAXN]
    cdef int members[MAXN]
    cdef uint64_t full = ((<uint64_t>1) << n) - 1
    cdef uint64_t alive, comp
    cdef Py_ssize_t g
    cdef int i, j, v, k, ii, jj, size, nn
    cdef long it
    cdef double rho, res, rc, rcres, best, s

    with nogil:
        for g in range(count):
            _rows_from_mask(n, <uint64_t>mv[g], rows)
            for i in range(n):
                for j in range(n):
                    a[i * n + j] = 1.0 if (rows[i] >> j) & 1 else 0.0
            it = _power(a, n, x, y, tol, max_iter, &rho, &res)
            rho_v[g] = rho
            res_v[g] = res
            for i in range(n):
                x_v[g, i] = x[i]
            if it < 0:
                it_v[g] = -it
                st_v[g] = _MAIN_STALLED
                continue
            it_v[g] = it
            for v in range(n):
                alive = full & ~((<uint64_t>1) << v)
                best = 0.0
                while alive:
                    comp = _component_of(rows, alive)
                    alive &= ~comp
                    size = 0
                    for i in range(n):
                        if (comp >> i) & 1:
                            members[size] = i
                            size += 1
                    if size < 2:
                        continue
                    for ii in range(size):
                        for jj in range(size):
                            sub[ii * size + jj] = a[members[ii] * n + members[jj]]
                    if _power(sub, size, b, y, tol, max_iter, &rc, &rcres) < 0:
                        st_v[g] = _DELETED_STALLED
                    if rc > best:
                        best = rc
                del_v[g, v] = best
                if rho <= best + 1e-12:
                    st_v[g] = _NOT_SPD
                    continue
                nn = n - 1
                ii = 0
                for i in range(n):
                    if i == v:
                        continue
                    jj = 0
                    for j in range(n):
                        if j == v:
                            continue
                        sub[ii * nn + jj] = (rho if i == j else 0.0) - a[i * n + j]
                        jj += 1
                    b[ii] = a[v * n + i]
                    ii += 1
                if _chol_solve(sub, nn, b) != 0:
                    st_v[g] = _NOT_SPD
                    continue
                s = 0.0
                for i in range(nn):
                    s = s + b[i] * b[i]
                t1_v[g, v] = s
    return rho_a, x_a, del_a, t1_a, it_a, res_a, st_a
