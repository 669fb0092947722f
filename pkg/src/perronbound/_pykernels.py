"""Pure-Python numerical kernels.

Reference twin of the compiled ``_kernels`` module: same function names,
same arguments, same arithmetic. Used when the extension is not built or
when ``PERRONBOUND_PURE=1`` is set.
"""

import math

import numpy as np

STATUS_OK = 0
STATUS_MAIN_STALLED = 1
STATUS_DELETED_STALLED = 2
STATUS_NOT_SPD = 3


def power_iteration(a, tol, max_iter):
    """Power iteration on ``a + I`` from the normalized all-ones vector.

    Returns ``(rho, x, iterations, residual, converged)`` where ``rho`` is the
    Rayleigh quotient of ``a`` (not of the shifted matrix) and ``residual`` is
    ``max|a x - rho x|`` for the returned ``x``.
    """
    a = np.ascontiguousarray(a, dtype=np.float64)
    n = a.shape[0]
    x = np.full(n, 1.0 / math.sqrt(n))
    rho = 0.0
    r = math.inf
    for it in range(1, max_iter + 1):
        y = a @ x
        rho = float(x @ y)
        r = float(np.max(np.abs(y - rho * x)))
        if r <= tol:
            return rho, x, it, r, True
        y += x
        x = y / math.sqrt(float(y @ y))
    return rho, x, max_iter, r, False


def jacobi_eigh(a, tol=1e-13, max_sweeps=50):
    """Cyclic Jacobi rotations until every off-diagonal magnitude is <= tol.

    Returns ``(eigenvalues, eigenvectors, sweeps, converged)``; eigenvalues
    come back unsorted, eigenvectors as columns.
    """
    a = np.array(a, dtype=np.float64)
    n = a.shape[0]
    v = np.eye(n)
    for sweep in range(max_sweeps + 1):
        off = np.max(np.abs(np.triu(a, 1))) if n > 1 else 0.0
        if off <= tol:
            return np.diag(a).copy(), v, sweep, True
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                cp = a[:, p].copy()
                cq = a[:, q]
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                rp = a[p, :].copy()
                rq = a[q, :]
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    return np.diag(a).copy(), v, max_sweeps, False


def cholesky_solve(m, b):
    """Solve ``m y = b`` for symmetric positive-definite ``m`` via Cholesky.

    Raises ``ValueError`` on a non-positive pivot.
    """
    m = np.asarray(m, dtype=np.float64)
    n = m.shape[0]
    low = np.zeros((n, n))
    for j in range(n):
        s = m[j, j] - low[j, :j] @ low[j, :j]
        if s <= 0.0:
            raise ValueError(f"matrix is not positive definite (pivot {j} = {s:.3e})")
        d = math.sqrt(s)
        low[j, j] = d
        for i in range(j + 1, n):
            low[i, j] = (m[i, j] - low[i, :j] @ low[j, :j]) / d
    y = np.array(b, dtype=np.float64)
    for i in range(n):
        y[i] = (y[i] - low[i, :i] @ y[:i]) / low[i, i]
    for i in range(n - 1, -1, -1):
        y[i] = (y[i] - low[i + 1:, i] @ y[i + 1:]) / low[i, i]
    return y


def _pairs(n):
    # column order (0,1),(0,2),(1,2),(0,3),...
    return [(i, j) for j in range(1, n) for i in range(j)]


def _rows_from_mask(n, pairs, mask):
    rows = [0] * n
    for k, (i, j) in enumerate(pairs):
        if mask >> k & 1:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    return rows


def _components(rows, alive):
    comps = []
    while alive:
        comp = frontier = alive & -alive
        while frontier:
            bit = frontier & -frontier
            frontier ^= bit
            new = rows[bit.bit_length() - 1] & alive & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        alive &= ~comp
    return comps


def connected_masks(n):
    """Edge bitmasks of every connected labelled graph on ``n`` vertices, ascending."""
    pairs = _pairs(n)
    full = (1 << n) - 1
    out = []
    for mask in range(1 << len(pairs)):
        rows = _rows_from_mask(n, pairs, mask)
        if len(_components(rows, full)) == 1:
            out.append(mask)
    return np.array(out, dtype=np.int64)


def analyze_masks(n, masks, tol, max_iter):
    """Eigenpair, vertex-deleted radii and Tao-Vu norms for a batch of graphs.

    Returns arrays ``(rho, x, rho_del, t1, iterations, residual, status)``
    where ``t1[g, v] = ||(rho I - B_v)^{-1} b_v||^2``.
    """
    masks = np.asarray(masks, dtype=np.int64)
    count = masks.shape[0]
    pairs = _pairs(n)
    full = (1 << n) - 1
    rho = np.zeros(count)
    xs = np.zeros((count, n))
    rho_del = np.zeros((count, n))
    t1 = np.zeros((count, n))
    iters = np.zeros(count, dtype=np.int64)
    res = np.zeros(count)
    status = np.zeros(count, dtype=np.int8)
    for g in range(count):
        rows = _rows_from_mask(n, pairs, int(masks[g]))
        a = np.zeros((n, n))
        for i in range(n):
            for j in range(n):
                if rows[i] >> j & 1:
                    a[i, j] = 1.0
        r, x, it, resid, ok = power_iteration(a, tol, max_iter)
        rho[g], xs[g], iters[g], res[g] = r, x, it, resid
        if not ok:
            status[g] = STATUS_MAIN_STALLED
            continue
        for v in range(n):
            alive = full & ~(1 << v)
            best = 0.0
            for comp in _components(rows, alive):
                members = [u for u in range(n) if comp >> u & 1]
                if len(members) < 2:
                    continue
                rc, _, _, _, okc = power_iteration(a[np.ix_(members, members)], tol, max_iter)
                if not okc:
                    status[g] = STATUS_DELETED_STALLED
                best = max(best, rc)
            rho_del[g, v] = best
            if r <= best + 1e-12:
                status[g] = STATUS_NOT_SPD
                continue
            others = [u for u in range(n) if u != v]
            m = -a[np.ix_(others, others)]
            m[np.diag_indices_from(m)] += r
            try:
                y = cholesky_solve(m, a[v, others])
            except ValueError:
                status[g] = STATUS_NOT_SPD
                continue
            t1[g, v] = float(y @ y)
    return rho, xs, rho_del, t1, iters, res, status
