"""Both kernel backends against numpy/LAPACK and against each other."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from perronbound import _pykernels, kernels
from perronbound.generators import graph_from_mask, named_graph, random_connected

from conftest import connected_graphs


def test_selected_backend_is_importable():
    assert kernels.BACKEND in kernels.backends()


def test_compiled_backend_built():
    # the extension ships with the package; a silent fallback would hide a broken build
    assert "compiled" in kernels.backends()


@given(connected_graphs(max_n=10))
@settings(max_examples=60)
def test_power_iteration_vs_lapack(g):
    a = g.adjacency_matrix()
    for impl in kernels.backends().values():
        rho, x, it, res, ok = impl.power_iteration(a, 1e-12, 10**6)
        assert ok and res <= 1e-12 and it >= 1
        assert rho == pytest.approx(np.linalg.eigvalsh(a)[-1], abs=1e-10)
        assert np.all(x > 0) and np.linalg.norm(x) == pytest.approx(1.0, abs=1e-12)


def test_power_iteration_reports_stall(backend):
    a = random_connected(20, 0.3, 4).adjacency_matrix()
    rho, x, it, res, ok = backend.power_iteration(a, 1e-12, 3)
    assert not ok and it == 3 and res > 1e-12


def test_power_iteration_bipartite_converges(backend):
    # unshifted iteration would oscillate between +rho and -rho here
    for g in (named_graph("cycle", 10), named_graph("path", 9), named_graph("star", 8)):
        rho, x, it, res, ok = backend.power_iteration(g.adjacency_matrix(), 1e-12, 10**6)
        assert ok and rho > 0


@given(st.integers(1, 12), st.integers(0, 2**31 - 1))
@settings(max_examples=40)
def test_jacobi_vs_lapack(n, seed):
    rng = np.random.default_rng(seed)
    m = rng.normal(size=(n, n))
    m = m + m.T
    for impl in kernels.backends().values():
        evals, evecs, sweeps, ok = impl.jacobi_eigh(m, 1e-13, 50)
        assert ok
        assert np.allclose(np.sort(evals), np.linalg.eigvalsh(m), atol=1e-10)
        assert np.allclose(evecs.T @ evecs, np.eye(n), atol=1e-12)
        assert np.allclose(m @ evecs, evecs * evals, atol=1e-10)


def test_jacobi_sweep_cap(backend):
    m = random_connected(12, 0.5, 1).adjacency_matrix()
    *_, ok = backend.jacobi_eigh(m, 1e-13, 0)
    assert not ok


@given(st.integers(1, 15), st.integers(0, 2**31 - 1))
@settings(max_examples=40)
def test_cholesky_vs_lapack(n, seed):
    rng = np.random.default_rng(seed)
    q = rng.normal(size=(n, n))
    m = q @ q.T + n * np.eye(n)
    b = rng.normal(size=n)
    for impl in kernels.backends().values():
        assert np.allclose(impl.cholesky_solve(m, b), np.linalg.solve(m, b), atol=1e-10)


def test_cholesky_rejects_indefinite(backend):
    with pytest.raises(ValueError):
        backend.cholesky_solve(np.array([[1.0, 2.0], [2.0, 1.0]]), np.ones(2))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_connected_masks_parity(n):
    ref = _pykernels.connected_masks(n)
    for impl in kernels.backends().values():
        assert np.array_equal(impl.connected_masks(n), ref)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_analyze_masks_parity(n):
    masks = _pykernels.connected_masks(n)
    ref = _pykernels.analyze_masks(n, masks, 1e-12, 10**6)
    for impl in kernels.backends().values():
        got = impl.analyze_masks(n, masks, 1e-12, 10**6)
        for a, b in zip(got[:4], ref[:4]):
            assert np.allclose(a, b, rtol=1e-11, atol=1e-12)
        assert np.array_equal(got[6], ref[6])


def test_analyze_masks_stall_status(backend):
    masks = np.array([0b111111], dtype=np.int64)
    *_, status = backend.analyze_masks(4, masks, 1e-12, 1)
    assert status[0] == kernels.STATUS_OK  # K_4 is regular: converges at once
    masks = backend.connected_masks(5)[:50]
    *_, status = backend.analyze_masks(5, masks, 1e-12, 2)
    assert np.any(status == kernels.STATUS_MAIN_STALLED)


def test_analyze_masks_k2(backend):
    rho, x, rho_del, t1, it, res, status = backend.analyze_masks(2, np.array([1]), 1e-12, 100)
    assert rho[0] == pytest.approx(1.0)
    assert np.allclose(x[0], [2 ** -0.5] * 2)
    assert np.allclose(rho_del[0], 0.0) and np.allclose(t1[0], 1.0)


def test_graph_from_mask_matches_kernel_bits():
    m = int(_pykernels.connected_masks(4)[7])
    g = graph_from_mask(4, m)
    rows = _pykernels._rows_from_mask(4, _pykernels._pairs(4), m)
    assert all(g.has_edge(u, v) == bool(rows[u] >> v & 1) for u in range(4) for v in range(4))
