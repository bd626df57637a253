import numpy as np
import pytest

import cmr


def test_lax_matrix_is_hermitian():
    L = cmr.build_L("rational", [1.0, 0.0], [2.0, 3.0])
    np.testing.assert_allclose(L, [[2, 1j], [-1j, 3]])
    np.testing.assert_allclose(L, L.conj().T)
    assert np.trace(L @ L).real / 2 == pytest.approx(cmr.hamiltonian("rational", [1.0, 0.0], [2.0, 3.0]))


def test_X_for_two_particles():
    np.testing.assert_array_equal(cmr.X("rational", 2), [[0, 0], [-0.5, 0]])


def test_r_tilde_prime_solves_the_cybe():
    for kind in ("rational", "hyperbolic", "trigonometric"):
        r = cmr.r_tilde_prime(kind, 4, a=0.7)
        assert r.shape == (16, 16)
        assert cmr.cybe_residual(r, kind, a=0.7) < 1e-9
        assert cmr.cybe_residual(cmr.r_prime(kind, 3, omega=-0.2, a=0.7), kind, a=0.7) < 1e-8


def test_dynamical_r_matrix_is_not_constant():
    r1 = cmr.r_dynamical("hyperbolic", [0.1, 0.5, 0.9])
    r2 = cmr.r_dynamical("hyperbolic", [0.1, 0.6, 0.9])
    assert r1.shape == (9, 9)
    assert np.linalg.norm(r1 - r2) > 1e-3


def test_gauge_is_invertible():
    g = cmr.gauge("trigonometric", [0.1, 0.5, 0.9], family="II", omega=0.2)
    assert abs(np.linalg.det(g)) > 1e-12


def test_evolution_conserves_the_hamiltonian():
    qs, ps = cmr.evolve("rational", [1.0, -1.0], [0.0, 0.0], dt=1e-3, steps=2000)
    assert qs.shape == (2001, 2)
    h = [cmr.hamiltonian("rational", q, p) for q, p in zip(qs[::100], ps[::100])]
    assert max(h) - min(h) < 1e-9
    np.testing.assert_allclose(ps.sum(axis=1), 0.0, atol=1e-12)


def test_evolution_across_a_singularity_raises():
    with pytest.raises(cmr.EvolutionError):
        cmr.evolve("rational", [0.0, 0.1], [10.0, -10.0], dt=1.0, steps=5)


def test_verify_report():
    report = cmr.verify("all", kind="rational", n=3, exact=True)
    assert report["schema"] == "cmr-report/1"
    assert report["passed"]
    assert report["summary"]["failed"] == 0
    assert "theorem6" in cmr.suites


def test_bad_arguments_raise_value_error():
    with pytest.raises(ValueError):
        cmr.build_L("elliptic", [0.0, 1.0], [0.0, 0.0])
    with pytest.raises(ValueError):
        cmr.build_L("rational", [1.0, 1.0], [0.0, 0.0])
    with pytest.raises(ValueError):
        cmr.verify("nonsense")
    with pytest.raises(ValueError):
        cmr.verify("all", kind="hyperbolic", exact=True)
