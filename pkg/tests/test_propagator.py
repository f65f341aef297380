import numpy as np
import pytest

from lzcsim.errors import (DimensionMismatch, IndexOutOfRange,
                           NormDriftExceeded)
from lzcsim.hamiltonian import lzc_terms
from lzcsim.models import LzcModel, PropagationConfig, StateVector
from lzcsim.propagator import (cayley_step, convergence_report, initial_state,
                               propagate)


MODEL = LzcModel(0.7, ((0.3, 1.0), (0.3, 0.5)))


def test_cayley_step_is_unitary():
    rng = np.random.default_rng(3)
    H = rng.normal(size=(5, 5))
    H = H + H.T
    psi = rng.normal(size=5) + 1j * rng.normal(size=5)
    psi = psi / np.linalg.norm(psi)
    out = cayley_step(H, psi, 0.7)
    # exactly unitary for any dt, not just small ones
    assert np.linalg.norm(out) == pytest.approx(1.0, abs=1e-13)


def test_cayley_step_matches_exponential():
    rng = np.random.default_rng(5)
    H = rng.normal(size=(4, 4))
    H = H + H.T
    psi = initial_state(4).amplitudes
    dt = 1e-3
    stepped = cayley_step(H, psi, dt)
    lam, V = np.linalg.eigh(H)
    exact = V @ (np.exp(-1j * lam * dt) * (V.conj().T @ psi))
    assert np.linalg.norm(stepped - exact) < 1e-9


def test_cayley_step_shape_check():
    with pytest.raises(DimensionMismatch):
        cayley_step(np.eye(3), np.ones(2), 0.1)


def test_initial_state():
    sv = initial_state(3, level=1)
    assert np.allclose(sv.probabilities(), [0.0, 1.0, 0.0])
    with pytest.raises(IndexOutOfRange):
        initial_state(3, level=3)


def test_kernel_and_fallback_agree():
    terms = lzc_terms(MODEL)
    cfg = PropagationConfig(1e-3, 20.0, 1e-3)
    psi0 = initial_state(MODEL.dim)
    fast = propagate(terms, psi0, cfg)
    slow = propagate(lambda t: terms(t), psi0, cfg)
    assert np.allclose(fast.final_state.amplitudes,
                       slow.final_state.amplitudes, atol=1e-10)


def test_norm_is_preserved_over_long_run():
    result = propagate(lzc_terms(MODEL), initial_state(MODEL.dim),
                       PropagationConfig(1e-4, 100.0, 1e-3))
    assert result.norm_drift < 1e-10
    assert result.steps == 100000


def test_halving_check_recorded():
    result = propagate(lzc_terms(MODEL), initial_state(MODEL.dim),
                       PropagationConfig(1e-3, 10.0, 2e-3,
                                         halving_check=True))
    assert result.halving_deviation is not None
    assert result.halving_deviation < 1e-3


def test_probabilities_converge_to_analytic():
    from lzcsim.analytic import distribution
    dist = distribution(MODEL)
    result = propagate(lzc_terms(MODEL), initial_state(MODEL.dim),
                       PropagationConfig(1e-4, 400.0, 1e-3))
    err = max(abs(a - b) for a, b in zip(result.final_probabilities, dist))
    assert err < 5e-3


def test_convergence_report_small_deviations():
    probs, dt_dev, tail_dev = convergence_report(
        lzc_terms(MODEL), initial_state(MODEL.dim),
        PropagationConfig(1e-3, 50.0, 1e-3))
    assert sum(probs) == pytest.approx(1.0, abs=1e-6)
    assert dt_dev < 2e-3
    assert tail_dev < 0.05


def test_dimension_mismatch_rejected():
    with pytest.raises(DimensionMismatch):
        propagate(lzc_terms(MODEL), initial_state(2),
                  PropagationConfig(1e-3, 1.0, 1e-3))


def test_callback_invoked():
    seen = []
    propagate(lzc_terms(MODEL), initial_state(MODEL.dim),
              PropagationConfig(1e-3, 1.0, 1e-3),
              callback=lambda t, psi: seen.append(t), callback_every=250)
    assert len(seen) >= 3
    assert seen == sorted(seen)
    assert seen[-1] == pytest.approx(1.0, abs=1e-2)


def test_nonhermitian_drift_detected():
    # a deliberately non-Hermitian builder loses norm; this must raise
    bad = lambda t: np.array([[0.0, 1.0], [0.0, 0.0]]) * (1.0 + 0.2 * t)
    with pytest.raises(NormDriftExceeded):
        propagate(bad, initial_state(2, level=1),
                  PropagationConfig(0.1, 5.0, 0.01))
