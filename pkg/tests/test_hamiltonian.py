import numpy as np
import pytest

from lzcsim.errors import DimensionMismatch, NonPositiveTime
from lzcsim.hamiltonian import (SINGLET_SECTOR, adiabatic_energies,
                                diabatic_terms, generic_hamiltonian,
                                lzc_hamiltonian, lzc_terms,
                                qubit_equivalent_lzc, reduce_qubit_basis,
                                two_qubit_hamiltonian, two_qubit_terms)
from lzcsim.models import (DiabaticModel, Linear, LzcModel, PowerLaw,
                           Quadratic, QuadraticSkew, lzc_to_diabatic)


MODEL = LzcModel(0.7, ((0.3, 1.0), (0.3, 0.5)))


def test_lzc_matrix_entries():
    t = 2.0
    H = lzc_hamiltonian(MODEL, t)
    expected = np.array([
        [0.7 / t, 0.3, 0.3],
        [0.3, 1.0 * t, 0.0],
        [0.3, 0.0, 0.5 * t],
    ])
    assert np.allclose(H, expected, atol=1e-15)


def test_lzc_matrix_is_symmetric():
    H = lzc_hamiltonian(MODEL, 0.37)
    assert np.array_equal(H, H.T)


def test_nonpositive_time_rejected():
    with pytest.raises(NonPositiveTime):
        lzc_hamiltonian(MODEL, 0.0)
    with pytest.raises(NonPositiveTime):
        lzc_hamiltonian(MODEL, -1.0)


def test_terms_match_direct_builder():
    terms = lzc_terms(MODEL)
    for t in (0.01, 1.0, 7.3, 250.0):
        assert np.allclose(terms(t), lzc_hamiltonian(MODEL, t), atol=1e-14)


def test_diabatic_terms_profiles():
    model = DiabaticModel(
        (PowerLaw(0.2, 2.0), Linear(0.5), Quadratic(1.0, 2.0),
         QuadraticSkew(0.3, 4.0)),
        (0.1, 0.2, 0.3))
    terms = diabatic_terms(model)
    for t in (0.5, 1.0, 3.0):
        H = terms(t)
        assert H[0, 0] == pytest.approx(0.2 / t ** 2)
        assert H[1, 1] == pytest.approx(0.5 * t)
        assert H[2, 2] == pytest.approx(1.0 + t * t / 2.0)
        assert H[3, 3] == pytest.approx(-0.3 * t + t * t / 4.0)
        assert H[0, 1] == pytest.approx(0.1)
        assert H[0, 3] == pytest.approx(0.3)
        assert H[1, 2] == 0.0
        assert np.allclose(H, generic_hamiltonian(model, t), atol=1e-14)


def test_regular_model_allows_negative_time():
    model = DiabaticModel((Quadratic(1.0, 1.0), Linear(0.0)), (0.5,))
    H = generic_hamiltonian(model, -2.0)
    assert H[0, 0] == pytest.approx(5.0)
    assert not model.singular_at_zero


def test_lzc_to_diabatic_same_hamiltonian():
    dia = lzc_to_diabatic(MODEL)
    for t in (0.2, 1.0, 11.0):
        assert np.allclose(generic_hamiltonian(dia, t),
                           lzc_hamiltonian(MODEL, t), atol=1e-14)


def test_two_qubit_reduction():
    k2, g, beta = 0.5, 0.4, 1.0
    model = qubit_equivalent_lzc(k2, g, beta)
    assert model.levels[0].beta == -beta
    assert model.levels[1].beta == beta
    for t in (0.3, 1.0, 5.0):
        H4 = two_qubit_hamiltonian(k2, g, beta, t)
        assert np.allclose(H4, H4.T, atol=1e-14)
        H3 = reduce_qubit_basis(H4)
        # equal to minus the model Hamiltonian up to the sign of the
        # level-0 basis vector, which no probability can see
        D = np.diag([-1.0, 1.0, 1.0])
        assert np.allclose(H3, D @ -lzc_hamiltonian(model, t) @ D,
                           atol=1e-13)


def test_two_qubit_terms_match():
    k2, g, beta = 0.5, 0.4, 1.0
    terms = two_qubit_terms(k2, g, beta)
    for t in (0.2, 1.5, 40.0):
        assert np.allclose(terms(t), two_qubit_hamiltonian(k2, g, beta, t),
                           atol=1e-13)


def test_singlet_sector_decouples():
    for t in (0.1, 1.0, 10.0):
        H4 = two_qubit_hamiltonian(0.5, 0.7, 1.3, t)
        Hv = H4 @ SINGLET_SECTOR
        # (ud + du)/sqrt2 never mixes back into the coupled block
        overlap = Hv - (SINGLET_SECTOR @ Hv) * SINGLET_SECTOR
        assert np.linalg.norm(overlap) < 1e-13


def test_reduce_rejects_wrong_shape():
    with pytest.raises(DimensionMismatch):
        reduce_qubit_basis(np.eye(3))


def test_adiabatic_energies_sorted_and_exact():
    H = lzc_hamiltonian(MODEL, 1.0)
    lam = adiabatic_energies(H)
    assert np.all(np.diff(lam) >= 0)
    assert np.allclose(sorted(np.linalg.eigvals(H).real), lam, atol=1e-12)


def test_spectrum_avoided_gap():
    # two-state, beta < 0: minimal adiabatic gap is 2*k*sqrt(|beta|)
    k2, beta = 0.5, -2.0
    model = LzcModel(k2, ((0.0, beta),))
    ts = np.linspace(0.1, 3.0, 2001)
    gaps = [np.diff(adiabatic_energies(lzc_hamiltonian(model, t)))[0]
            for t in ts]
    assert min(gaps) == pytest.approx(2.0 * np.sqrt(k2 * abs(beta)),
                                      rel=1e-4)
