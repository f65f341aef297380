import math

import numpy as np
import pytest

from lzcsim.analytic import (AsymptoticAmplitude, asymptotic_amplitudes,
                             avoided_crossing_inverse,
                             avoided_crossing_params,
                             demkov_osherov_survival, distribution,
                             ica_survival, k2_underflows,
                             landau_zener_survival, log10_ica_survival,
                             lz_factor, saturation_bound, survival_probability,
                             transition_probability, two_state_survival)
from lzcsim.errors import (IndexOutOfRange, InvalidModel, InvalidSign,
                           MixedSlopeSigns, NonPositiveSlope, ZeroSlope)
from lzcsim.models import LzcModel


REF = LzcModel(0.7, ((0.3, 1.0), (0.3, 0.5)))


def test_lz_factor_unit_point():
    # g**2/|beta| = 1/pi gives exactly exp(-1)
    g = 1.0 / math.sqrt(math.pi)
    assert lz_factor(g, 1.0) == pytest.approx(0.36787944117144233, rel=1e-15)
    with pytest.raises(ZeroSlope):
        lz_factor(1.0, 0.0)


def test_survival_frozen_reference():
    assert survival_probability(REF) == pytest.approx(0.48525769850935907,
                                                      rel=1e-14)


def test_survival_matches_hand_formula():
    k2, g1, b1, g2, b2 = 0.4, 0.6, 1.3, 0.8, -0.7
    model = LzcModel(k2, ((g1, b1), (g2, b2)))
    ek = math.exp(-math.pi * k2)
    pos = math.exp(-math.pi * g1 * g1 / b1)
    neg = math.exp(-math.pi * g2 * g2 / abs(b2))
    assert survival_probability(model) == pytest.approx(
        (pos + ek * neg) / (1.0 + ek), rel=1e-14)


def test_transition_frozen_references():
    up = LzcModel(0.5, ((1.0, 1.0),))
    assert transition_probability(up, 1) == pytest.approx(
        0.7921204236492381, rel=1e-14)
    down = LzcModel(0.5, ((1.0, -1.0),))
    assert transition_probability(down, 1) == pytest.approx(
        1.0 - 0.8353343419130103, rel=1e-12)
    assert survival_probability(down) == pytest.approx(
        0.8353343419130103, rel=1e-14)


def test_distribution_sums_to_one():
    for model in (REF,
                  LzcModel(0.2, ((0.3, -0.5), (0.9, -1.0))),
                  LzcModel(1.1, ((0.4, 1.0), (0.2, -0.3), (0.5, 2.0)))):
        dist = distribution(model)
        assert len(dist) == model.dim
        assert sum(dist) == pytest.approx(1.0, abs=1e-12)


def test_zero_coupling_is_inert():
    base = LzcModel(0.7, ((0.3, 1.0),))
    padded = LzcModel(0.7, ((0.3, 1.0), (0.0, -2.0)))
    assert survival_probability(padded) == pytest.approx(
        survival_probability(base), rel=1e-15)
    assert transition_probability(padded, 2) == 0.0


def test_invalid_model_rejected():
    with pytest.raises(InvalidModel):
        survival_probability(LzcModel(0.5, ((0.3, 1.0), (0.4, 1.0))))
    with pytest.raises(IndexOutOfRange):
        transition_probability(REF, 3)
    with pytest.raises(IndexOutOfRange):
        transition_probability(REF, 0)


def test_two_state_matches_general():
    for k2, g, beta in ((0.3, 0.8, 1.0), (0.3, 0.8, -1.0),
                        (0.0, 0.5, 2.0), (2.5, 1.2, -0.4)):
        model = LzcModel(k2, ((g, beta),))
        assert two_state_survival(k2, g, beta) == pytest.approx(
            survival_probability(model), rel=1e-14)


def test_landau_zener_limit():
    # large k2: the two-state survival approaches the plain LZ value for
    # a positive slope and 1 for a negative slope
    g, beta = 0.7, 1.5
    assert two_state_survival(400.0, g, beta) == pytest.approx(
        landau_zener_survival(g, beta), rel=1e-12)
    assert two_state_survival(400.0, g, -beta) == pytest.approx(1.0,
                                                               rel=1e-12)


def test_demkov_osherov_limit():
    model = LzcModel(0.0, ((0.4, 1.0), (0.3, -0.5), (0.6, 2.0)))
    expected = lz_factor(0.4, 1.0) * lz_factor(0.6, 2.0)
    assert demkov_osherov_survival(model) == pytest.approx(expected,
                                                           rel=1e-14)


def test_k2_underflow_region():
    assert not k2_underflows(200.0)
    assert k2_underflows(250.0)
    # formulas stay finite and sensible there
    assert two_state_survival(250.0, 0.5, 1.0) == pytest.approx(
        landau_zener_survival(0.5, 1.0), rel=1e-15)


def test_saturation_bound_saturates():
    k2 = 0.6
    ek = math.exp(-math.pi * k2)
    pos = LzcModel(k2, tuple((5.0, b) for b in (1.0, 2.0, 3.0)))
    neg = LzcModel(k2, tuple((5.0, -b) for b in (1.0, 2.0, 3.0)))
    assert saturation_bound(pos) == pytest.approx(ek / (1.0 + ek))
    assert saturation_bound(neg) == pytest.approx(1.0 / (1.0 + ek))
    assert survival_probability(pos) >= saturation_bound(pos)
    assert survival_probability(pos) == pytest.approx(saturation_bound(pos),
                                                      abs=1e-12)
    with pytest.raises(MixedSlopeSigns):
        saturation_bound(LzcModel(k2, ((1.0, 1.0), (1.0, -1.0))))


def test_ica_survival():
    couplings = (0.5, 0.5)
    slopes = (1.0, 2.0)
    r = 2.0
    total = sum(g * g / ((1.0 + r) * b) for g, b in zip(couplings, slopes))
    assert ica_survival(couplings, slopes, r) == pytest.approx(
        math.exp(-2.0 * math.pi * total), rel=1e-14)
    assert log10_ica_survival(couplings, slopes, r) == pytest.approx(
        -2.0 * math.pi * total / math.log(10.0), rel=1e-14)
    with pytest.raises(NonPositiveSlope):
        ica_survival((0.5,), (-1.0,), 2.0)


def test_amplitude_moduli_match_distribution():
    amps = asymptotic_amplitudes(REF)
    dist = distribution(REF)
    assert [a.level for a in amps] == [0, 1, 2]
    for a in amps:
        assert a.modulus ** 2 == pytest.approx(dist[a.level], abs=1e-14)
    assert amps[0].quadratic_phase == 0.0
    assert amps[1].quadratic_phase == pytest.approx(-0.5)
    assert amps[2].quadratic_phase == pytest.approx(-0.25)


def test_amplitude_log_t_exponents_are_imaginary():
    amps = asymptotic_amplitudes(REF)
    total = sum(lv.g ** 2 / lv.beta for lv in REF.levels)
    assert amps[0].log_t_exponent == pytest.approx(
        complex(0.0, -REF.k2 + total))
    for a, lv in zip(amps[1:], REF.levels):
        assert a.log_t_exponent == pytest.approx(
            complex(0.0, -lv.g ** 2 / lv.beta))


def test_avoided_crossing_round_trip():
    eps0, kappa = avoided_crossing_params(0.5, -2.0)
    assert eps0 == pytest.approx(2.0, rel=1e-14)
    k2, beta = avoided_crossing_inverse(eps0, kappa)
    assert k2 == pytest.approx(0.5, rel=1e-12)
    assert beta == pytest.approx(-2.0, rel=1e-12)
    with pytest.raises(InvalidSign):
        avoided_crossing_params(0.5, 2.0)
    with pytest.raises(InvalidSign):
        avoided_crossing_inverse(-1.0, 1.0)


def test_random_models_stay_normalized():
    rng = np.random.default_rng(42)
    for _ in range(50):
        n = int(rng.integers(1, 5))
        betas = rng.uniform(0.3, 3.0, size=n) * rng.choice((-1.0, 1.0),
                                                           size=n)
        model = LzcModel(rng.uniform(0.0, 2.0),
                         tuple((g, b) for g, b in
                               zip(rng.uniform(0.0, 2.0, size=n), betas)))
        dist = distribution(model)
        assert sum(dist) == pytest.approx(1.0, abs=1e-12)
        assert all(0.0 <= p <= 1.0 for p in dist)
