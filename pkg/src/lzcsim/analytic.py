"""Closed-form transition probabilities, asymptotic amplitude phases,
limits, and the semiclassical independent-crossing estimate.

Empty slope-ordered products are 1 by convention.  exp(-pi*k2) is an
exact 0 (flagged via ``k2_underflows``) once pi*k2 exceeds the double
exponent range; all formulas remain well defined there.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (IndexOutOfRange, InvalidModel, InvalidSign,
                     MixedSlopeSigns, NonPositiveSlope, ZeroSlope)
from .loggamma import log_gamma_arg
from .models import LzcModel, TransitionDistribution, validate

K2_UNDERFLOW = 700.0 / math.pi


def k2_underflows(k2: float) -> bool:
    """True when exp(-pi*k2) is an exact double-precision zero."""
    return k2 > K2_UNDERFLOW


def _checked(model: LzcModel) -> LzcModel:
    errors = validate(model)
    if errors:
        raise InvalidModel(errors)
    return model


def lz_factor(g: float, beta: float) -> float:
    """Single-crossing survival factor exp(-pi * g**2 / |beta|)."""
    if beta == 0.0:
        raise ZeroSlope("lz_factor needs a nonzero slope")
    return math.exp(-math.pi * g * g / abs(beta))


def survival_probability(model: LzcModel) -> float:
    """Probability to remain on level 0 as t -> +infinity."""
    _checked(model)
    pos = 1.0
    neg = 1.0
    for lv in model.levels:
        if lv.beta > 0:
            pos *= lz_factor(lv.g, lv.beta)
        else:
            neg *= lz_factor(lv.g, lv.beta)
    ek = math.exp(-math.pi * model.k2)
    return (pos + ek * neg) / (1.0 + ek)


def transition_probability(model: LzcModel, j: int) -> float:
    """Probability to end on level j (1-based), from level 0."""
    _checked(model)
    if not 1 <= j <= model.n_levels:
        raise IndexOutOfRange(f"level index {j} not in 1..{model.n_levels}")
    target = model.levels[j - 1]
    ek = math.exp(-math.pi * model.k2)
    pj = lz_factor(target.g, target.beta)
    if target.beta > 0:
        prod = 1.0
        for lv in model.levels:
            if lv.beta > target.beta:
                prod *= lz_factor(lv.g, lv.beta)
        return prod * (1.0 - pj) / (1.0 + ek)
    prod = 1.0
    for lv in model.levels:
        if lv.beta < target.beta:
            prod *= lz_factor(lv.g, lv.beta)
    return prod * (1.0 - pj) * ek / (1.0 + ek)


def distribution(model: LzcModel) -> TransitionDistribution:
    """All N+1 probabilities; the slope-ordered products telescope to 1."""
    p = [survival_probability(model)]
    p.extend(transition_probability(model, j)
             for j in range(1, model.n_levels + 1))
    return TransitionDistribution(tuple(p), atol=1e-12)


def two_state_survival(k2: float, g: float, beta: float) -> float:
    """Survival probability of the two-state model in closed form.

    Equals survival_probability of the one-level LzcModel exactly; kept
    as a separate entry point because the two-branch form is the usable
    replacement for the Landau-Zener formula at finite level curvature.
    """
    if beta == 0.0:
        raise ZeroSlope("two_state_survival needs a nonzero slope")
    ek = math.exp(-math.pi * k2)
    if beta > 0:
        return (math.exp(-math.pi * g * g / beta) + ek) / (1.0 + ek)
    return (1.0 + math.exp(-math.pi * (k2 + g * g / abs(beta)))) / (1.0 + ek)


def landau_zener_survival(g: float, beta: float) -> float:
    """Plain Landau-Zener survival exp(-pi*g**2/|beta|), the k -> inf limit."""
    return lz_factor(g, beta)


def demkov_osherov_survival(model: LzcModel) -> float:
    """k -> infinity limit of the survival probability: product of the
    single-crossing factors over positive-slope levels only."""
    _checked(model)
    prod = 1.0
    for lv in model.levels:
        if lv.beta > 0:
            prod *= lz_factor(lv.g, lv.beta)
    return prod


def saturation_bound(model: LzcModel) -> float:
    """Strict lower bound on the survival probability when every slope
    shares one sign: exp(-pi*k2)/(1+exp(-pi*k2)) for all-positive slopes,
    1/(1+exp(-pi*k2)) for all-negative."""
    _checked(model)
    if model.n_levels == 0:
        raise MixedSlopeSigns("bound needs at least one level")
    signs = {lv.beta > 0 for lv in model.levels}
    if len(signs) != 1:
        raise MixedSlopeSigns("slopes must all share one sign")
    ek = math.exp(-math.pi * model.k2)
    if signs.pop():
        return ek / (1.0 + ek)
    return 1.0 / (1.0 + ek)


def ica_survival(couplings, slopes, r: float) -> float:
    """Independent-crossing estimate for a 1/t**r level crossing linear
    levels with positive slopes: exp(-2*pi*sum g_i**2 / |b0_i - beta_i|)
    with b0_i = -r*beta_i the level-0 slope at the i-th crossing."""
    if r <= 0:
        raise ValueError("power-law exponent r must be positive")
    if len(couplings) != len(slopes):
        raise ValueError("couplings and slopes must have equal length")
    total = 0.0
    for g, beta in zip(couplings, slopes):
        if beta <= 0:
            raise NonPositiveSlope("ICA crossings need positive slopes")
        total += g * g / abs(-r * beta - beta)
    return math.exp(-2.0 * math.pi * total)


def log10_ica_survival(couplings, slopes, r: float) -> float:
    """log10 of ica_survival; usable far below the underflow threshold."""
    if r <= 0:
        raise ValueError("power-law exponent r must be positive")
    total = 0.0
    for g, beta in zip(couplings, slopes):
        if beta <= 0:
            raise NonPositiveSlope("ICA crossings need positive slopes")
        total += g * g / abs(-r * beta - beta)
    return -2.0 * math.pi * total / math.log(10.0)


# ---------------------------------------------------------------------------
# Asymptotic amplitudes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AsymptoticAmplitude:
    """Large-time amplitude of one diabatic level.

    The level-j amplitude behaves as
        modulus * exp(i * (quadratic_phase * t**2 + phase_const))
                * t ** log_t_exponent
    so ``log_t_exponent`` is purely imaginary and ``quadratic_phase`` is
    -beta_j/2 for j >= 1 (zero for level 0).
    """
    level: int
    modulus: float
    phase_const: float
    log_t_exponent: complex
    quadratic_phase: float


def _phase_level0(model: LzcModel) -> float:
    k2 = model.k2
    shift = sum(lv.g ** 2 / (2.0 * lv.beta) for lv in model.levels)
    phi = log_gamma_arg(complex(0.5, k2 / 2.0 - shift))
    phi -= log_gamma_arg(complex(0.5, k2 / 2.0))
    phi += sum(lv.g ** 2 * math.log(abs(lv.beta) / 2.0) / (2.0 * lv.beta)
               for lv in model.levels)
    return phi


def _phase_level(model: LzcModel, j: int) -> float:
    k2 = model.k2
    target = model.levels[j - 1]
    cj = target.g ** 2 / (2.0 * target.beta)
    shift = sum(lv.g ** 2 / (2.0 * lv.beta) for lv in model.levels)
    phi = math.pi / 4.0 if target.beta > 0 else -1.25 * math.pi
    phi += log_gamma_arg(complex(0.0, cj))
    phi -= log_gamma_arg(complex(0.5, k2 / 2.0))
    for n, lv in enumerate(model.levels, start=1):
        if n != j:
            phi += (lv.g ** 2 * math.log(abs(lv.beta - target.beta))
                    / (2.0 * lv.beta))
    phi += (k2 / 2.0 - shift) * math.log(abs(target.beta))
    phi -= (k2 / 2.0 - cj) * math.log(2.0)
    return phi


def asymptotic_amplitudes(model: LzcModel) -> list[AsymptoticAmplitude]:
    """Moduli and constant phases of every level at large times.

    Moduli squared reproduce distribution(model) entrywise.  Phase
    constants are defined for levels with nonzero coupling; a level with
    g = 0 keeps zero amplitude and its phase constant is reported as 0.
    """
    _checked(model)
    dist = distribution(model)
    out = [AsymptoticAmplitude(
        level=0,
        modulus=math.sqrt(dist[0]),
        phase_const=_phase_level0(model),
        log_t_exponent=complex(
            0.0,
            -model.k2 + sum(lv.g ** 2 / lv.beta for lv in model.levels)),
        quadratic_phase=0.0,
    )]
    for j, lv in enumerate(model.levels, start=1):
        phase = _phase_level(model, j) if lv.g > 0 else 0.0
        out.append(AsymptoticAmplitude(
            level=j,
            modulus=math.sqrt(dist[j]),
            phase_const=phase,
            log_t_exponent=complex(0.0, -lv.g ** 2 / lv.beta),
            quadratic_phase=-lv.beta / 2.0,
        ))
    return out


# ---------------------------------------------------------------------------
# Avoided-crossing parameter maps
# ---------------------------------------------------------------------------

def avoided_crossing_params(k2: float, beta: float) -> tuple[float, float]:
    """(minimal gap eps0, curvature kappa) of the negative-slope two-state
    model: eps0 = 2*k*sqrt(|beta|), kappa = k/|beta|**1.5."""
    if beta >= 0:
        raise InvalidSign("avoided crossing needs beta < 0")
    if k2 <= 0:
        raise InvalidSign("avoided crossing needs k2 > 0")
    k = math.sqrt(k2)
    ab = abs(beta)
    return 2.0 * k * math.sqrt(ab), k / ab ** 1.5


def avoided_crossing_inverse(eps0: float, kappa: float) -> tuple[float, float]:
    """Invert avoided_crossing_params: returns (k2, beta) with beta < 0."""
    if eps0 <= 0 or kappa <= 0:
        raise InvalidSign("eps0 and kappa must be positive")
    ab = math.sqrt(eps0 / (2.0 * kappa))
    k = eps0 / (2.0 * math.sqrt(ab))
    return k * k, -ab
