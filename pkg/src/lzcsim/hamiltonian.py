"""Time-dependent Hamiltonian builders for every model family, the
two-qubit realization, and the adiabatic spectrum.

Matrices are built dense (dimensions stay small) and are exactly real
symmetric, hence Hermitian.  For the propagator each model is reduced to
a sum of constant matrices times scalar time profiles,

    H(t) = sum_k f_k(t) * M_k,

which keeps per-step matrix assembly cheap inside the integration loop.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NonPositiveTime
from .models import (Coulomb, DiabaticModel, Linear, LzcModel, PowerLaw,
                     Quadratic, QuadraticSkew)

# time-profile codes used by the propagation kernel
TERM_CONST = 0   # f(t) = 1
TERM_INV_T = 1   # f(t) = 1/t
TERM_LIN_T = 2   # f(t) = t
TERM_SQ_T = 3    # f(t) = t**2
TERM_POW_T = 4   # f(t) = t**(-r), r in the term parameter


@dataclass(frozen=True)
class TermHamiltonian:
    """Structured H(t) = sum_k f_k(t) * mats[k].

    ``codes[k]`` selects the profile, ``params[k]`` its parameter (only
    TERM_POW_T uses one).  ``singular`` marks profiles undefined at t <= 0.
    """
    mats: np.ndarray      # (K, d, d) float64
    codes: np.ndarray     # (K,) int64
    params: np.ndarray    # (K,) float64
    singular: bool

    @property
    def dim(self) -> int:
        return self.mats.shape[1]

    def __call__(self, t: float) -> np.ndarray:
        if self.singular and t <= 0.0:
            raise NonPositiveTime(f"Hamiltonian singular at t = {t}")
        H = np.zeros((self.dim, self.dim))
        for M, code, p in zip(self.mats, self.codes, self.params):
            if code == TERM_CONST:
                f = 1.0
            elif code == TERM_INV_T:
                f = 1.0 / t
            elif code == TERM_LIN_T:
                f = t
            elif code == TERM_SQ_T:
                f = t * t
            else:
                f = t ** (-p)
            H = H + f * M
        return H


class _TermAccumulator:
    def __init__(self, dim: int):
        self.dim = dim
        self.terms: dict[tuple[int, float], np.ndarray] = {}
        self.singular = False

    def add(self, code: int, param: float, i: int, j: int, value: float):
        key = (code, param)
        if key not in self.terms:
            self.terms[key] = np.zeros((self.dim, self.dim))
        self.terms[key][i, j] += value
        if code in (TERM_INV_T, TERM_POW_T):
            self.singular = True

    def build(self) -> TermHamiltonian:
        keys = sorted(self.terms)
        mats = np.array([self.terms[k] for k in keys])
        codes = np.array([k[0] for k in keys], dtype=np.int64)
        params = np.array([k[1] for k in keys], dtype=np.float64)
        return TermHamiltonian(mats, codes, params, self.singular)


def lzc_terms(model: LzcModel) -> TermHamiltonian:
    acc = _TermAccumulator(model.dim)
    acc.add(TERM_INV_T, 0.0, 0, 0, model.k2)
    for n, lv in enumerate(model.levels, start=1):
        acc.add(TERM_LIN_T, 0.0, n, n, lv.beta)
        if lv.g != 0.0:
            acc.add(TERM_CONST, 0.0, 0, n, lv.g)
            acc.add(TERM_CONST, 0.0, n, 0, lv.g)
    return acc.build()


def diabatic_terms(model: DiabaticModel) -> TermHamiltonian:
    acc = _TermAccumulator(model.dim)
    for n, prof in enumerate(model.diag):
        if isinstance(prof, Coulomb):
            acc.add(TERM_INV_T, 0.0, n, n, prof.k2)
        elif isinstance(prof, PowerLaw):
            if prof.r == 1.0:
                acc.add(TERM_INV_T, 0.0, n, n, prof.q)
            else:
                acc.add(TERM_POW_T, prof.r, n, n, prof.q)
        elif isinstance(prof, Linear):
            if prof.beta != 0.0:
                acc.add(TERM_LIN_T, 0.0, n, n, prof.beta)
        elif isinstance(prof, Quadratic):
            if prof.eps0 != 0.0:
                acc.add(TERM_CONST, 0.0, n, n, prof.eps0)
            acc.add(TERM_SQ_T, 0.0, n, n, 1.0 / prof.kappa)
        elif isinstance(prof, QuadraticSkew):
            if prof.beta != 0.0:
                acc.add(TERM_LIN_T, 0.0, n, n, -prof.beta)
            acc.add(TERM_SQ_T, 0.0, n, n, 1.0 / prof.kappa)
        else:
            raise TypeError(f"unknown profile {prof!r}")
    for n, g in enumerate(model.couplings, start=1):
        if g != 0.0:
            acc.add(TERM_CONST, 0.0, 0, n, g)
            acc.add(TERM_CONST, 0.0, n, 0, g)
    return acc.build()


# ---------------------------------------------------------------------------
# Direct matrix builders
# ---------------------------------------------------------------------------

def lzc_hamiltonian(model: LzcModel, t: float) -> np.ndarray:
    """H(t) with H[0,0] = k2/t, H[n,n] = beta_n*t, H[0,n] = H[n,0] = g_n."""
    if t <= 0.0:
        raise NonPositiveTime("the Coulomb term needs t > 0")
    return lzc_terms(model)(t)


def generic_hamiltonian(model: DiabaticModel, t: float) -> np.ndarray:
    """Diagonal from the per-level profiles at t, star couplings off it."""
    if model.singular_at_zero and t <= 0.0:
        raise NonPositiveTime("a singular profile needs t > 0")
    return diabatic_terms(model)(t)


# ---------------------------------------------------------------------------
# Two-qubit realization
# ---------------------------------------------------------------------------

# product basis order: |uu>, |ud>, |du>, |dd>
_SIGMA_DOT = np.array([
    [1.0, 0.0, 0.0, 0.0],
    [0.0, -1.0, 2.0, 0.0],
    [0.0, 2.0, -1.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
])
_SZ_SUM = np.diag([2.0, 0.0, 0.0, -2.0])
_SX_DIFF = np.array([
    [0.0, -1.0, 1.0, 0.0],
    [-1.0, 0.0, 0.0, 1.0],
    [1.0, 0.0, 0.0, -1.0],
    [0.0, 1.0, -1.0, 0.0],
])

# isometry onto {|0>, |1>, |2>} = {(ud - du)/sqrt2, uu, -dd}
_QUBIT_ISOMETRY = np.array([
    [0.0, 1.0, 0.0],
    [1.0 / math.sqrt(2.0), 0.0, 0.0],
    [-1.0 / math.sqrt(2.0), 0.0, 0.0],
    [0.0, 0.0, -1.0],
])
# the state that decouples at every t
SINGLET_SECTOR = np.array([0.0, 1.0, 1.0, 0.0]) / math.sqrt(2.0)


def two_qubit_hamiltonian(k2: float, g: float, beta: float,
                          t: float) -> np.ndarray:
    """4x4 Heisenberg-exchange + field Hamiltonian whose triplet-singlet
    sector realizes the 3-state Coulomb-plus-linear model.

    Schedule: J(t) = -k2/(4t) on (1 - sigma.sigma), B_z = beta*t/2,
    B_x = -g/sqrt(2).  With this exchange constant the reduced 3x3 block
    has (0,0) entry exactly -k2/t.
    """
    if t <= 0.0:
        raise NonPositiveTime("the exchange schedule needs t > 0")
    J = -k2 / (4.0 * t)
    Bz = beta * t / 2.0
    Bx = -g / math.sqrt(2.0)
    return (J * (np.eye(4) - _SIGMA_DOT) + Bz * _SZ_SUM + Bx * _SX_DIFF)


def two_qubit_terms(k2: float, g: float, beta: float) -> TermHamiltonian:
    mats = np.array([
        -g / math.sqrt(2.0) * _SX_DIFF,
        -k2 / 4.0 * (np.eye(4) - _SIGMA_DOT),
        beta / 2.0 * _SZ_SUM,
    ])
    codes = np.array([TERM_CONST, TERM_INV_T, TERM_LIN_T], dtype=np.int64)
    params = np.zeros(3)
    return TermHamiltonian(mats, codes, params, singular=True)


def reduce_qubit_basis(H4: np.ndarray) -> np.ndarray:
    """Project the 4x4 qubit Hamiltonian onto the coupled 3-state basis."""
    H4 = np.asarray(H4)
    if H4.shape != (4, 4):
        raise DimensionMismatch(f"expected a 4x4 matrix, got {H4.shape}")
    return _QUBIT_ISOMETRY.T @ H4 @ _QUBIT_ISOMETRY


def qubit_equivalent_lzc(k2: float, g: float, beta: float) -> LzcModel:
    """3-state model whose probabilities the 4x4 dynamics reproduces.

    The reduced block equals minus the model Hamiltonian with the level
    order (0, slope -beta, slope +beta); H -> -H conjugates amplitudes of
    a real-symmetric evolution and leaves every probability unchanged.
    """
    return LzcModel(k2, ((g, -beta), (g, beta)))


# ---------------------------------------------------------------------------
# Spectrum
# ---------------------------------------------------------------------------

def adiabatic_energies(H: np.ndarray) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, ascending."""
    return np.linalg.eigvalsh(H)
