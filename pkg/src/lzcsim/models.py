"""Core value types: model parameters, state vectors and probability
distributions, plus validation and the JSON model-file format.

All types are immutable after construction and safe to share between
workers.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import GridTooLarge


# ---------------------------------------------------------------------------
# LZC model (Coulomb level 0 + linear levels 1..N, star couplings)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LevelSpec:
    """One linear diabatic level: coupling g to level 0 and slope beta.

    The sign of g is a basis phase (probabilities depend on g**2 only),
    so g is canonicalized to be nonnegative.
    """
    g: float
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "g", abs(float(self.g)))
        object.__setattr__(self, "beta", float(self.beta))


@dataclass(frozen=True)
class LzcModel:
    """(N+1)-state model: level 0 has energy k2/t, level n has beta_n * t.

    Levels are indexed n = 1..N; ``levels[0]`` is level 1.
    """
    k2: float
    levels: tuple[LevelSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "k2", float(self.k2))
        object.__setattr__(
            self,
            "levels",
            tuple(
                lv if isinstance(lv, LevelSpec) else LevelSpec(*lv)
                for lv in self.levels
            ),
        )

    @property
    def n_levels(self) -> int:
        return len(self.levels)

    @property
    def dim(self) -> int:
        return len(self.levels) + 1

    def replace_level(self, n: int, *, g: float | None = None,
                      beta: float | None = None) -> "LzcModel":
        """Return a copy with level n (1-based) modified."""
        if not 1 <= n <= self.n_levels:
            raise IndexError(f"level index {n} out of range 1..{self.n_levels}")
        old = self.levels[n - 1]
        new = LevelSpec(old.g if g is None else g,
                        old.beta if beta is None else beta)
        levels = self.levels[:n - 1] + (new,) + self.levels[n:]
        return LzcModel(self.k2, levels)


@dataclass(frozen=True)
class Violation:
    """A single validation failure, identified by kind and level indices."""
    kind: str
    levels: tuple[int, ...] = ()

    def __str__(self):
        if self.levels:
            return f"{self.kind}{self.levels}"
        return self.kind


def validate(model: LzcModel) -> list[Violation]:
    """Return every violated invariant of an LzcModel (empty list = ok).

    Checks: k2 >= 0, beta_n != 0 for every level, all slopes pairwise
    distinct.  Pure function: identical inputs give identical lists.
    """
    errors: list[Violation] = []
    if model.k2 < 0:
        errors.append(Violation("NegativeK2"))
    for n, lv in enumerate(model.levels, start=1):
        if lv.beta == 0.0:
            errors.append(Violation("ZeroSlope", (n,)))
    for n in range(len(model.levels)):
        for m in range(n + 1, len(model.levels)):
            if model.levels[n].beta == model.levels[m].beta:
                errors.append(Violation("DuplicateSlope", (n + 1, m + 1)))
    return errors


# ---------------------------------------------------------------------------
# Generic diagonal-profile models (power-law / quadratic families)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Coulomb:
    """Energy k2 / t (singular at t = 0)."""
    k2: float
    singular = True

    def energy(self, t):
        return self.k2 / t


@dataclass(frozen=True)
class PowerLaw:
    """Energy q / t**r (singular at t = 0 for r > 0)."""
    q: float
    r: float
    singular = True

    def energy(self, t):
        return self.q / t ** self.r


@dataclass(frozen=True)
class Linear:
    """Energy beta * t."""
    beta: float
    singular = False

    def energy(self, t):
        return self.beta * t


@dataclass(frozen=True)
class Quadratic:
    """Energy eps0 + t**2 / kappa (regular everywhere)."""
    eps0: float
    kappa: float
    singular = False

    def energy(self, t):
        return self.eps0 + t * t / self.kappa


@dataclass(frozen=True)
class QuadraticSkew:
    """Energy -beta * t + t**2 / kappa (avoided-crossing parabola)."""
    beta: float
    kappa: float
    singular = False

    def energy(self, t):
        return -self.beta * t + t * t / self.kappa


Profile = Coulomb | PowerLaw | Linear | Quadratic | QuadraticSkew

_PROFILE_TAGS = {
    "coulomb": (Coulomb, ("k2",)),
    "power_law": (PowerLaw, ("q", "r")),
    "linear": (Linear, ("beta",)),
    "quadratic": (Quadratic, ("eps0", "kappa")),
    "quadratic_skew": (QuadraticSkew, ("beta", "kappa")),
}
_PROFILE_NAMES = {cls: tag for tag, (cls, _) in _PROFILE_TAGS.items()}


@dataclass(frozen=True)
class DiabaticModel:
    """Diagonal energy profiles plus star couplings from level 0.

    ``diag`` holds one profile per level (index 0..N); ``couplings[n-1]``
    couples level 0 to level n.  All other off-diagonal entries are zero,
    so the Hamiltonian is real symmetric at every t.
    """
    diag: tuple[Profile, ...]
    couplings: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "diag", tuple(self.diag))
        object.__setattr__(self, "couplings",
                           tuple(float(g) for g in self.couplings))
        if len(self.couplings) != len(self.diag) - 1:
            raise ValueError(
                f"need {len(self.diag) - 1} couplings for {len(self.diag)} "
                f"levels, got {len(self.couplings)}")

    @property
    def dim(self) -> int:
        return len(self.diag)

    @property
    def singular_at_zero(self) -> bool:
        return any(p.singular for p in self.diag)


def lzc_to_diabatic(model: LzcModel) -> DiabaticModel:
    """The DiabaticModel equivalent of an LzcModel."""
    diag = (Coulomb(model.k2),) + tuple(Linear(lv.beta) for lv in model.levels)
    return DiabaticModel(diag, tuple(lv.g for lv in model.levels))


# ---------------------------------------------------------------------------
# State vector and probability distribution
# ---------------------------------------------------------------------------

class StateVector:
    """Unit-norm complex amplitude vector over the diabatic states."""

    __slots__ = ("amplitudes",)

    def __init__(self, amplitudes):
        amp = np.asarray(amplitudes, dtype=np.complex128)
        if amp.ndim != 1 or amp.size == 0:
            raise ValueError("amplitudes must be a nonempty 1-d sequence")
        norm = np.linalg.norm(amp)
        if norm == 0.0 or not np.isfinite(norm):
            raise ValueError("cannot normalize a zero or non-finite vector")
        amp = amp / norm
        amp.setflags(write=False)
        self.amplitudes = amp

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def __repr__(self):
        return f"StateVector({self.amplitudes.tolist()!r})"


@dataclass(frozen=True)
class TransitionDistribution:
    """Probabilities P(0 -> j), entry 0 being the survival probability."""
    p: tuple[float, ...]
    atol: float = field(default=1e-9, compare=False)

    def __post_init__(self):
        p = tuple(float(x) for x in self.p)
        object.__setattr__(self, "p", p)
        for j, x in enumerate(p):
            if x < -self.atol or x > 1.0 + self.atol:
                raise ValueError(f"probability {x} at index {j} outside [0, 1]")
        total = sum(p)
        if abs(total - 1.0) > max(self.atol, 1e-12):
            raise ValueError(f"probabilities sum to {total}, not 1")

    def __getitem__(self, j: int) -> float:
        return self.p[j]

    def __len__(self) -> int:
        return len(self.p)

    def __iter__(self):
        return iter(self.p)


# ---------------------------------------------------------------------------
# Propagation grid
# ---------------------------------------------------------------------------

MAX_GRID_STEPS = 2_000_000_000


@dataclass(frozen=True)
class PropagationConfig:
    """Fixed time grid for the Cayley propagator.

    t_start must be strictly positive unless ``allow_nonpositive_time``
    is set (only safe when no diagonal profile is singular at t <= 0).
    """
    t_start: float
    t_end: float
    dt: float
    halving_check: bool = False
    allow_nonpositive_time: bool = False

    def __post_init__(self):
        if not self.allow_nonpositive_time and self.t_start <= 0.0:
            raise ValueError("t_start must be > 0 (singular Coulomb term)")
        if self.t_end <= self.t_start:
            raise ValueError("t_end must exceed t_start")
        if self.dt <= 0.0:
            raise ValueError("dt must be positive")
        if (self.t_end - self.t_start) / self.dt > MAX_GRID_STEPS:
            raise GridTooLarge(
                f"grid of {(self.t_end - self.t_start) / self.dt:.3g} steps "
                f"exceeds the {MAX_GRID_STEPS} step guard")

    @property
    def n_steps(self) -> int:
        return max(1, int(round((self.t_end - self.t_start) / self.dt)))

    def halved(self) -> "PropagationConfig":
        return PropagationConfig(self.t_start, self.t_end, self.dt / 2.0,
                                 halving_check=False,
                                 allow_nonpositive_time=self.allow_nonpositive_time)


# ---------------------------------------------------------------------------
# JSON model files
# ---------------------------------------------------------------------------

def lzc_model_to_dict(model: LzcModel) -> dict:
    return {"k2": model.k2,
            "levels": [{"g": lv.g, "beta": lv.beta} for lv in model.levels]}


def diabatic_model_to_dict(model: DiabaticModel) -> dict:
    diag = []
    for prof in model.diag:
        tag = _PROFILE_NAMES[type(prof)]
        entry = {"type": tag}
        for name in _PROFILE_TAGS[tag][1]:
            entry[name] = getattr(prof, name)
        diag.append(entry)
    return {"diag": diag, "couplings": list(model.couplings)}


def model_from_dict(data: dict) -> LzcModel | DiabaticModel:
    """Parse a model dict in the documented file format.

    ``{"k2": ..., "levels": [...]}`` yields an LzcModel;
    ``{"diag": [...], "couplings": [...]}`` yields a DiabaticModel.
    """
    if "levels" in data:
        levels = tuple(LevelSpec(lv["g"], lv["beta"]) for lv in data["levels"])
        return LzcModel(data["k2"], levels)
    if "diag" in data:
        diag = []
        for entry in data["diag"]:
            tag = entry["type"]
            if tag not in _PROFILE_TAGS:
                raise ValueError(f"unknown profile type {tag!r}")
            cls, names = _PROFILE_TAGS[tag]
            diag.append(cls(*(entry[name] for name in names)))
        return DiabaticModel(tuple(diag), tuple(data["couplings"]))
    raise ValueError("model dict has neither 'levels' nor 'diag'")


def load_model(path) -> LzcModel | DiabaticModel:
    with open(path) as fh:
        return model_from_dict(json.load(fh))


def save_model(model: LzcModel | DiabaticModel, path) -> None:
    if isinstance(model, LzcModel):
        data = lzc_model_to_dict(model)
    else:
        data = diabatic_model_to_dict(model)
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2)
        fh.write("\n")
