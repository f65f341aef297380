"""Scenario registry, parameter sweeps, and analytic-vs-numeric reports.

Each registered scenario fixes a model family, the swept coupling, a
default grid and grid discipline, and the analytic reference (closed
form, independent-crossing estimate, or none).  Sweep points are
independent; execution may be parallel but rows are always returned in
grid order.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import analytic
from .errors import (BadPath, InvalidModel, MissingAnalytic,
                     PropagationFailure, UnknownScenario)
from .hamiltonian import (SINGLET_SECTOR, TermHamiltonian, adiabatic_energies,
                          diabatic_terms, lzc_terms, qubit_equivalent_lzc,
                          two_qubit_terms)
from .models import (DiabaticModel, Linear, LzcModel, PowerLaw,
                     PropagationConfig, Quadratic, StateVector, validate)
from .propagator import asymptotic_populations, initial_state, propagate


@dataclass(frozen=True)
class SweepRow:
    """One sweep point: numeric probabilities and, when available, the
    analytic reference with the worst per-entry deviation."""
    sweep_value: float
    numeric: tuple[float, ...]
    analytic: tuple[float, ...] | None = None
    max_abs_err: float | None = None
    dt_deviation: float = 0.0
    extras: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class SpectrumRow:
    t: float
    energies: tuple[float, ...]


@dataclass(frozen=True)
class Report:
    passed: bool
    tol: float
    max_err: float
    worst_value: float | None
    worst_dt_deviation: float | None

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        if self.worst_value is None:
            return f"{status}: no rows with an analytic column"
        return (f"{status}: max |analytic - numeric| = {self.max_err:.3e} "
                f"(tol {self.tol:.3e}) at sweep value {self.worst_value:g}, "
                f"dt deviation there {self.worst_dt_deviation:.3e}")


@dataclass(frozen=True)
class ScenarioPoint:
    builder: TermHamiltonian
    dim: int
    analytic: tuple[float, ...] | None
    # map raw probabilities -> reported numeric tuple (basis reductions)
    project: object = None
    monitor_singlet: bool = False
    psi0: object = None  # initial StateVector; default: level 0


@dataclass(frozen=True)
class Scenario:
    """A registered figure/verification scenario."""
    name: str
    description: str
    param_label: str
    grid_min: float
    grid_max: float
    grid_steps: int
    config: PropagationConfig
    expected: str                       # "closed-form" | "ICA" | "none"
    make_point: object                  # value -> ScenarioPoint

    def grid(self, g_min=None, g_max=None, g_steps=None) -> np.ndarray:
        lo = self.grid_min if g_min is None else g_min
        hi = self.grid_max if g_max is None else g_max
        n = self.grid_steps if g_steps is None else g_steps
        return np.linspace(lo, hi, n)


def _lzc_point(model: LzcModel) -> ScenarioPoint:
    errors = validate(model)
    if errors:
        raise InvalidModel(errors)
    return ScenarioPoint(lzc_terms(model), model.dim,
                         tuple(analytic.distribution(model)))


FIG5A_SLOPES = tuple(1.25 - 0.25 * (j - 2) for j in (1, 2, 3, 4))
FIG5B_SLOPES = tuple(-0.65 + 0.2 * (j - 2) for j in (1, 2, 3, 4))
FIG5C_SLOPES = (-0.5, -1.0)

_DEFAULT_CFG = PropagationConfig(1e-4, 400.0, 1e-3, halving_check=True)


def _fig3a(g2):
    return _lzc_point(LzcModel(0.7, ((0.3, 1.0), (g2, 0.5))))


def _fig3b(g1):
    return _lzc_point(LzcModel(0.5, ((g1, 1.0), (1.0, -1.0))))


def _fig3c(g1):
    return _lzc_point(LzcModel(0.2, ((g1, -0.5), (0.3, -1.0))))


def _equal_coupling(k2, slopes):
    def make(g):
        return _lzc_point(LzcModel(k2, tuple((g, b) for b in slopes)))
    return make


def _powerlaw(r):
    def make(g):
        diag = (PowerLaw(0.2, r),) + tuple(Linear(b) for b in FIG5A_SLOPES)
        model = DiabaticModel(diag, (g,) * len(FIG5A_SLOPES))
        ica = analytic.ica_survival((g,) * len(FIG5A_SLOPES), FIG5A_SLOPES, r)
        log10_ica = analytic.log10_ica_survival(
            (g,) * len(FIG5A_SLOPES), FIG5A_SLOPES, r)
        return ScenarioPoint(diabatic_terms(model), model.dim, (ica,),
                             project=None), {"log10_ica": log10_ica}
    return make


def _twostate(k2, beta):
    def make(g):
        return _lzc_point(LzcModel(k2, ((g, beta),)))
    return make


def _check2_left(g):
    model = DiabaticModel((PowerLaw(1.0, 2.0), Linear(0.5)), (g,))
    return ScenarioPoint(diabatic_terms(model), 2, None)


def _check2_right(g):
    model = DiabaticModel((Quadratic(1.0, 1.0), Linear(0.0)), (g,))
    return ScenarioPoint(diabatic_terms(model), 2, None)


QUBIT_K2 = 0.5
QUBIT_BETA = 1.0


def _qubit3(g):
    mapped = qubit_equivalent_lzc(QUBIT_K2, g, QUBIT_BETA)
    dist = analytic.distribution(mapped)

    def project(probs, psi):
        # reduced-basis populations: |0>, |uu> (slope -beta), |dd> (+beta)
        p0 = abs((psi[1] - psi[2]) / math.sqrt(2.0)) ** 2
        return (p0, probs[0], probs[3])

    psi0 = StateVector([0.0, 1.0, -1.0, 0.0])  # (ud - du)/sqrt(2)
    return ScenarioPoint(two_qubit_terms(QUBIT_K2, g, QUBIT_BETA), 4,
                         tuple(dist), project=project, monitor_singlet=True,
                         psi0=psi0)


def _registry() -> dict[str, Scenario]:
    reg = {}

    def add(name, desc, param, lo, hi, steps, cfg, expected, make):
        reg[name] = Scenario(name, desc, param, lo, hi, steps, cfg,
                             expected, make)

    add("fig3a", "3-state, both slopes positive (k2=0.7, g1=0.3, "
        "beta=(1, 0.5)), sweep g2", "g2", 0.0, 1.5, 31, _DEFAULT_CFG,
        "closed-form", _fig3a)
    add("fig3b", "3-state, mixed slopes (k2=0.5, g2=1, beta=(1, -1)), "
        "sweep g1", "g1", 0.0, 1.5, 31, _DEFAULT_CFG, "closed-form", _fig3b)
    add("fig3c", "3-state, both slopes negative (k2=0.2, g2=0.3, "
        "beta=(-0.5, -1)), sweep g1", "g1", 0.0, 1.5, 31, _DEFAULT_CFG,
        "closed-form", _fig3c)
    add("fig5a", "5-state equal couplings, slopes 1.5..0.75, k2=0.2",
        "g", 0.0, 1.5, 31, _DEFAULT_CFG, "closed-form",
        _equal_coupling(0.2, FIG5A_SLOPES))
    add("fig5b", "5-state equal couplings, slopes -0.85..-0.25, k2=0.2",
        "g", 0.0, 1.5, 31, _DEFAULT_CFG, "closed-form",
        _equal_coupling(0.2, FIG5B_SLOPES))
    add("fig5c", "3-state equal couplings, slopes (-0.5, -1), k2=0.15",
        "g", 0.0, 1.5, 31, _DEFAULT_CFG, "closed-form",
        _equal_coupling(0.15, FIG5C_SLOPES))
    for tag, r in (("r05", 0.5), ("r15", 1.5), ("r2", 2.0)):
        add(f"powerlaw-{tag}", f"5-state, level-0 energy 0.2/t**{r}, "
            "slopes as fig5a, equal couplings", "g", 0.0, 3.5, 31,
            _DEFAULT_CFG, "ICA", _powerlaw(r))
    add("twostate-pos", "two-state, beta=1, k2=0.3, sweep g",
        "g", 0.0, 2.0, 31, _DEFAULT_CFG, "closed-form", _twostate(0.3, 1.0))
    add("twostate-neg", "two-state, beta=-1, k2=0.3, sweep g",
        "g", 0.0, 2.0, 31, _DEFAULT_CFG, "closed-form", _twostate(0.3, -1.0))
    add("check2-left", "two-state, level-0 energy 1/t**2 vs linear "
        "beta=0.5, numerics only", "g", 0.0, 2.0, 31, _DEFAULT_CFG,
        "none", _check2_left)
    add("check2-right", "quadratic avoided crossing (eps0=1, kappa=1), "
        "evolution from t=-400, numerics only", "g", 0.0, 2.0, 31,
        PropagationConfig(-400.0, 400.0, 1e-3, halving_check=True,
                          allow_nonpositive_time=True),
        "none", _check2_right)
    add("qubit3", "two-qubit exchange schedule realizing the 3-state "
        "model (k2=0.5, beta=1), sweep g", "g", 0.0, 1.5, 15,
        _DEFAULT_CFG, "closed-form", _qubit3)
    add("fig1-spectrum", "adiabatic energy fan of a 9-state model",
        "t", 0.1, 4.0, 400, _DEFAULT_CFG, "none", None)
    return reg


REGISTRY = _registry()
SCENARIO_NAMES = tuple(REGISTRY)

# fig1 display model: 8 linear levels fanning around the Coulomb level
FIG1_MODEL = LzcModel(1.0, tuple(
    (0.3, b) for b in (-2.0, -1.5, -1.0, -0.5, 0.5, 1.0, 1.5, 2.0)))


def get_scenario(name: str) -> Scenario:
    if name not in REGISTRY:
        raise UnknownScenario(
            f"unknown scenario {name!r}; known: {', '.join(SCENARIO_NAMES)}")
    return REGISTRY[name]


def _with_overrides(cfg: PropagationConfig, overrides: dict) -> PropagationConfig:
    kwargs = {}
    for key in ("t_start", "t_end", "dt"):
        if overrides.get(key) is not None:
            kwargs[key] = overrides[key]
    if overrides.get("halving_check") is not None:
        kwargs["halving_check"] = overrides["halving_check"]
    return replace(cfg, **kwargs) if kwargs else cfg


def _run_point(make_point, value, cfg) -> SweepRow:
    made = make_point(value)
    extras = {}
    if isinstance(made, tuple):
        point, extras = made
    else:
        point = made
    try:
        singlet_max = [0.0]
        callback = None
        every = 0
        if point.monitor_singlet:
            def callback(t, psi):
                overlap = abs(np.vdot(SINGLET_SECTOR, psi))
                singlet_max[0] = max(singlet_max[0], overlap)
            every = 1000
        psi0 = point.psi0 if point.psi0 is not None \
            else initial_state(point.dim)
        res = propagate(point.builder, psi0, cfg,
                        callback=callback, callback_every=every)
    except Exception as exc:  # noqa: BLE001 - re-tagged with the sweep point
        raise PropagationFailure(value, exc) from exc
    if point.project is not None:
        probs = point.project(tuple(res.final_probabilities),
                              res.final_state.amplitudes)
    else:
        t_final = cfg.t_start + res.steps * cfg.dt
        probs = tuple(asymptotic_populations(point.builder,
                                             res.final_state, t_final))
    if point.monitor_singlet:
        extras = dict(extras, singlet_max=singlet_max[0])
    err = None
    if point.analytic is not None and len(point.analytic) == len(probs):
        err = max(abs(a - p) for a, p in zip(point.analytic, probs))
    return SweepRow(
        sweep_value=float(value),
        numeric=probs,
        analytic=point.analytic,
        max_abs_err=err,
        dt_deviation=res.halving_deviation or 0.0,
        extras=extras,
    )


def run_scenario(name: str, overrides: dict | None = None,
                 jobs: int = 1) -> list[SweepRow] | list[SpectrumRow]:
    """Run every sweep point of a registered scenario.

    ``overrides`` may set t_start, t_end, dt, halving_check, g_min,
    g_max, g_steps.  Rows come back in grid order regardless of jobs.
    """
    overrides = overrides or {}
    scenario = get_scenario(name)
    if name == "fig1-spectrum":
        grid = np.linspace(
            overrides.get("t_min") or scenario.grid_min,
            overrides.get("t_max") or scenario.grid_max,
            overrides.get("points") or scenario.grid_steps)
        return spectrum_rows(FIG1_MODEL, grid)
    cfg = _with_overrides(scenario.config, overrides)
    grid = scenario.grid(overrides.get("g_min"), overrides.get("g_max"),
                         overrides.get("g_steps"))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_run_point, scenario.make_point, v, cfg)
                       for v in grid]
            return [f.result() for f in futures]
    return [_run_point(scenario.make_point, v, cfg) for v in grid]


def spectrum_rows(model: LzcModel, t_grid) -> list[SpectrumRow]:
    builder = lzc_terms(model)
    rows = []
    for t in t_grid:
        energies = adiabatic_energies(builder(float(t)))
        rows.append(SpectrumRow(float(t), tuple(energies)))
    return rows


def compare(rows: list[SweepRow], tol: float) -> Report:
    """Pass iff every row's max_abs_err is within tol."""
    if not rows or all(r.analytic is None for r in rows):
        raise MissingAnalytic("no analytic column to compare against")
    worst = None
    for row in rows:
        if row.max_abs_err is None:
            continue
        if worst is None or row.max_abs_err > worst.max_abs_err:
            worst = row
    return Report(
        passed=worst.max_abs_err <= tol,
        tol=tol,
        max_err=worst.max_abs_err,
        worst_value=worst.sweep_value,
        worst_dt_deviation=worst.dt_deviation,
    )


# ---------------------------------------------------------------------------
# Generic parameter-path sweeps
# ---------------------------------------------------------------------------

def set_by_path(model, path: str, value: float):
    """Return a copy of a model with one scalar field replaced.

    Paths: ``k2``, ``levels.<n>.g`` / ``levels.<n>.beta`` with n the
    1-based level number, ``couplings.<n>`` likewise, and
    ``diag.<i>.<field>`` with i the 0-based diagonal position.
    """
    parts = path.split(".")
    try:
        if isinstance(model, LzcModel):
            if parts == ["k2"]:
                return LzcModel(value, model.levels)
            if parts[0] == "levels" and len(parts) == 3:
                n = int(parts[1])
                if parts[2] == "g":
                    return model.replace_level(n, g=value)
                if parts[2] == "beta":
                    return model.replace_level(n, beta=value)
        elif isinstance(model, DiabaticModel):
            if parts[0] == "couplings" and len(parts) == 2:
                n = int(parts[1])
                couplings = list(model.couplings)
                couplings[n - 1] = value
                return DiabaticModel(model.diag, tuple(couplings))
            if parts[0] == "diag" and len(parts) == 3:
                i = int(parts[1])
                prof = replace(model.diag[i], **{parts[2]: value})
                diag = model.diag[:i] + (prof,) + model.diag[i + 1:]
                return DiabaticModel(diag, model.couplings)
    except (IndexError, ValueError, TypeError) as exc:
        raise BadPath(f"cannot apply {path!r} to {type(model).__name__}: "
                      f"{exc}") from exc
    raise BadPath(f"unrecognized parameter path {path!r} "
                  f"for {type(model).__name__}")


def sweep(model_template, parameter_path: str, grid,
          config: PropagationConfig, jobs: int = 1) -> list[SweepRow]:
    """Propagate the template at every grid value of one parameter.

    The analytic column is filled whenever the point is a valid LzcModel.
    """
    def make(value):
        model = set_by_path(model_template, parameter_path, value)
        if isinstance(model, LzcModel):
            return _lzc_point(model)
        return ScenarioPoint(diabatic_terms(model), model.dim, None)

    values = list(grid)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_run_point, make, v, config)
                       for v in values]
            return [f.result() for f in futures]
    return [_run_point(make, v, config) for v in values]


def analytic_sweep(model: LzcModel, parameter_path: str | None,
                   grid=None) -> list[SweepRow]:
    """Closed forms only, no propagation."""
    if parameter_path is None:
        dist = analytic.distribution(model)
        return [SweepRow(0.0, (), analytic=tuple(dist))]
    rows = []
    for value in grid:
        point = set_by_path(model, parameter_path, value)
        dist = analytic.distribution(point)
        rows.append(SweepRow(float(value), (), analytic=tuple(dist)))
    return rows
