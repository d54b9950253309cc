"""Parameter sweeps, figure presets, CSV round-tripping and the
parameter planner that inverts the error-rate bound."""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .finite_blocklength import CodeParams
from .montecarlo import Estimator, SimSpec, estimate_per
from .numerics import DomainError, NumericOverflowError
from .optimizer import minimize_bound, per_asymptotic
from .outage import (
    LinkConfig,
    OutageModelKind,
    chernoff_bound,
    corrected_bound,
    outage_exact,
    outage_series_leading,
)

__all__ = [
    "Axis",
    "Output",
    "PowerMode",
    "SimOverrides",
    "SweepSpec",
    "SweepTable",
    "run_sweep",
    "preset",
    "PRESETS",
    "PlanFree",
    "PlanQuery",
    "PlanResult",
    "plan_parameters",
]


class Axis(enum.Enum):
    RATE = "rate"
    BINS = "bins"
    SNR_DB = "snr_db"
    BLOCKLENGTH = "blocklength"
    TAIL_Z = "tail_z"


class Output(enum.Enum):
    BOUND_EXACT = "bound_exact"
    BOUND_CORRECTED = "bound_corrected"
    BOUND_CHERNOFF = "bound_chernoff"
    ASYMPTOTIC = "asymptotic"
    SIMULATION = "simulation"


class PowerMode(enum.Enum):
    PER_BIN_FIXED = "per-bin"
    # snr_db is the total L * P / N0; each bin gets snr_db - 10 log10(L)
    TOTAL_FIXED = "total"


_BOUND_MODEL = {
    Output.BOUND_EXACT: OutageModelKind.EXACT,
    Output.BOUND_CORRECTED: OutageModelKind.CORRECTED_B,
    Output.BOUND_CHERNOFF: OutageModelKind.CHERNOFF_U,
}

# on the TailZ axis the outputs name the tail functions themselves
_TAIL_FUNC = {
    Output.BOUND_EXACT: ("outage_exact", outage_exact),
    Output.BOUND_CORRECTED: ("corrected_bound", corrected_bound),
    Output.BOUND_CHERNOFF: ("chernoff_bound", chernoff_bound),
    Output.ASYMPTOTIC: ("series_leading", outage_series_leading),
}

_INT_COLUMNS = {"L", "n"}
_STR_COLUMNS = {"status"}


@dataclass(frozen=True)
class SimOverrides:
    trials: int = 10_000_000
    seed: int = 0
    estimator: Estimator = Estimator.ANALYTIC_AVERAGE
    shards: int = 1

    def __post_init__(self):
        object.__setattr__(self, "estimator", Estimator(self.estimator))


@dataclass(frozen=True)
class SweepSpec:
    axis: Axis
    values: tuple
    link: LinkConfig
    code: CodeParams
    outputs: tuple = (Output.BOUND_CORRECTED,)
    sim: SimOverrides = field(default_factory=SimOverrides)
    power_mode: PowerMode = PowerMode.PER_BIN_FIXED

    def __post_init__(self):
        object.__setattr__(self, "axis", Axis(self.axis))
        object.__setattr__(self, "power_mode", PowerMode(self.power_mode))
        object.__setattr__(self, "outputs", tuple(Output(o) for o in self.outputs))
        vals = tuple(self.values)
        if not vals:
            raise DomainError("sweep needs at least one axis value")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise DomainError("sweep values must be strictly increasing")
        if self.axis in (Axis.BINS, Axis.BLOCKLENGTH):
            if any(int(v) != v for v in vals):
                raise DomainError(f"{self.axis.value} values must be integers")
            vals = tuple(int(v) for v in vals)
        else:
            vals = tuple(float(v) for v in vals)
        object.__setattr__(self, "values", vals)
        if isinstance(self.sim, dict):
            object.__setattr__(self, "sim", SimOverrides(**self.sim))

    def to_dict(self) -> dict:
        return {
            "axis": self.axis.value,
            "values": list(self.values),
            "link": {"L": self.link.L, "sigma_h2": self.link.sigma_h2, "snr_db": self.link.snr_db},
            "code": {"n": self.code.n, "R": self.code.R},
            "outputs": [o.value for o in self.outputs],
            "sim": {
                "trials": self.sim.trials,
                "seed": self.sim.seed,
                "estimator": self.sim.estimator.value,
                "shards": self.sim.shards,
            },
            "power_mode": self.power_mode.value,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SweepSpec":
        return cls(
            axis=d["axis"],
            values=tuple(d["values"]),
            link=LinkConfig(**d["link"]),
            code=CodeParams(**d["code"]),
            outputs=tuple(d.get("outputs", ["bound_corrected"])),
            sim=SimOverrides(**d.get("sim", {})),
            power_mode=d.get("power_mode", "per-bin"),
        )

    def point(self, value) -> tuple[LinkConfig, CodeParams]:
        """Link and code parameters at one axis value."""
        link, code = self.link, self.code
        if self.axis is Axis.RATE:
            code = replace(code, R=value)
        elif self.axis is Axis.BINS:
            link = replace(link, L=value)
        elif self.axis is Axis.SNR_DB:
            link = replace(link, snr_db=value)
        elif self.axis is Axis.BLOCKLENGTH:
            code = replace(code, n=value)
        if self.power_mode is PowerMode.TOTAL_FIXED:
            link = replace(link, snr_db=link.snr_db - 10.0 * math.log10(link.L))
        return link, code


@dataclass
class SweepTable:
    columns: list
    rows: list
    config: dict

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("# config: " + json.dumps(self.config, sort_keys=True) + "\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow([_fmt(row.get(c)) for c in self.columns])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "SweepTable":
        lines = text.splitlines()
        if not lines or not lines[0].startswith("# config: "):
            raise ValueError("missing '# config:' header line")
        config = json.loads(lines[0][len("# config: "):])
        reader = csv.reader(lines[1:])
        columns = next(reader)
        rows = [{c: _parse(c, v) for c, v in zip(columns, rec)} for rec in reader]
        return cls(columns=columns, rows=rows, config=config)

    def column(self, name: str) -> np.ndarray:
        return np.array([np.nan if r.get(name) is None else r[name] for r in self.rows], dtype=float)


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _parse(col, v):
    if v == "":
        return None
    if col in _STR_COLUMNS:
        return v
    if col in _INT_COLUMNS:
        return int(v)
    return float(v)


def _columns(spec: SweepSpec) -> list:
    if spec.axis is Axis.TAIL_Z:
        cols = ["z", "L"]
        cols += [_TAIL_FUNC[o][0] for o in spec.outputs if o in _TAIL_FUNC]
        return cols + ["status"]
    cols = [spec.axis.value, "L", "snr_db", "n", "R"]
    for o in spec.outputs:
        if o is Output.SIMULATION:
            cols += ["simulation", "simulation_ci95"]
        else:
            cols.append(o.value)
        if o in _BOUND_MODEL:
            cols.append(o.value + "_eps")
    return cols + ["status"]


def _tail_row(spec: SweepSpec, z: float) -> dict:
    row = {"z": z, "L": spec.link.L}
    problems = []
    for o in spec.outputs:
        if o not in _TAIL_FUNC:
            continue
        name, func = _TAIL_FUNC[o]
        try:
            row[name] = float(func(spec.link.L, z))
        except DomainError as exc:
            row[name] = None
            problems.append(f"{name}: {exc}")
    row["status"] = "; ".join(problems) if problems else "ok"
    return row


def _point_row(spec: SweepSpec, value) -> dict:
    row = {spec.axis.value: value}
    problems = []
    try:
        link, code = spec.point(value)
    except DomainError as exc:
        row["status"] = f"error: {exc}"
        return row
    row.update(L=link.L, snr_db=link.snr_db, n=code.n, R=code.R)
    for o in spec.outputs:
        try:
            if o in _BOUND_MODEL:
                res = minimize_bound(code, link, _BOUND_MODEL[o])
                row[o.value] = res.per_bound
                row[o.value + "_eps"] = res.eps_star
                if res.degenerate:
                    problems.append(f"{o.value}: degenerate")
            elif o is Output.ASYMPTOTIC:
                row[o.value] = per_asymptotic(code, link)
            elif o is Output.SIMULATION:
                s = spec.sim
                est = estimate_per(SimSpec(link=link, code=code, trials=s.trials, seed=s.seed,
                                           estimator=s.estimator, shards=s.shards))
                row["simulation"] = est.per
                row["simulation_ci95"] = est.ci_halfwidth_95
        except (DomainError, NumericOverflowError) as exc:
            problems.append(f"{o.value}: {exc}")
    row["status"] = "; ".join(problems) if problems else "ok"
    return row


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepTable:
    """Evaluate every requested output at every axis value.

    Rows come back in axis order whatever ``workers`` is. Every
    simulated point reuses the same seed, so neighbouring points share
    channel draws. A failing point still gets a row, with the error in
    its ``status`` column.
    """
    make = _tail_row if spec.axis is Axis.TAIL_Z else _point_row
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda v: make(spec, v), spec.values))
    else:
        rows = [make(spec, v) for v in spec.values]
    return SweepTable(columns=_columns(spec), rows=rows, config=spec.to_dict())


# ---------------------------------------------------------------- presets

_FIG_LINK = LinkConfig(L=4, sigma_h2=1.0, snr_db=3.0)
_FIG_CODE = CodeParams(n=4096, R=0.5)
_FIG_OUTPUTS = (Output.BOUND_CORRECTED, Output.BOUND_EXACT, Output.ASYMPTOTIC, Output.SIMULATION)


def _grid(start, stop, step):
    k = int(round((stop - start) / step))
    return tuple(round(start + i * step, 10) for i in range(k + 1))


PRESETS = {
    "fig1": dict(axis=Axis.TAIL_Z, values=tuple(float(z) for z in np.geomspace(1e-4, 0.99, 60)),
                 outputs=(Output.BOUND_EXACT, Output.BOUND_CORRECTED, Output.BOUND_CHERNOFF)),
    "fig2": dict(axis=Axis.RATE, values=_grid(0.1, 1.5, 0.05)),
    "fig3": dict(axis=Axis.BINS, values=tuple(range(1, 11)), power_mode=PowerMode.TOTAL_FIXED),
    "fig4": dict(axis=Axis.SNR_DB, values=_grid(-3.0, 15.0, 0.5)),
    "fig5": dict(axis=Axis.BLOCKLENGTH, values=tuple(2**k for k in range(7, 16))),
}


def preset(name: str, sim: SimOverrides | None = None) -> SweepSpec:
    """Sweep reproducing the data behind one of the figures (fig1..fig5)."""
    try:
        kw = dict(PRESETS[name])
    except KeyError:
        raise DomainError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    kw.setdefault("outputs", _FIG_OUTPUTS)
    return SweepSpec(link=_FIG_LINK, code=_FIG_CODE, sim=sim or SimOverrides(), **kw)


# ---------------------------------------------------------------- planner

class PlanFree(enum.Enum):
    MIN_BINS = "min-bins"
    MIN_SNR_DB = "min-snr-db"


@dataclass(frozen=True)
class PlanQuery:
    target_per: float
    free: PlanFree
    lo: float
    hi: float
    link: LinkConfig
    code: CodeParams
    model: OutageModelKind = OutageModelKind.CORRECTED_B
    snr_tol_db: float = 0.01

    def __post_init__(self):
        object.__setattr__(self, "free", PlanFree(self.free))
        object.__setattr__(self, "model", OutageModelKind(self.model))
        if not 0.0 < self.target_per < 1.0:
            raise DomainError("target PER must lie in (0, 1)")
        if not self.lo < self.hi:
            raise DomainError("search bounds need lo < hi")
        if self.free is PlanFree.MIN_BINS and (int(self.lo) != self.lo or self.lo < 1):
            raise DomainError("bin search range must start at a positive integer")


@dataclass(frozen=True)
class PlanResult:
    feasible: bool
    free: PlanFree
    value: float | int
    achieved_bound: float
    target_per: float
    evaluations: int

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["free"] = self.free.value
        return d


def plan_parameters(q: PlanQuery) -> PlanResult:
    """Smallest ``L`` (or SNR in dB) whose bound meets ``q.target_per``.

    Relies on the bound falling with ``L`` and SNR, which has only been
    checked numerically, so the bracketing inequality is re-verified
    before returning. When the check fails the bin search falls back to
    a linear scan.
    """
    calls = 0

    def bound(v):
        nonlocal calls
        calls += 1
        if q.free is PlanFree.MIN_BINS:
            link = replace(q.link, L=int(v))
        else:
            link = replace(q.link, snr_db=float(v))
        return minimize_bound(q.code, link, q.model).per_bound

    if q.free is PlanFree.MIN_BINS:
        lo, hi = int(q.lo), int(math.floor(q.hi))
        b_hi = bound(hi)
        if b_hi > q.target_per:
            return PlanResult(False, q.free, hi, b_hi, q.target_per, calls)
        b_lo = bound(lo)
        if b_lo <= q.target_per:
            return PlanResult(True, q.free, lo, b_lo, q.target_per, calls)
        # invariant: bound(lo) > target >= bound(hi)
        while hi - lo > 1:
            mid = (lo + hi) // 2
            b_mid = bound(mid)
            if b_mid <= q.target_per:
                hi, b_hi = mid, b_mid
            else:
                lo = mid
        if bound(hi - 1) > q.target_per:
            return PlanResult(True, q.free, hi, b_hi, q.target_per, calls)
        for L in range(int(q.lo), int(math.floor(q.hi)) + 1):
            b = bound(L)
            if b <= q.target_per:
                return PlanResult(True, q.free, L, b, q.target_per, calls)
        raise AssertionError("unreachable: bound(hi) met the target")

    lo, hi = float(q.lo), float(q.hi)
    b_hi = bound(hi)
    if b_hi > q.target_per:
        return PlanResult(False, q.free, hi, b_hi, q.target_per, calls)
    b_lo = bound(lo)
    if b_lo <= q.target_per:
        return PlanResult(True, q.free, lo, b_lo, q.target_per, calls)
    while hi - lo > q.snr_tol_db:
        mid = 0.5 * (lo + hi)
        b_mid = bound(mid)
        if b_mid <= q.target_per:
            hi, b_hi = mid, b_mid
        else:
            lo = mid
    if not bound(hi - 2 * q.snr_tol_db) > q.target_per:
        raise ArithmeticError("bound is not monotone in SNR near the planned point")
    return PlanResult(True, q.free, hi, b_hi, q.target_per, calls)
