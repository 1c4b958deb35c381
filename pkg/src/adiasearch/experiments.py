"""Sweeps, figure tables and scaling reports with CSV/JSON persistence.

Tables are written as RFC-4180-style CSV with a single '#'-prefixed JSON
metadata header line, '.' decimal separator and 17 significant digits, so
every row is recomputable from the library API with the embedded
parameters.
"""

import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import List, Optional, Sequence

import numpy as np

from .errors import InvalidArgumentError
from .model import SearchInstance, get_profile, hamiltonian_entries, make_instance
from .schedule import (
    DERIVED_ASYMPTOTE,
    LITERATURE_ASYMPTOTE,
    RuntimeRecord,
    local_schedule,
    rc_schedule,
    runtime_quadrature,
)
from .spectrum import eig2, min_gap

VERSION_TAG = "adiasearch-0.1.0"


def _fmt(v) -> str:
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return ""
    return format(float(v), ".17g")


@dataclass
class FigureTable:
    figure_id: str
    columns: List[str]
    rows: List[list]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        ncol = len(self.columns)
        for r in self.rows:
            if len(r) != ncol:
                raise InvalidArgumentError("row length does not match column count")

    def to_csv(self, stream) -> None:
        stream.write("# " + json.dumps(self.metadata, sort_keys=True) + "\n")
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_fmt(v) for v in row])

    def write(self, path: str) -> None:
        with open(path, "w", newline="") as fh:
            self.to_csv(fh)

    def csv_text(self) -> str:
        buf = io.StringIO()
        self.to_csv(buf)
        return buf.getvalue()


def _metadata(figure_id, **params):
    md = {
        "figure_id": figure_id,
        "version": VERSION_TAG,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    md.update(params)
    return md


def figure1_data(n: int = 6) -> FigureTable:
    """Two lowest eigenvalue curves (s, E0, E1) for the quadratic drive."""
    inst = make_instance(n)
    s = np.linspace(0.0, 1.0, 512)
    a = s * (1.0 - s)
    h_mm, h_pp, h_mp = hamiltonian_entries(inst.x, s, a)
    E0, E1, _, _ = eig2(h_mm, h_pp, h_mp)
    rows = [[float(s[i]), float(E0[i]), float(E1[i])] for i in range(len(s))]
    return FigureTable(
        figure_id="fig1",
        columns=["s", "E0", "E1"],
        rows=rows,
        metadata=_metadata("fig1", N=inst.N, epsilon=None, profile="quadratic"),
    )


def figure2_data(n: int = 6, epsilon: float = 1.0, n_grid: int = 1024) -> FigureTable:
    """Driven vs baseline evolution functions (t, s_driven, s_rc).

    Both curves come from local schedules; the driven one ends earlier, so
    its column is blank past its total runtime (the two curves keep their
    own time domains, mirroring an overlaid plot).
    """
    inst = make_instance(n)
    driven = local_schedule(inst, get_profile("quadratic"), epsilon)
    baseline = rc_schedule(inst, epsilon)
    t_grid = np.union1d(np.linspace(0.0, baseline.T, n_grid), [driven.T])
    s_rc = np.asarray(baseline.s_of_t(t_grid), dtype=float)
    rows = []
    for i, t in enumerate(t_grid):
        s_d = float(driven.s_of_t(t)) if t <= driven.T else None
        rows.append([float(t), s_d, float(s_rc[i])])
    return FigureTable(
        figure_id="fig2",
        columns=["t", "s_driven", "s_rc"],
        rows=rows,
        metadata=_metadata(
            "fig2", N=inst.N, epsilon=epsilon, profile="quadratic",
            T_driven=driven.T, T_rc=baseline.T,
        ),
    )


def figure3_data(n_range: Sequence[int] = tuple(range(2, 41, 2)), epsilon: float = 1.0) -> FigureTable:
    """Runtime vs database size (N, T_driven, T_rc, sqrtN), by quadrature."""
    quadratic = get_profile("quadratic")
    plain = get_profile("none")
    rows = []
    for n in n_range:
        inst = make_instance(n)
        t_driven = runtime_quadrature(inst, quadratic, epsilon).T
        t_rc = runtime_quadrature(inst, plain, epsilon).T
        rows.append([float(inst.N), t_driven, t_rc, math.sqrt(inst.N)])
    return FigureTable(
        figure_id="fig3",
        columns=["N", "T_driven", "T_rc", "sqrtN"],
        rows=rows,
        metadata=_metadata(
            "fig3", epsilon=epsilon, profile="quadratic+none", n_range=list(map(int, n_range)),
        ),
    )


@dataclass
class SweepConfig:
    n_values: List[int]
    profiles: List[str] = field(default_factory=lambda: ["quadratic"])
    epsilon: float = 1.0
    output_path: Optional[str] = None
    fmt: str = "csv"  # "csv" | "json"

    def __post_init__(self):
        if not self.n_values:
            raise InvalidArgumentError("sweep needs at least one n value")
        if self.fmt not in ("csv", "json"):
            raise InvalidArgumentError(f"format must be csv or json, got {self.fmt!r}")


def _max_workers() -> int:
    env = os.environ.get("ADIA_THREADS", "")
    if env.strip():
        return max(1, int(env))
    return os.cpu_count() or 1


def run_sweep(config: SweepConfig):
    """Runtime records for each (profile, n); persisted if output_path set.

    Guard violations are captured per record (an entry with an "error"
    field) and the sweep continues.  Row order is deterministic: sorted by
    profile kind, then n.
    """
    tasks = sorted((kind, n) for kind in config.profiles for n in config.n_values)

    def one(task):
        kind, n = task
        try:
            inst = make_instance(n)
            rec = runtime_quadrature(inst, get_profile(kind), config.epsilon)
            return rec
        except Exception as exc:
            return {"profile": kind, "n": n, "error": f"{type(exc).__name__}: {exc}"}

    with ThreadPoolExecutor(max_workers=_max_workers()) as pool:
        records = list(pool.map(one, tasks))

    if config.output_path:
        _write_records(records, config)
    return records


def _record_dict(rec):
    if isinstance(rec, dict):
        return rec
    return {
        "N": rec.N,
        "epsilon": rec.epsilon,
        "profile": rec.profile_kind,
        "T": rec.T,
        "g_min": rec.g_min,
        "method": rec.method,
    }


def _write_records(records, config: SweepConfig) -> None:
    try:
        if config.fmt == "json":
            payload = {
                "metadata": _metadata("sweep", epsilon=config.epsilon, profiles=config.profiles),
                "records": [_record_dict(r) for r in records],
            }
            with open(config.output_path, "w") as fh:
                json.dump(payload, fh, indent=2, sort_keys=True)
                fh.write("\n")
        else:
            rows = []
            for r in records:
                d = _record_dict(r)
                rows.append([
                    d.get("N"), d.get("epsilon", config.epsilon), d.get("profile"),
                    d.get("T"), d.get("g_min"), d.get("method", ""), d.get("error", ""),
                ])
            with open(config.output_path, "w", newline="") as fh:
                fh.write("# " + json.dumps(
                    _metadata("sweep", epsilon=config.epsilon, profiles=config.profiles),
                    sort_keys=True) + "\n")
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(["N", "epsilon", "profile", "T", "g_min", "method", "error"])
                for row in rows:
                    writer.writerow([
                        _fmt(row[0]) if row[0] is not None else "",
                        _fmt(row[1]), str(row[2] or ""),
                        _fmt(row[3]) if row[3] is not None else "",
                        _fmt(row[4]) if row[4] is not None else "",
                        str(row[5]), str(row[6]),
                    ])
    except OSError as exc:
        raise IOError(f"cannot write sweep output to {config.output_path!r}: {exc}") from exc


@dataclass(frozen=True)
class ProfileScaling:
    profile_kind: str
    exponent: float
    asymptote: float
    n_records: int
    vs_literature_constant: Optional[float] = None
    vs_derived_constant: Optional[float] = None


def scaling_report(records, min_N: int = 1024) -> dict:
    """Least-squares fit of log T vs log N per profile.

    Records with N < min_N are excluded from the fit (finite-size bias);
    pass min_N=0 to fit everything.  Returns {profile_kind: ProfileScaling}.
    """
    groups = {}
    for rec in records:
        d = _record_dict(rec)
        if "error" in d:
            continue
        groups.setdefault(d["profile"], []).append((d["N"], d["T"]))
    out = {}
    for kind, pts in groups.items():
        pts = sorted(p for p in pts if p[0] >= min_N)
        if len(pts) < 4:
            raise InvalidArgumentError(
                f"need >= 4 records per profile for a fit, got {len(pts)} for {kind!r} (N >= {min_N})"
            )
        logN = np.log([p[0] for p in pts])
        logT = np.log([p[1] for p in pts])
        slope, _ = np.polyfit(logN, logT, 1)
        asymptote = pts[-1][1]
        extras = {}
        if kind == "quadratic":
            extras = {
                "vs_literature_constant": asymptote - LITERATURE_ASYMPTOTE,
                "vs_derived_constant": asymptote - DERIVED_ASYMPTOTE,
            }
        out[kind] = ProfileScaling(
            profile_kind=kind, exponent=float(slope), asymptote=float(asymptote),
            n_records=len(pts), **extras,
        )
    return out


def write_figures(outdir: str, n: int = 6, epsilon: float = 1.0, stream=None) -> List[str]:
    """Write fig1_N<k>.csv, fig2_N<k>.csv and fig3.csv into outdir."""
    os.makedirs(outdir, exist_ok=True)
    stream = stream or sys.stdout
    N = 1 << n
    paths = []
    for table, name in (
        (figure1_data(n), f"fig1_N{N}.csv"),
        (figure2_data(n, epsilon), f"fig2_N{N}.csv"),
        (figure3_data(epsilon=epsilon), "fig3.csv"),
    ):
        path = os.path.join(outdir, name)
        table.write(path)
        paths.append(path)
        print(f"wrote {path}", file=stream)
    return paths
