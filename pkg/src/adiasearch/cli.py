"""Command-line front end: gap, schedule, evolve, sweep, figures, report.

The CLI adds no computation of its own; every printed result is
reproducible through the library API with the printed parameters.  All
runs are deterministic.
"""

import argparse
import json
import sys

from .errors import InvalidArgumentError, ResourceLimitError
from .experiments import (
    SweepConfig,
    FigureTable,
    run_sweep,
    scaling_report,
    write_figures,
    _metadata,
)
from .model import build_full, get_profile, make_instance
from .schedule import (
    asymptotic_runtime,
    linear_schedule,
    local_schedule,
    runtime_quadrature,
)
from .spectrum import gap_closed_form, gap_numeric, min_gap
from .dynamics import propagate, propagate_full

PROFILE_ALIASES = {
    "none": "none",
    "quadratic": "quadratic",
    "sqrt": "sqrt_product",
    "sqrt_product": "sqrt_product",
    "alt": "alt",
}


def _profile_arg(name: str):
    try:
        return get_profile(PROFILE_ALIASES[name])
    except KeyError:
        raise InvalidArgumentError(f"unknown profile {name!r}") from None


def _out_stream(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", newline=""), True


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="adiasearch",
        description="Driven-path local adiabatic quantum search: spectra, schedules, dynamics.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, epsilon_default=1.0):
        sp.add_argument("--log2n", type=int, required=True, help="qubit count n (database size N = 2^n)")
        sp.add_argument("--profile", default="quadratic", choices=sorted(PROFILE_ALIASES))
        sp.add_argument("--epsilon", type=float, default=epsilon_default)

    sp = sub.add_parser("gap", help="spectral gap at a given s, or the minimum gap")
    sp.add_argument("--log2n", type=int, required=True)
    sp.add_argument("--profile", default="quadratic", choices=sorted(PROFILE_ALIASES))
    sp.add_argument("--s", type=float, default=None)
    sp.add_argument("--full-space", action="store_true", help="cross-check against the dense oracle (n <= 12)")

    sp = sub.add_parser("schedule", help="emit a (t, s) schedule table")
    common(sp)
    sp.add_argument("--method", default="local", choices=["local", "linear"])
    sp.add_argument("--T", type=float, default=None, help="total runtime for --method linear")
    sp.add_argument("--output", default="-")

    sp = sub.add_parser("evolve", help="propagate along a local schedule and print fidelities")
    common(sp, epsilon_default=0.05)
    sp.add_argument("--substeps", type=int, default=16)
    sp.add_argument("--full-space", action="store_true", help="dense-space propagation (n <= 10)")

    sp = sub.add_parser("sweep", help="runtime records over a set of sizes/profiles")
    sp.add_argument("--config", default=None, help="JSON file with the same keys; flags override")
    sp.add_argument("--n", type=int, nargs="*", default=None, help="qubit counts")
    sp.add_argument("--profiles", nargs="*", default=None, choices=sorted(PROFILE_ALIASES))
    sp.add_argument("--epsilon", type=float, default=None)
    sp.add_argument("--output", default=None)
    sp.add_argument("--format", dest="fmt", default=None, choices=["csv", "json"])

    sp = sub.add_parser("figures", help="regenerate the reference figure tables as CSV")
    sp.add_argument("--log2n", type=int, default=6)
    sp.add_argument("--epsilon", type=float, default=1.0)
    sp.add_argument("--outdir", default=".")

    sp = sub.add_parser("report", help="scaling fit of T vs N with asymptote comparison")
    sp.add_argument("--input", default=None, help="sweep JSON produced by the sweep subcommand")
    sp.add_argument("--n-min", type=int, default=6)
    sp.add_argument("--n-max", type=int, default=20)
    sp.add_argument("--profiles", nargs="*", default=["none", "quadratic"], choices=sorted(PROFILE_ALIASES))
    sp.add_argument("--epsilon", type=float, default=1.0)
    sp.add_argument("--fit-min-n", type=int, default=10, help="exclude N < 2^this from the fit")

    return p


def _cmd_gap(args) -> int:
    inst = make_instance(args.log2n)
    profile = _profile_arg(args.profile)
    if args.s is not None:
        if profile.kind == "quadratic":
            g = gap_closed_form(inst, args.s)
        else:
            g = float(gap_numeric(inst, profile, args.s))
        print(f"N={inst.N} profile={profile.kind} s={args.s:g} g={g:.12g}")
        if args.full_space:
            from .oracle import dense_two_lowest

            H = build_full(inst, profile, args.s)
            e0, e1, _ = dense_two_lowest(H)
            print(f"dense oracle: E0={e0:.12g} E1={e1:.12g} g={e1 - e0:.12g}")
    else:
        rep = min_gap(inst, profile)
        print(
            f"N={inst.N} profile={profile.kind} s*={rep.s_star:.12g} "
            f"g_min={rep.g_min:.12g} method={rep.method}"
        )
    return 0


def _cmd_schedule(args) -> int:
    inst = make_instance(args.log2n)
    profile = _profile_arg(args.profile)
    if args.method == "linear":
        if args.T is None:
            raise InvalidArgumentError("--method linear requires --T")
        sched = linear_schedule(inst, args.T)
    else:
        sched = local_schedule(inst, profile, args.epsilon)
    table = FigureTable(
        figure_id="schedule",
        columns=["t", "s"],
        rows=[[float(t), float(s)] for t, s in zip(sched.t, sched.s)],
        metadata=_metadata(
            "schedule", N=inst.N, epsilon=args.epsilon, profile=profile.kind,
            method=sched.method, T=sched.T,
        ),
    )
    stream, close = _out_stream(args.output)
    try:
        table.to_csv(stream)
    finally:
        if close:
            stream.close()
    print(f"T={sched.T:.12g} (method={sched.method})", file=sys.stderr)
    return 0


def _cmd_evolve(args) -> int:
    inst = make_instance(args.log2n)
    profile = _profile_arg(args.profile)
    sched = local_schedule(inst, profile, args.epsilon)
    if args.full_space:
        result = propagate_full(inst, profile, sched, substeps_per_sample=args.substeps)
        extra = f" leakage={result.max_leakage:.3e}"
    else:
        result = propagate(inst, profile, sched, substeps_per_sample=args.substeps)
        extra = ""
    print(
        f"N={inst.N} profile={profile.kind} epsilon={args.epsilon:g} T={sched.T:.6g} "
        f"marked_fidelity={result.final_marked_fidelity:.10f} "
        f"ground_fidelity={result.final_ground_fidelity:.10f} "
        f"norm_drift={result.norm_drift:.3e}{extra}"
    )
    return 0


def _cmd_sweep(args) -> int:
    cfg = {}
    if args.config:
        with open(args.config) as fh:
            cfg = json.load(fh)
    n_values = args.n if args.n is not None else cfg.get("n", [4, 6, 8, 10])
    profiles = args.profiles if args.profiles is not None else cfg.get("profiles", ["quadratic"])
    epsilon = args.epsilon if args.epsilon is not None else cfg.get("epsilon", 1.0)
    output = args.output if args.output is not None else cfg.get("output")
    fmt = args.fmt if args.fmt is not None else cfg.get("format", "csv")
    config = SweepConfig(
        n_values=list(n_values),
        profiles=[PROFILE_ALIASES[p] for p in profiles],
        epsilon=float(epsilon),
        output_path=output,
        fmt=fmt,
    )
    records = run_sweep(config)
    for rec in records:
        if isinstance(rec, dict):
            print(f"profile={rec['profile']} n={rec['n']} ERROR {rec['error']}")
        else:
            print(
                f"profile={rec.profile_kind} N={rec.N} T={rec.T:.12g} g_min={rec.g_min:.12g}"
            )
    if output:
        print(f"wrote {output}", file=sys.stderr)
    return 0


def _cmd_figures(args) -> int:
    write_figures(args.outdir, n=args.log2n, epsilon=args.epsilon)
    return 0


def _cmd_report(args) -> int:
    if args.input:
        with open(args.input) as fh:
            records = json.load(fh)["records"]
    else:
        config = SweepConfig(
            n_values=list(range(args.n_min, args.n_max + 1, 2)),
            profiles=[PROFILE_ALIASES[p] for p in args.profiles],
            epsilon=args.epsilon,
        )
        records = run_sweep(config)
    fits = scaling_report(records, min_N=1 << args.fit_min_n)
    for kind, fit in sorted(fits.items()):
        line = (
            f"profile={kind} exponent={fit.exponent:+.4f} "
            f"asymptote={fit.asymptote:.10g} (fit over {fit.n_records} sizes)"
        )
        if fit.vs_literature_constant is not None:
            line += (
                f" delta_vs_1+pi/4={fit.vs_literature_constant:+.6g}"
                f" delta_vs_1+pi/2={fit.vs_derived_constant:+.6g}"
            )
        print(line)
        if kind == "quadratic":
            rep = asymptotic_runtime(get_profile("quadratic"))
            print(
                f"quadratic x->0 asymptote by quadrature: {rep.value:.12g} "
                + " ".join(f"{k}={v:+.3e}" for k, v in sorted(rep.comparisons.items()))
            )
    return 0


COMMANDS = {
    "gap": _cmd_gap,
    "schedule": _cmd_schedule,
    "evolve": _cmd_evolve,
    "sweep": _cmd_sweep,
    "figures": _cmd_figures,
    "report": _cmd_report,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (InvalidArgumentError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
