"""Command line interface: parameter sweeps to CSV, oracle equivalence
checks and closest-separable-state runs.

Subcommands: sweep, oracle-check, css. Every config-file key is also a
command-line flag; the command line wins. Exit codes: 0 success,
1 validation failure, 2 numerical failure.
"""

import argparse
import configparser
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import kernels, measures, oracle, refsearch
from .channel import ChannelParams, decoherence_factor, pure_reference_at
from .errors import QDephaseError
from .measures import MeasureRecord
from .refsearch import OptimizerConfig
from .states import family_state, load_state, maximally_mixed, state_to_json

FIG_EPSILONS = (0.5, 0.42, 0.37, 0.32, 0.26, 0.19, 0.12, 0.05)

CSV_COLUMNS = ("epsilon,t,gamma,abs_a,delta12,negativity,concurrence_wootters,"
               "concurrence_paper,eof,fidelity_pure,e_pure,e_mixed,e_maxmixed,"
               "er_exact_nats,er_lin")
CSS_COLUMNS = ",css_e_value,css_pt_min_eig"

ORACLE_DIFF_BUDGET = 1e-8  # closed-form mismatch allowed on top of the tail


def _default_channel() -> ChannelParams:
    return ChannelParams(omega1=1.0, omega2=1.0, mu1=0.5, mu2=0.5, ntilde=1.0)


@dataclass
class SweepConfig:
    epsilon_list: tuple = FIG_EPSILONS
    t_max: float = 2.0 * math.pi  # one revival period of the default channel
    t_steps: int = 51
    channel: ChannelParams = field(default_factory=_default_channel)
    x_axis: str = "linear_entropy"
    include_css: bool = False
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    out_path: str = "sweep.csv"

    def __post_init__(self):
        self.epsilon_list = tuple(float(e) for e in self.epsilon_list)
        if not self.epsilon_list:
            raise ValueError("epsilon_list must be nonempty")
        if any(not 0.0 <= e <= 1.0 for e in self.epsilon_list):
            raise ValueError(f"every epsilon must be in [0, 1]: {self.epsilon_list}")
        if self.t_steps < 2:
            raise ValueError(f"t_steps must be >= 2, got {self.t_steps}")
        if self.x_axis not in ("linear_entropy", "fidelity_pure", "time"):
            raise ValueError(f"unknown x_axis {self.x_axis!r}")


def build_record(epsilon: float, c: ChannelParams, t: float) -> MeasureRecord:
    """Every measure at one (epsilon, t) sweep point."""
    dec = decoherence_factor(c, t)
    rho = family_state(epsilon, dec.a)
    sigma_p = pure_reference_at(epsilon, c, t)
    abs_a = abs(dec.a)
    rel_phase = c.ntilde * math.sin((c.mu1 + c.mu2) * t)

    er_lin = measures.relative_entropy_linearized(rho, sigma_p)
    try:
        er_exact = measures.relative_entropy_exact(sigma_p, rho)
    except QDephaseError:
        er_exact = math.inf
    return MeasureRecord(
        epsilon=epsilon,
        t=t,
        gamma=dec.gamma,
        abs_a=abs_a,
        delta12=measures.linear_entropy(rho),
        negativity=measures.negativity(rho),
        concurrence_wootters=measures.concurrence_wootters(rho),
        concurrence_paper=measures.concurrence_family(epsilon, abs_a),
        eof=measures.eof(measures.concurrence_wootters(rho)),
        fidelity_pure=measures.uhlmann_fidelity(rho, sigma_p),
        e_pure=1.0 - er_lin,
        e_mixed=refsearch.mixed_ref_measure_family(epsilon, abs_a, c.ntilde,
                                                   rel_phase),
        e_maxmixed=1.0 - math.sqrt(
            measures.uhlmann_fidelity(rho, maximally_mixed())),
        er_exact=er_exact,
        er_lin=er_lin,
    )


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf"
    return f"{x:.12g}"


def run_sweep(cfg: SweepConfig) -> dict:
    """Write one CSV row per (epsilon, t) grid point; return the summary."""
    ts = np.linspace(0.0, cfg.t_max, cfg.t_steps)
    header = CSV_COLUMNS + (CSS_COLUMNS if cfg.include_css else "")
    lines = [header]
    records = []
    for eps in sorted(cfg.epsilon_list):
        for t in ts:
            rec = build_record(eps, cfg.channel, float(t))
            problems = rec.violations()
            if problems:
                raise ArithmeticError(
                    f"record invariants violated at eps={eps}, t={t}: {problems}")
            records.append(rec)
            row = [rec.epsilon, rec.t, rec.gamma, rec.abs_a, rec.delta12,
                   rec.negativity, rec.concurrence_wootters,
                   rec.concurrence_paper, rec.eof, rec.fidelity_pure,
                   rec.e_pure, rec.e_mixed, rec.e_maxmixed, rec.er_exact,
                   rec.er_lin]
            if cfg.include_css:
                rho = family_state(eps, decoherence_factor(cfg.channel, float(t)).a)
                css = refsearch.closest_separable_bures(rho, cfg.optimizer)
                row += [css.e_value, css.pt_min_eig]
            lines.append(",".join(_fmt(v) for v in row))
    with open(cfg.out_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")

    report = refsearch.ordering_check(records)
    return {
        "out": cfg.out_path,
        "rows": len(records),
        "x_axis": cfg.x_axis,
        "kernel_backend": kernels.BACKEND,
        "max_delta12": report.max_delta12,
        "ordering": report.as_dict(),
    }


def run_oracle_check(r: oracle.ReservoirConfig, c: ChannelParams,
                     epsilon: float, t_grid) -> dict:
    """Compare the exact reservoir reduction with the closed form on a t grid."""
    joint = oracle.build_joint(epsilon, r)
    threshold = ORACLE_DIFF_BUDGET + 10.0 * r.cutoff_tail
    diffs = []
    offsets = []
    for t in t_grid:
        evolved = oracle.evolve_joint(joint, r, c, float(t))
        _, diff = oracle.reduce_and_compare(evolved, epsilon, c, float(t))
        diffs.append(diff)
        offsets.append(oracle.corner_phase_offset(evolved, epsilon, c, float(t)))
    max_diff = max(diffs)
    return {
        "config": {
            "modes": r.modes,
            "alphas": [[a.real, a.imag] for a in r.alphas],
            "omega_ratios": list(r.omega_ratios),
            "mu_cross": r.mu_cross,
            "mu12": r.mu12,
            "cutoff_tail": r.cutoff_tail,
            "epsilon": epsilon,
            "channel": {"omega1": c.omega1, "omega2": c.omega2,
                        "mu1": c.mu1, "mu2": c.mu2, "ntilde": c.ntilde},
        },
        "t_grid": [float(t) for t in t_grid],
        "max_abs_diff": diffs,
        "corner_phase_offset": offsets,
        "max_diff": max_diff,
        "threshold": threshold,
        "passed": bool(max_diff <= threshold),
    }


def run_css(state_path: str, cfg: OptimizerConfig) -> dict:
    """Closest-separable-state search for a state stored as JSON."""
    rho = load_state(state_path)
    res = refsearch.closest_separable_bures(rho, cfg)
    return {
        "e_value": res.e_value,
        "pt_min_eig": res.pt_min_eig,
        "iterations": res.iterations,
        "converged": res.converged,
        "feasible": bool(res.pt_min_eig >= refsearch.PT_FEASIBILITY),
        "sigma_star": state_to_json(res.sigma_star),
    }


# ---------------------------------------------------------------- config I/O


def _load_config(path) -> dict:
    """Flat key/value sections -> nested dict of strings."""
    parser = configparser.ConfigParser()
    with open(path, encoding="utf-8") as fh:
        parser.read_file(fh)
    return {s: dict(parser.items(s)) for s in parser.sections()}


def _get(cfg: dict, section: str, key: str, cast, default):
    raw = cfg.get(section, {}).get(key)
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError as exc:
        raise ValueError(f"config [{section}] {key} = {raw!r}: {exc}") from exc


def _floats(raw: str) -> tuple:
    return tuple(float(tok) for tok in str(raw).split(",") if tok.strip())


def _complexes(raw: str) -> tuple:
    return tuple(complex(tok) for tok in str(raw).split(",") if tok.strip())


def _bool(raw) -> bool:
    if isinstance(raw, bool):
        return raw
    return str(raw).strip().lower() in ("1", "true", "yes", "on")


def _channel_from(cfg: dict, args) -> ChannelParams:
    base = _default_channel()
    vals = {}
    for name in ("omega1", "omega2", "mu1", "mu2", "ntilde"):
        v = _get(cfg, "channel", name, float, getattr(base, name))
        arg = getattr(args, name, None)
        vals[name] = float(arg) if arg is not None else v
    return ChannelParams(**vals)


def _optimizer_from(cfg: dict, args) -> OptimizerConfig:
    base = OptimizerConfig()
    spec = {"max_iters": int, "restarts": int, "penalty_weight": float,
            "tol": float, "seed": int}
    vals = {}
    for name, cast in spec.items():
        v = _get(cfg, "optimizer", name, cast, getattr(base, name))
        arg = getattr(args, f"opt_{name}", None)
        vals[name] = cast(arg) if arg is not None else v
    return OptimizerConfig(**vals)


def _add_channel_flags(p):
    p.add_argument("--omega1", type=float, help="qubit 1 frequency (rad/s)")
    p.add_argument("--omega2", type=float, help="qubit 2 frequency (rad/s)")
    p.add_argument("--mu1", type=float, help="qubit 1 reservoir coupling (rad/s)")
    p.add_argument("--mu2", type=float, help="qubit 2 reservoir coupling (rad/s)")
    p.add_argument("--ntilde", type=float, help="effective reservoir excitation")


def _add_optimizer_flags(p):
    p.add_argument("--opt-max-iters", dest="opt_max_iters", type=int)
    p.add_argument("--opt-restarts", dest="opt_restarts", type=int)
    p.add_argument("--opt-penalty-weight", dest="opt_penalty_weight", type=float)
    p.add_argument("--opt-tol", dest="opt_tol", type=float)
    p.add_argument("--opt-seed", dest="opt_seed", type=int)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qdephase",
        description="Entanglement versus mixedness for two coupled qubits "
                    "under a phase-damping channel.")
    sub = ap.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="emit measure records over an (epsilon, t) grid")
    sw.add_argument("--config", help="INI-style config file")
    sw.add_argument("--epsilon-list", help="comma-separated epsilon values")
    sw.add_argument("--t-max", type=float, help="end of the time grid (s)")
    sw.add_argument("--t-steps", type=int, help="number of grid points")
    sw.add_argument("--x-axis", choices=("linear_entropy", "fidelity_pure", "time"))
    sw.add_argument("--include-css", action="store_true", default=None,
                    help="append closest-separable-state columns (slow)")
    sw.add_argument("--out", help="CSV output path")
    _add_channel_flags(sw)
    _add_optimizer_flags(sw)

    oc = sub.add_parser("oracle-check", help="compare the exact reservoir "
                                             "reduction with the closed form")
    oc.add_argument("--config", help="INI-style config file")
    oc.add_argument("--modes", type=int, help="reservoir mode count")
    oc.add_argument("--alphas", help="comma-separated coherent amplitudes "
                                     "(complex literals); default splits "
                                     "ntilde evenly")
    oc.add_argument("--omega-ratios", help="comma-separated frequency ratios")
    oc.add_argument("--mu-cross", type=float, help="reservoir cross-Kerr (rad/s)")
    oc.add_argument("--mu12", type=float, help="qubit-qubit coupling (rad/s)")
    oc.add_argument("--cutoff-tail", type=float, help="truncation tail bound")
    oc.add_argument("--epsilon", type=float, help="family mixing weight")
    oc.add_argument("--t-max", type=float, help="end of the time grid (s); "
                                                "default one revival period")
    oc.add_argument("--t-steps", type=int, help="number of grid points")
    oc.add_argument("--out", help="write the JSON report here as well")
    _add_channel_flags(oc)

    cs = sub.add_parser("css", help="closest separable state for a JSON state file")
    cs.add_argument("state", help="path to a state JSON file")
    cs.add_argument("--out", help="write the JSON report here as well")
    _add_optimizer_flags(cs)
    return ap


def _cmd_sweep(args) -> int:
    cfg_file = _load_config(args.config) if args.config else {}
    channel = _channel_from(cfg_file, args)
    optimizer = _optimizer_from(cfg_file, args)
    eps = (_floats(args.epsilon_list) if args.epsilon_list is not None
           else _get(cfg_file, "sweep", "epsilon_list", _floats, FIG_EPSILONS))
    include_css = (args.include_css if args.include_css is not None
                   else _get(cfg_file, "sweep", "include_css", _bool, False))
    cfg = SweepConfig(
        epsilon_list=eps,
        t_max=(args.t_max if args.t_max is not None
               else _get(cfg_file, "sweep", "t_max", float, channel.period)),
        t_steps=(args.t_steps if args.t_steps is not None
                 else _get(cfg_file, "sweep", "t_steps", int, 51)),
        channel=channel,
        x_axis=(args.x_axis if args.x_axis is not None
                else _get(cfg_file, "sweep", "x_axis", str, "linear_entropy")),
        include_css=include_css,
        optimizer=optimizer,
        out_path=(args.out if args.out is not None
                  else _get(cfg_file, "sweep", "out", str, "sweep.csv")),
    )
    summary = run_sweep(cfg)
    print(json.dumps(summary, indent=2))
    return 0 if not summary["ordering"]["violations"] else 2


def _cmd_oracle_check(args) -> int:
    cfg_file = _load_config(args.config) if args.config else {}
    channel_base = _channel_from(cfg_file, args)
    modes = (args.modes if args.modes is not None
             else _get(cfg_file, "oracle", "modes", int, 3))
    ntilde = channel_base.ntilde
    if args.alphas is not None:
        alphas = _complexes(args.alphas)
    else:
        alphas = _get(cfg_file, "oracle", "alphas", _complexes, None)
    if alphas is None:
        alphas = tuple(math.sqrt(ntilde / modes) for _ in range(modes))
    if args.omega_ratios is not None:
        ratios = _floats(args.omega_ratios)
    else:
        ratios = _get(cfg_file, "oracle", "omega_ratios", _floats,
                      tuple(1.0 for _ in alphas))
    r = oracle.ReservoirConfig(
        alphas=alphas,
        omega_ratios=ratios,
        mu_cross=(args.mu_cross if args.mu_cross is not None
                  else _get(cfg_file, "oracle", "mu_cross", float, 0.0)),
        mu12=(args.mu12 if args.mu12 is not None
              else _get(cfg_file, "oracle", "mu12", float, 0.0)),
        cutoff_tail=(args.cutoff_tail if args.cutoff_tail is not None
                     else _get(cfg_file, "oracle", "cutoff_tail", float, 1e-10)),
    )
    # the closed form must be fed the reservoir's actual excitation
    channel = r.channel_params(channel_base.omega1, channel_base.omega2,
                               channel_base.mu1, channel_base.mu2)
    epsilon = (args.epsilon if args.epsilon is not None
               else _get(cfg_file, "oracle", "epsilon", float, 0.5))
    t_max = (args.t_max if args.t_max is not None
             else _get(cfg_file, "oracle", "t_max", float, channel.period))
    t_steps = (args.t_steps if args.t_steps is not None
               else _get(cfg_file, "oracle", "t_steps", int, 50))
    report = run_oracle_check(r, channel, epsilon,
                              np.linspace(0.0, t_max, t_steps))
    text = json.dumps(report, indent=2)
    print(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return 0 if report["passed"] else 2


def _cmd_css(args) -> int:
    cfg = _optimizer_from({}, args)
    report = run_css(args.state, cfg)
    text = json.dumps(report, indent=2)
    print(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return 0 if report["feasible"] else 2


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "oracle-check":
            return _cmd_oracle_check(args)
        if args.command == "css":
            return _cmd_css(args)
        raise ValueError(f"unknown command {args.command!r}")
    except (QDephaseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ArithmeticError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
