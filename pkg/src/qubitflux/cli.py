"""Command-line front end.

Commands: fig2 (photon-number distributions), fig3 (kappa traces for the
four field states), sweep (derived couplings over a config parameter),
equiv (classical-vs-quantum bus report), couplings (print the derived
constants).  Every CSV is written deterministically (17 significant
digits, LF endings) and accompanied by a JSON manifest recording the
resolved configuration.

Exit codes: 0 success, 2 usage or configuration error, 3 internal
invariant failure.

The environment variable QUBITFLUX_SEED is reserved for future use; no
code path is stochastic today.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
import warnings
from dataclasses import dataclass, field, fields as dc_fields
from pathlib import Path

import numpy as np

from . import databus, observables, photon_states
from .dynamics import QubitInitial, amplitude_distance, evolve_closed_form, \
    evolve_full_quantized
from .errors import ConfigError, InvariantError
from .params import CircuitConfig, classify_drive, default_config, \
    derive_couplings, load_config

__all__ = ["main", "build_parser"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INVARIANT = 3

FIG_NBAR = 7.0
FIG3_TAU_MAX = 50.0
FIG3_TAU_STEP = 0.02
FIG3_SPOT_TAUS = (2.0, 10.0, 20.0, 35.0, 48.0)
FIG3_SPOT_TOL = 1e-8
FIG3_PANELS = (
    # (label, field kind, field phase)
    ("a", "coherent", math.pi / 2.0),
    ("b", "coherent", 0.0),
    ("c", "even_cat", 0.0),
    ("d", "squeezed_vacuum", 0.0),
)


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    return f"{float(x):.17g}"


def _write_csv(path: Path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(x) for x in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


@dataclass
class RunManifest:
    """Provenance sidecar written next to every CSV."""

    command: str
    config: dict
    truncation: dict = field(default_factory=dict)
    tail_mass: dict = field(default_factory=dict)
    outputs: list = field(default_factory=list)
    duration_s: float = 0.0

    def write(self, csv_path: Path) -> None:
        payload = {f.name: getattr(self, f.name) for f in dc_fields(self)}
        csv_path.with_suffix(".manifest").write_text(
            json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )


def _gnuplot_script(csv_path: Path, columns: list[str]) -> None:
    lines = [f'set datafile separator ","', "set key autotitle columnhead"]
    plots = ", ".join(
        f'"{csv_path.name}" using 1:{k + 2} with lines' for k in range(len(columns) - 1)
    )
    lines.append(f"plot {plots}")
    csv_path.with_suffix(".gp").write_text("\n".join(lines) + "\n", encoding="utf-8")


def _load(args) -> CircuitConfig:
    if args.config is None:
        return default_config()
    return load_config(args.config)


def _field_state(kind: str, phase: float, bound: float):
    trunc = photon_states.choose_truncation(kind, FIG_NBAR, bound)
    if kind == "coherent":
        state = photon_states.coherent(FIG_NBAR, phase, bound, n_max=trunc.n_max)
    elif kind == "even_cat":
        state = photon_states.even_cat(FIG_NBAR, bound, n_max=trunc.n_max)
    else:
        state = photon_states.squeezed_vacuum(FIG_NBAR, phase, bound, n_max=trunc.n_max)
    return state, trunc


def cmd_fig2(args) -> int:
    t0 = time.perf_counter()
    cfg = _load(args)  # validated even though only nbar = 7 feeds fig2
    bound = args.tail_bound
    states = {
        "coherent": photon_states.coherent(FIG_NBAR, 0.0, bound),
        "cat": photon_states.even_cat(FIG_NBAR, bound),
        "squeezed": photon_states.squeezed_vacuum(FIG_NBAR, 0.0, bound),
    }
    n_max = max(s.n_max for s in states.values())
    probs = {k: np.zeros(n_max + 1) for k in states}
    for k, s in states.items():
        probs[k][: s.n_max + 1] = s.probabilities()
    out = Path(args.out)
    header = ["n", "P_coherent", "P_cat", "P_squeezed"]
    rows = [
        (n, probs["coherent"][n], probs["cat"][n], probs["squeezed"][n])
        for n in range(n_max + 1)
    ]
    _write_csv(out, header, rows)
    if args.gnuplot:
        _gnuplot_script(out, header)
    RunManifest(
        command="fig2",
        config=cfg.to_dict(),
        truncation={k: s.n_max for k, s in states.items()},
        tail_mass={k: s.tail_mass for k, s in states.items()},
        outputs=[str(out)],
        duration_s=time.perf_counter() - t0,
    ).write(out)
    return EXIT_OK


def cmd_fig3(args) -> int:
    t0 = time.perf_counter()
    cfg = _load(args)
    bound = args.tail_bound
    init = QubitInitial(theta=math.pi / 4.0, phi=0.0)
    taus = np.arange(0.0, FIG3_TAU_MAX + FIG3_TAU_STEP / 2.0, FIG3_TAU_STEP)
    out = Path(args.out)
    outputs = []
    trunc_used = {}
    tails = {}
    for label, kind, phase in FIG3_PANELS:
        state, trunc = _field_state(kind, phase, bound)
        kappa = observables.kappa_q_series(init, state, taus)
        trace = observables.KappaTrace(taus, kappa, "quantized_field",
                                       dict(state.meta, kind=kind))
        trace.validate()
        # closed form against the independent propagator at spot times
        spots = evolve_full_quantized(init, state, FIG3_SPOT_TAUS)
        for tau, full in zip(FIG3_SPOT_TAUS, spots):
            closed = evolve_closed_form(init, state, tau)
            dist = amplitude_distance(closed, full)
            if dist > FIG3_SPOT_TOL:
                raise InvariantError(
                    f"panel {label}: closed-form/oracle distance {dist:.2e} "
                    f"at tau={tau}"
                )
        panel_path = out.with_name(f"{out.stem}_{label}{out.suffix or '.csv'}")
        _write_csv(panel_path, ["tau", "kappa"], zip(taus, kappa))
        if args.gnuplot:
            _gnuplot_script(panel_path, ["tau", "kappa"])
        outputs.append(str(panel_path))
        trunc_used[label] = trunc.n_max
        tails[label] = state.tail_mass
    manifest = RunManifest(
        command="fig3",
        config=cfg.to_dict(),
        truncation=trunc_used,
        tail_mass=tails,
        outputs=outputs,
        duration_s=time.perf_counter() - t0,
    )
    for path in outputs:
        manifest.write(Path(path))
    return EXIT_OK


SWEEP_COLUMNS = [
    "eta1", "eta2", "ebar_j1", "ebar_j2", "chi12", "eps01", "eps02", "delta",
    "chi_prime", "omega1", "omega2", "g1", "g2", "g12", "xi1", "xi2",
]


def cmd_sweep(args) -> int:
    t0 = time.perf_counter()
    cfg = _load(args)
    if args.key not in {f.name for f in dc_fields(CircuitConfig)}:
        raise ConfigError(f"unknown sweep key {args.key!r}")
    values = np.linspace(args.start, args.stop, args.num)
    rows = []
    for val in values:
        point = cfg.replace(**{args.key: float(val)})
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            dc = derive_couplings(point)
        match = classify_drive(point.drive_freq, dc, tol=args.tol)
        row = [val] + [getattr(dc, c) for c in SWEEP_COLUMNS]
        row += [dc.xi12.real, dc.xi12.imag, match.value]
        rows.append(row)
    out = Path(args.out)
    header = [args.key] + SWEEP_COLUMNS + ["xi12_re", "xi12_im", "match"]
    _write_csv(out, header, rows)
    if args.gnuplot:
        _gnuplot_script(out, header)
    RunManifest(
        command="sweep",
        config=cfg.to_dict(),
        truncation={},
        tail_mass={},
        outputs=[str(out)],
        duration_s=time.perf_counter() - t0,
    ).write(out)
    return EXIT_OK


def cmd_equiv(args) -> int:
    t0 = time.perf_counter()
    cfg = _load(args)
    report = databus.equivalence_report(cfg)
    out = Path(args.out)
    header = ["f_e", "chi_classical", "chi_quantum", "ratio",
              "omega_p_mult", "dyn_distance", "bus_ground_min"]
    rows = []
    for k in range(len(report.flux)):
        rows.append((report.flux[k], report.chi_classical[k],
                     report.chi_quantum[k], report.ratio[k], "", "", ""))
    for mult, dist, occ in zip(report.omega_p_ratios, report.dyn_distance,
                               report.bus_ground_min):
        rows.append((cfg.flux_dc, "", "", "", mult, dist, occ))
    _write_csv(out, header, rows)
    if args.gnuplot:
        _gnuplot_script(out, header)
    RunManifest(
        command="equiv",
        config=cfg.to_dict(),
        truncation={"bus_n_max": 10},
        tail_mass={},
        outputs=[str(out)],
        duration_s=time.perf_counter() - t0,
    ).write(out)
    return EXIT_OK


def cmd_couplings(args) -> int:
    t0 = time.perf_counter()
    cfg = _load(args)
    dc = derive_couplings(cfg)
    rows = [(c, getattr(dc, c)) for c in SWEEP_COLUMNS]
    rows += [("xi12_re", dc.xi12.real), ("xi12_im", dc.xi12.imag),
             ("drive_freq", dc.drive_freq),
             ("detuning_flagged", int(dc.detuning_flagged))]
    if args.out is None:
        for name, value in rows:
            print(f"{name} = {_fmt(value)}")
        return EXIT_OK
    out = Path(args.out)
    _write_csv(out, ["name", "value"], rows)
    RunManifest(
        command="couplings",
        config=cfg.to_dict(),
        truncation={},
        tail_mass={},
        outputs=[str(out)],
        duration_s=time.perf_counter() - t0,
    ).write(out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qubitflux",
        description="Two charge qubits coupled through a large Josephson "
                    "junction: figure data, parameter sweeps, bus reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_out=True):
        p.add_argument("--config", default=None, help="flat key = value file")
        if needs_out:
            p.add_argument("--out", required=True, help="output CSV path")
        p.add_argument("--tail-bound", type=float, default=1e-10,
                       dest="tail_bound", help="Fock truncation tail bound")
        p.add_argument("--tol", type=float, default=0.05,
                       help="relative tolerance for drive classification")
        p.add_argument("--gnuplot", action="store_true",
                       help="emit a companion gnuplot script")

    p = sub.add_parser("fig2", help="photon-number distributions at nbar = 7")
    common(p)
    p.set_defaults(func=cmd_fig2)

    p = sub.add_parser("fig3", help="kappa traces for the four field states")
    common(p)
    p.set_defaults(func=cmd_fig3)

    p = sub.add_parser("sweep", help="derived couplings over a config key")
    common(p)
    p.add_argument("--key", required=True, help="CircuitConfig field to sweep")
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--num", type=int, default=101)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("equiv", help="classical-vs-quantum bus report")
    common(p)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("couplings", help="print derived couplings")
    common(p, needs_out=False)
    p.add_argument("--out", default=None, help="optional output CSV path")
    p.set_defaults(func=cmd_couplings)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantError as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    raise SystemExit(main())
