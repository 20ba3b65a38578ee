"""ptwell command line: spectrum, phase, perturb, verify and wavefunction subcommands."""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .model import CouplingParams, InvalidParameters, as_spin
from .operators import run_verification
from .perturbation import compare_perturbation_exact, compare_zeff
from .secular import DEFAULT_TOL, extract_boundary, phase_scan, solve_spectrum
from .states import AccidentalNode, bound_state, eval_wavefunction, quasi_parity

EXIT_OK, EXIT_USAGE, EXIT_NONPHYSICAL, EXIT_VERIFY = 0, 1, 2, 3

DEFAULT_FORMAT = {"spectrum": "json", "verify": "json", "phase": "csv",
                  "perturb": "csv", "wavefunction": "csv"}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    params: CouplingParams | None
    n_max: int
    tol: float
    grid_n: int
    output: Path | None
    format: str


# -- rendering ------------------------------------------------------------------

def fmt_float(x) -> str:
    return format(float(x), ".17g")


def render_json(obj) -> str:
    """Deterministic JSON: insertion-ordered keys, 17 significant digits, null for non-finite."""
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {render_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(render_json(v) for v in obj) + "]"
    raise TypeError(f"cannot render {type(obj).__name__}")


def _cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return fmt_float(v)
    return "" if v is None else str(v)


def render_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        output.write_text(text if text.endswith("\n") else text + "\n")


def parse_range(spec: str) -> list:
    """'start:stop:step' with stop exclusive, or a single number."""
    parts = spec.split(":")
    try:
        vals = [float(p) for p in parts]
    except ValueError as exc:
        raise UsageError(f"bad range {spec!r}") from exc
    if len(vals) == 1:
        return vals
    if len(vals) != 3:
        raise UsageError(f"range must be start:stop:step, got {spec!r}")
    start, stop, step = vals
    if step <= 0:
        raise UsageError("range step must be positive")
    count = max(math.ceil(round((stop - start) / step, 9)), 0)
    return [round(start + i * step, 12) for i in range(count)]


def _pair_label(pair) -> str | None:
    if pair is None:
        return None
    n, m, sigma = pair
    return f"{n}-{m}:{sigma:+d}"


def _params_dict(p: CouplingParams) -> dict:
    return {"X": p.X, "Y": p.Y, "Z": p.Z}


# -- subcommands ----------------------------------------------------------------

def cmd_spectrum(cfg: RunConfig) -> int:
    res = solve_spectrum(cfg.params, cfg.n_max, cfg.tol)
    levels = []
    for lv in res.levels:
        try:
            qp = quasi_parity(lv)
        except AccidentalNode:
            qp = None
        levels.append({"n": lv.n, "sigma": int(lv.sigma), "s": lv.s, "t": lv.t,
                       "E": lv.E, "Q": lv.q, "quasi_parity": qp})
    if cfg.format == "json":
        doc = {"params": _params_dict(cfg.params), "levels": levels, "physical": res.physical,
               "tool_version": __version__,
               "first_complex_pair": list(res.first_complex_pair) if res.first_complex_pair else None}
        emit(render_json(doc), cfg.output)
    else:
        keys = ["n", "sigma", "s", "t", "E", "Q", "quasi_parity"]
        emit(render_csv(keys, ([lv[k] for k in keys] for lv in levels)), cfg.output)
    if not res.physical:
        print(f"non-physical: pair {_pair_label(res.first_complex_pair)} has complexified",
              file=sys.stderr)
        return EXIT_NONPHYSICAL
    return EXIT_OK


def cmd_phase(cfg: RunConfig, xy_spec: str, z_spec: str, threads: int | None) -> int:
    xy_grid, z_grid = parse_range(xy_spec), parse_range(z_spec)
    if any(xy < 0 for xy in xy_grid):
        raise UsageError("xy values must be non-negative")
    rows = phase_scan(xy_grid, z_grid, n_max=max(cfg.n_max, 1), threads=threads)
    boundary = extract_boundary(rows)
    b_rows = [(xy, z, z + math.sqrt(xy)) for xy, z in boundary]
    if cfg.format == "json":
        doc = {"rows": [{"xy": r.xy, "z": r.z, "physical": r.physical,
                         "first_complex_pair": _pair_label(r.first_complex_pair)} for r in rows],
               "boundary": [{"xy": a, "z_star": b, "z_star_plus_sqrt_xy": c} for a, b, c in b_rows],
               "tool_version": __version__}
        emit(render_json(doc), cfg.output)
        return EXIT_OK
    table = render_csv(["xy", "z", "physical", "first_complex_pair"],
                       ((r.xy, r.z, r.physical, _pair_label(r.first_complex_pair)) for r in rows))
    btable = render_csv(["xy", "z_star", "z_star_plus_sqrt_xy"], b_rows)
    if cfg.output is None:
        emit(table + "\n" + btable, None)
    else:
        emit(table, cfg.output)
        emit(btable, cfg.output.with_name(cfg.output.stem + "_boundary.csv"))
    return EXIT_OK


def cmd_perturb(cfg: RunConfig, n_spec: str, z_eff_value: float | None) -> int:
    ns = [int(round(v)) for v in parse_range(n_spec)]
    if any(n < 0 for n in ns):
        raise UsageError("level indices must be non-negative")
    if z_eff_value is not None:
        rows = compare_zeff(z_eff_value, ns)
    else:
        rows = compare_perturbation_exact(cfg.params, ns)
    header = ["n", "sigma", "q_exact", "q_order1", "q_order2", "err1", "err2"]
    data = [(r.n, r.sigma, r.q_exact, r.q_order1, r.q_order2, r.err1, r.err2) for r in rows]
    if cfg.format == "json":
        emit(render_json({"rows": [dict(zip(header, d)) for d in data],
                          "tool_version": __version__}), cfg.output)
    else:
        emit(render_csv(header, data), cfg.output)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, norm: str) -> int:
    rep = run_verification(cfg.params, grid_n=cfg.grid_n, n_max=cfg.n_max, norm=norm)
    doc = {"params": _params_dict(cfg.params), "grid_n": cfg.grid_n, "n_max": cfg.n_max,
           **rep.to_dict(), "tool_version": __version__}
    if cfg.format == "json":
        emit(render_json(doc), cfg.output)
    else:
        emit(render_csv(["identity", "residual", "tolerance", "passed"],
                        ((k, e.residual, e.tolerance, e.passed) for k, e in rep.entries.items())),
             cfg.output)
    if not rep.passed:
        print("failed identities: " + ", ".join(rep.failures()), file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_wavefunction(cfg: RunConfig, n: int, sigma: str, samples: int) -> int:
    if samples < 2:
        raise UsageError("need at least 2 samples")
    if n < 0:
        raise UsageError("level index must be non-negative")
    st = bound_state(n, as_spin(int(sigma)), cfg.params, cfg.tol)
    x = np.linspace(-1.0, 1.0, samples)
    phi, chi = eval_wavefunction(st, cfg.params, x)
    header = ["x", "re_phi", "im_phi", "re_chi", "im_chi"]
    data = list(zip(x, phi.real, phi.imag, chi.real, chi.imag))
    if cfg.format == "json":
        emit(render_json({"params": _params_dict(cfg.params), "n": n, "sigma": int(st.sigma),
                          "E": st.E, "samples": [dict(zip(header, d)) for d in data],
                          "tool_version": __version__}), cfg.output)
    else:
        emit(render_csv(header, data), cfg.output)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--x", type=float, default=1.0, help="channel coupling X (> 0)")
    common.add_argument("--y", type=float, default=1.0, help="channel coupling Y (> 0)")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="root tolerance in s")
    common.add_argument("-o", "--output", type=Path, default=None, help="output file (default stdout)")
    common.add_argument("--format", choices=("json", "csv"), default=None)

    zopt = argparse.ArgumentParser(add_help=False)
    zopt.add_argument("--z", type=float, default=0.0, help="diagonal coupling Z")

    p = _Parser(prog="ptwell", description=__doc__)
    p.add_argument("--version", action="version", version=f"ptwell {__version__}")
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    sp = sub.add_parser("spectrum", parents=[common, zopt], help="real levels n <= n_max for both spins")
    sp.add_argument("--n-max", type=int, default=10)

    ph = sub.add_parser("phase", parents=[common], help="physical/non-physical scan over (xy, z)")
    ph.add_argument("--xy", default="0:4:0.5", help="xy range start:stop:step")
    ph.add_argument("--z", dest="z_range", default="0:5:0.1", help="z range start:stop:step")
    ph.add_argument("--n-max", type=int, default=1)
    ph.add_argument("--threads", type=int, default=None, help="worker cap (default PTWELL_THREADS)")

    pe = sub.add_parser("perturb", parents=[common, zopt], help="exact Q_n against its series")
    pe.add_argument("--n", dest="n_range", default="4:41:1", help="level range start:stop:step")
    pe.add_argument("--z-eff", type=float, default=None, help="use one channel at this Z_eff")

    ve = sub.add_parser("verify", parents=[common, zopt], help="operator identity suite on a grid")
    ve.add_argument("--grid-n", type=int, default=200)
    ve.add_argument("--n-max", type=int, default=8)
    ve.add_argument("--norm", choices=("max", "power"), default="max")

    wf = sub.add_parser("wavefunction", parents=[common, zopt], help="sample (phi, chi) on [-1, 1]")
    wf.add_argument("--n", type=int, default=0)
    wf.add_argument("--sigma", default="+1", choices=("+1", "1", "-1"))
    wf.add_argument("--samples", type=int, default=101)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, --version and usage errors
        return int(exc.code or 0)
    sc = args.subcommand
    try:
        params = None
        if not (sc == "perturb" and args.z_eff is not None):
            params = CouplingParams(args.x, args.y, getattr(args, "z", 0.0))
        if args.tol <= 0:
            raise UsageError("tol must be positive")
        n_max = getattr(args, "n_max", 0)
        if n_max < 0:
            raise UsageError("n-max must be non-negative")
        cfg = RunConfig(subcommand=sc, params=params, n_max=n_max, tol=args.tol,
                        grid_n=getattr(args, "grid_n", 200), output=args.output,
                        format=args.format or DEFAULT_FORMAT[sc])
        if sc == "spectrum":
            return cmd_spectrum(cfg)
        if sc == "phase":
            return cmd_phase(cfg, args.xy, args.z_range, args.threads)
        if sc == "perturb":
            return cmd_perturb(cfg, args.n_range, args.z_eff)
        if sc == "verify":
            return cmd_verify(cfg, args.norm)
        return cmd_wavefunction(cfg, args.n, args.sigma, args.samples)
    except (InvalidParameters, UsageError, ValueError) as exc:
        print(f"ptwell {sc}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # solver failure outside the documented paths
        print(f"ptwell {sc}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
