"""Command-line front end.

Subcommands: cross-section, potential, witness, spectrum, sweep, mesh.
"""

import argparse
from concurrent.futures import ProcessPoolExecutor
import io
import sys

import numpy as np

from . import cross_section as cs, geometry, potential as pt, solver
from .config import RunConfig, parse_config, with_overrides
from .errors import TwistguideError

SPECTRUM_SCHEMA = "# twistguide spectrum v1"
SPECTRUM_COLUMNS = ["parameter", "value", "beta", "c", "threshold", "count",
                    "tail_threshold", "count_below_tail", "eigenvalues"]


def _g(v):
    return f"{v + 0.0:.12g}"


def _csv(rows, header, schema):
    buf = io.StringIO()
    buf.write(schema + "\n")
    buf.write(",".join(header) + "\n")
    for r in rows:
        buf.write(",".join(_g(v) if isinstance(v, float) else str(v) for v in r) + "\n")
    return buf.getvalue()


def _kv(pairs):
    return "".join(f"{k} = {_g(v) if isinstance(v, float) else v}\n" for k, v in pairs)


def _emit(text, cfg):
    if cfg.out_path:
        with open(cfg.out_path, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _spec(cfg):
    S = cfg.section()
    E1, chi = cs.first_eigenpair(S, cfg.beta)
    return S, E1, pt.PotentialSpec(cs.moments(S, chi), cfg.beta, cfg.twist())


def cmd_cross_section(cfg, args):
    S, E1, spec = _spec(cfg)
    m = spec.moments
    pairs = [("beta", cfg.beta), ("E1", E1)] + list(m.as_dict().items())
    pairs.append(("A1+B1-2C1", m.twist_coefficient))
    if cfg.out_format == "csv":
        return _csv([[v for _, v in pairs]], [k for k, _ in pairs], "# twistguide cross-section v1")
    return _kv(pairs)


def cmd_potential(cfg, args):
    _, E1, spec = _spec(cfg)
    rep = pt.integral_V(spec, X=args.window)
    table = pt.sample_table(spec, (-args.x_max, args.x_max), args.samples)
    head = [
        "# twistguide potential v1",
        f"# integral_V = {_g(rep.integral_V)}",
        f"# integrable = {rep.integrable}",
        f"# hypothesis_met = {rep.hypothesis_met}",
        f"# window = {_g(rep.window)}",
    ]
    body = _csv(table.tolist(), ["x", "alpha", "alpha_prime", "V"], "\n".join(head))
    return body


def cmd_witness(cfg, args):
    _, E1, spec = _spec(cfg)
    tab = pt.witness_sequence(spec, args.n_max, E1)
    head = f"# twistguide witness v1\n# integral_V = {_g(tab.integral_V)}\n# first_negative = {tab.first_negative}"
    return _csv([[n, q] for n, q in zip(tab.n, tab.q)], ["n", "q"], head)


def spectrum_point(cfg, parameter="c", value=None):
    """One spectrum run, returned as a CSV row (list) and the full result."""
    res = solver.analyze(cfg.section(), cfg.beta, cfg.twist(), cfg.L, cfg.nx, cfg.modes, cfg.tol)
    d = res.diagnostics
    value = getattr(cfg, parameter) if value is None else value
    row = [parameter, float(value), float(cfg.beta), float(cfg.c), float(res.threshold), res.count,
           float(d["tail_threshold"]), d["count_below_tail"],
           " ".join(_g(v) for v in res.eigenvalues_below)]
    return row, res


def _sweep_worker(item):
    cfg, parameter, value = item
    return spectrum_point(cfg, parameter, value)[0]


def cmd_spectrum(cfg, args):
    row, res = spectrum_point(cfg)
    if cfg.out_format == "csv":
        return _csv([row], SPECTRUM_COLUMNS, SPECTRUM_SCHEMA)
    return res.record()


def cmd_sweep(cfg, args):
    param = args.param
    values = [float(v) for v in args.values.split(",")] if args.values else \
        list(np.linspace(args.start, args.stop, args.num))
    key = {"c": "c", "beta": "beta"}[param]
    items = [(with_overrides(cfg, **{key: v}), param, v) for v in values]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_sweep_worker, items))
    else:
        rows = [_sweep_worker(it) for it in items]
    return _csv(rows, SPECTRUM_COLUMNS, SPECTRUM_SCHEMA)


def cmd_mesh(cfg, args):
    S = cfg.section()
    p = geometry.WaveguideParams(cfg.beta, cfg.twist())
    mesh = geometry.surface_mesh(p, S, tuple(args.x_range), tuple(args.resolution))
    return mesh.to_text()


COMMANDS = {
    "cross-section": cmd_cross_section,
    "potential": cmd_potential,
    "witness": cmd_witness,
    "spectrum": cmd_spectrum,
    "sweep": cmd_sweep,
    "mesh": cmd_mesh,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value configuration file")
    common.add_argument("--beta", type=float)
    common.add_argument("--c", type=float, help="twist amplitude")
    common.add_argument("--L", type=float, help="half-length of the truncated guide")
    common.add_argument("--nx", type=int, help="interior nodes along the guide")
    common.add_argument("--modes", type=int, help="cross-section modes in the Galerkin basis")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=["csv", "kv"])

    parser = argparse.ArgumentParser(prog="twistguide", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("cross-section", parents=[common], help="E1(beta) and moments")
    p = sub.add_parser("potential", parents=[common], help="effective potential samples and integral")
    p.add_argument("--x-max", type=float, default=10.0)
    p.add_argument("--samples", type=int, default=401)
    p.add_argument("--window", type=float, default=20.0)
    p = sub.add_parser("witness", parents=[common], help="trial-state energies q(psi_n)")
    p.add_argument("--n-max", type=int, default=32)
    sub.add_parser("spectrum", parents=[common], help="eigenvalues below E1(beta)")
    p = sub.add_parser("sweep", parents=[common], help="spectrum over a parameter grid")
    p.add_argument("--param", choices=["c", "beta"], default="c")
    p.add_argument("--values", help="comma-separated parameter values")
    p.add_argument("--start", type=float, default=0.1)
    p.add_argument("--stop", type=float, default=2.0)
    p.add_argument("--num", type=int, default=5)
    p.add_argument("--jobs", type=int, default=1)
    p = sub.add_parser("mesh", parents=[common], help="surface mesh of the guide")
    p.add_argument("--x-range", type=float, nargs=2, default=[-5.0, 5.0])
    p.add_argument("--resolution", type=int, nargs=2, default=[50, 20])
    return parser


def load_config(args):
    cfg = RunConfig()
    if args.config:
        with open(args.config) as fh:
            cfg = parse_config(fh.read())
    return with_overrides(cfg, beta=args.beta, c=args.c, L=args.L, nx=args.nx, modes=args.modes,
                          out_path=args.out, out_format=args.format)


def run(argv=None):
    """Parse ``argv`` and execute; returns ``(exit_status, text, config)``."""
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args)
        text = COMMANDS[args.command](cfg, args)
    except (TwistguideError, ValueError, OSError) as exc:
        return 1, f"twistguide: error: {exc}\n", None
    return 0, text, cfg


def main(argv=None):
    status, text, cfg = run(argv)
    if status:
        sys.stderr.write(text)
        return status
    _emit(text, cfg)
    return 0


if __name__ == "__main__":
    sys.exit(main())
