"""``barrier-rhs`` command-line entry point.

Exit codes: 0 success, 1 failed verification, 2 bad configuration,
3 numerical failure (energy on the cut, unconverged quadrature).
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from dataclasses import asdict, replace

import numpy as np

from .config import ConfigError, RunConfig, load_config, parse_tolerances
from .errors import BarrierError

ANCHORS = {
    "coeffs": "plus-family scattering amplitudes on a real k grid",
    "eigen": "eigenfunction and derivative on an x grid",
    "green": "resolvent kernel G(x, x'; E) with symmetry and wave-number cross-checks",
    "transform": "two-component energy transform of a flattened Gaussian",
    "verify": "numerical identity checks",
    "wavepacket": "|phi(x, t)|^2 snapshots and late-time transmitted mass",
    "free-limit": "V0 -> 0 defects against the free particle",
}


# ---------------------------------------------------------------------------
# output


def _split_complex(name, values):
    values = np.asarray(values)
    if np.iscomplexobj(values):
        return {f"re_{name}": values.real, f"im_{name}": values.imag}
    return {name: values}


class Table:
    """Named columns plus free-form metadata written as comments or JSON keys."""

    def __init__(self, command: str, cfg: RunConfig, columns: dict, meta: dict | None = None):
        self.command = command
        self.cfg = cfg
        self.columns = {k: np.asarray(v) for k, v in columns.items()}
        self.meta = meta or {}

    def csv(self) -> str:
        buf = io.StringIO()
        meta = "".join(f" {k}={v:.17g}" if isinstance(v, float) else f" {k}={v}" for k, v in self.meta.items())
        buf.write(f"# barrier-rhs {self.command} | config {self.cfg.summary()} | anchor: {ANCHORS[self.command]}"
                  f"{' |' + meta if meta else ''}\n")
        names = list(self.columns)
        buf.write(",".join(names) + "\n")
        cols = [np.ravel(self.columns[n]) for n in names]
        for row in zip(*cols):
            buf.write(",".join(_fmt(v) for v in row) + "\n")
        return buf.getvalue()

    def json(self) -> str:
        doc = {
            "command": self.command,
            "config": _config_json(self.cfg),
            "anchor": ANCHORS[self.command],
            **self.meta,
            "columns": {k: [_jsonable(v) for v in np.ravel(c)] for k, c in self.columns.items()},
        }
        return json.dumps(doc, indent=1)


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (str, np.str_)):
        return str(v)
    return "%.17g" % float(v)


def _jsonable(v):
    if isinstance(v, (np.bool_, bool)):
        return bool(v)
    if isinstance(v, (np.str_, str)):
        return str(v)
    v = float(v)
    return v if np.isfinite(v) else str(v)


def _config_json(cfg: RunConfig) -> dict:
    d = asdict(cfg)
    d["energy"] = [cfg.energy.real, cfg.energy.imag]
    return d


# ---------------------------------------------------------------------------
# subcommands


def cmd_coeffs(cfg: RunConfig, args) -> Table:
    from .coefficients import plus_amplitudes
    from .core import branch_sqrt

    pc = cfg.physical
    k = np.linspace(cfg.k_min, cfg.k_max, cfg.n_k)
    cs = plus_amplitudes(pc, k, branch_sqrt(pc.scale * (pc.energy(k) - pc.v0)))
    cols = {"k": k, "energy": pc.energy(k)}
    for name, val in cs.as_dict().items():
        cols.update(_split_complex(name, val))
    t2, rl2, rr2 = np.abs(cs.t) ** 2, np.abs(cs.r_l) ** 2, np.abs(cs.r_r) ** 2
    cols.update({"abs_t2": t2, "abs_r_l2": rl2, "abs_r_r2": rr2,
                 "unitarity_defect": np.maximum(np.abs(t2 + rl2 - 1), np.abs(t2 + rr2 - 1))})
    return Table("coeffs", cfg, cols)


def cmd_eigen(cfg: RunConfig, args) -> Table:
    from .core import energy_point
    from .eigenfunctions import Eigenfunction, EigenfunctionId

    pc = cfg.physical
    f = Eigenfunction(pc, EigenfunctionId(cfg.family, cfg.side, energy_point(pc, cfg.energy)))
    x = np.linspace(cfg.x_min, cfg.x_max, cfg.n_x)
    return Table("eigen", cfg, {"x": x, **_split_complex("chi", f(x).astype(complex)),
                                **_split_complex("dchi", f.derivative(x).astype(complex))})


def cmd_green(cfg: RunConfig, args) -> Table:
    from .core import physical_wavenumber
    from .greens import green_k, resolvent_kernel

    pc = cfg.physical
    ker = resolvent_kernel(pc, cfg.energy)
    x = np.linspace(cfg.x_min, cfg.x_max, cfg.n_x)
    xx, xp = np.meshgrid(x, x, indexing="ij")
    g = ker(xx, xp)
    unified = green_k(pc, xx, xp, physical_wavenumber(pc, cfg.energy)).value
    scale = np.maximum(np.abs(g), 1e-300)
    return Table("green", cfg, {"x": xx, "x_prime": xp, **_split_complex("g", g),
                                "symmetry_defect": np.abs(g - ker(xp, xx)) / scale,
                                "unified_defect": np.abs(g - unified) / scale}, {"region": ker.region})


def _spec(cfg: RunConfig):
    from .transforms import QuadratureSpec

    try:
        return QuadratureSpec(k_min=cfg.k_min, k_max=cfg.k_max, n_k=cfg.n_k)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def cmd_transform(cfg: RunConfig, args) -> Table:
    from .testspace import make_test_function
    from .transforms import forward_energy, round_trip_error

    if cfg.family == "tilde":
        raise ConfigError("transforms use the plus or minus family")
    pc, spec = cfg.physical, _spec(cfg)
    phi = make_test_function(pc, args.center, args.width, args.momentum)
    f = forward_energy(pc, phi, cfg.family, spec)
    meta = {"round_trip_error": round_trip_error(pc, phi, cfg.family, spec)} if args.round_trip else {}
    return Table("transform", cfg, {"k": f.k, "energy": f.grid, **_split_complex("f_left", f.left_values),
                                    **_split_complex("f_right", f.right_values)}, meta)


def cmd_verify(cfg: RunConfig, args):
    from .checks import DEFAULT_TOLERANCES, run_suite

    unknown = set(cfg.tolerances) - set(DEFAULT_TOLERANCES)
    if unknown:
        raise ConfigError(f"unknown tolerance names: {sorted(unknown)}")
    checks = run_suite(cfg.physical, args.suite, cfg.tolerances, fault=args.inject_fault)
    return checks


def cmd_wavepacket(cfg: RunConfig, args) -> Table:
    from .experiments import PacketConfig, run_wavepacket

    packet = PacketConfig(energy=args.packet_energy, width=args.packet_width, x0=args.x0, t_final=args.t_final,
                          n_snapshots=args.snapshots)
    res = run_wavepacket(cfg.physical, packet)
    tt, xx = np.meshgrid(res.times, res.x, indexing="ij")
    meta = {"transmitted": res.transmitted, "predicted": res.predicted, "initial_error": res.initial_error}
    return Table("wavepacket", cfg, {"t": tt, "x": xx, "density": res.density}, meta)


def cmd_free_limit(cfg: RunConfig, args) -> Table:
    from .experiments import FREE_LIMIT_SEQUENCE, free_limit_table

    seq = args.v0_sequence or FREE_LIMIT_SEQUENCE
    rows = free_limit_table(cfg.physical, seq, spec=_spec(cfg))
    return Table("free-limit", cfg, {name: [getattr(r, name) for r in rows]
                                     for name in ("v0", "max_t_defect", "max_r_left", "transform_distance")})


COMMANDS = {
    "coeffs": cmd_coeffs,
    "eigen": cmd_eigen,
    "green": cmd_green,
    "transform": cmd_transform,
    "verify": cmd_verify,
    "wavepacket": cmd_wavepacket,
    "free-limit": cmd_free_limit,
}


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file; command-line flags take precedence")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", help="write output here instead of stdout")
    g = common.add_argument_group("barrier and grids")
    for name, kind in (("v0", float), ("a", float), ("b", float), ("m", float), ("hbar", float),
                       ("x-min", float), ("x-max", float), ("n-x", int), ("k-min", float), ("k-max", float),
                       ("n-k", int), ("energy", str)):
        g.add_argument(f"--{name}", type=kind, default=None)
    g.add_argument("--family", choices=("plus", "minus", "tilde"), default=None)
    g.add_argument("--side", choices=("left", "right"), default=None)

    parser = argparse.ArgumentParser(prog="barrier-rhs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("coeffs", "eigen", "green"):
        sub.add_parser(name, parents=[common], help=ANCHORS[name])

    p = sub.add_parser("transform", parents=[common], help=ANCHORS["transform"])
    p.add_argument("--center", type=float, default=-4.0)
    p.add_argument("--width", type=float, default=0.6)
    p.add_argument("--momentum", type=float, default=1.5)
    p.add_argument("--round-trip", action="store_true", help="also report the inverse round-trip error")

    p = sub.add_parser("verify", parents=[common], help=ANCHORS["verify"])
    p.add_argument("--suite", choices=("all", "coeffs", "eigen", "green", "measure", "transforms", "testspace"),
                   default="all")
    p.add_argument("--tol-override", action="append", metavar="NAME=VALUE", default=[])
    p.add_argument("--inject-fault", action="store_true", help="perturb T by 1e-6 to exercise failure reporting")

    p = sub.add_parser("wavepacket", parents=[common], help=ANCHORS["wavepacket"])
    p.add_argument("--packet-energy", type=float, default=1.0)
    p.add_argument("--packet-width", type=float, default=5.0)
    p.add_argument("--x0", type=float, default=-25.0)
    p.add_argument("--t-final", type=float, default=60.0)
    p.add_argument("--snapshots", type=int, default=4)

    p = sub.add_parser("free-limit", parents=[common], help=ANCHORS["free-limit"])
    p.add_argument("--v0-sequence", type=float, nargs="+", default=None)
    return parser


def _run_config(args) -> RunConfig:
    overrides = {k: getattr(args, k, None) for k in ("v0", "a", "b", "m", "hbar", "x_min", "x_max", "n_x",
                                                      "k_min", "k_max", "n_k", "family", "side")}
    if args.energy is not None:
        try:
            overrides["energy"] = complex(args.energy.replace(" ", "").replace("i", "j"))
        except ValueError as exc:
            raise ConfigError(f"cannot parse --energy {args.energy!r}") from exc
    cfg = load_config(args.config, overrides)
    tol = parse_tolerances(getattr(args, "tol_override", None))
    if tol:
        cfg = replace(cfg, tolerances=tol)
    return cfg


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:
            sys.stdout = None


def _verify_output(cfg, checks, fmt) -> str:
    if fmt == "json":
        return json.dumps({"config": _config_json(cfg), "checks": [c.as_json() for c in checks]}, indent=1) + "\n"
    table = Table("verify", cfg, {"name": [c.name for c in checks], "value": [c.value for c in checks],
                                  "tolerance": [c.tolerance for c in checks], "pass": [c.passed for c in checks],
                                  "anchor": [c.anchor.replace(",", ";") for c in checks]})
    return table.csv()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _run_config(args)
        result = COMMANDS[args.command](cfg, args)
        if isinstance(result, Table):
            bad = [k for k, c in result.columns.items() if c.dtype.kind == "f" and not np.all(np.isfinite(c))]
            if bad:
                raise FloatingPointError(f"non-finite values in {bad}")
    except ConfigError as exc:
        print(f"barrier-rhs: configuration error: {exc}", file=sys.stderr)
        return 2
    except (BarrierError, FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"barrier-rhs: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"barrier-rhs: configuration error: {exc}", file=sys.stderr)
        return 2

    if args.command == "verify":
        _emit(_verify_output(cfg, result, args.format), args.out)
        failed = [c for c in result if not c.passed]
        for c in failed:
            print(f"barrier-rhs: FAIL {c.name} ({c.anchor}): {c.value:.3g} > {c.tolerance:.3g}", file=sys.stderr)
        return 1 if failed else 0
    _emit(result.json() + "\n" if args.format == "json" else result.csv(), args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
