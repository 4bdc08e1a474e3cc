"""Command-line front door.

Every subcommand writes a single file (JSON or CSV) to --out, defaulting to
stdout. Domain errors are reported as a JSON envelope {"error", "detail"}
on stderr with exit code 1; usage errors exit with 2.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import classical_fields as cf
from . import fock_core as fc
from . import linear_optics as lo
from . import nonclassicality as nc
from . import quasiprob_engine as qe
from . import theorem_lab as tl
from .errors import DomainError
from .phase_filters import FilterSpec, filter_from_json

DEFAULT_CUTOFF = 20
DEFAULT_GRID = "4:129"
DEFAULT_BETA_GRID = "6:128"
DEFAULT_SEED = 42


def _parse_grid(spec: str) -> tuple[float, int]:
    extent, steps = spec.split(":")
    return float(extent), int(steps)


def _write(args, text: str):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_state(path: str) -> fc.DensityMatrix:
    with open(path) as fh:
        return fc.load_state(json.load(fh))


def _load_ensemble(path: str) -> cf.ClassicalEnsemble:
    with open(path) as fh:
        return cf.load_ensemble(json.load(fh))


def _filter_from_args(args) -> FilterSpec:
    if getattr(args, "filter", None):
        with open(args.filter) as fh:
            return filter_from_json(json.load(fh))
    return FilterSpec.s_param(args.s)


def _fmt_complex(value: complex) -> dict:
    return {"re": value.real, "im": value.imag}


def _csv(header: list[str], rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(f"{v:.15g}" for v in row))
    return "\n".join(lines) + "\n"


def cmd_state(args) -> int:
    if args.fock is not None:
        rho = fc.make_fock(args.fock, args.cutoff)
    elif args.coherent is not None:
        rho = fc.make_coherent(complex(args.coherent), args.cutoff)
    elif args.thermal is not None:
        rho = fc.make_thermal(args.thermal, args.cutoff)
    else:
        raise SystemExit(2)
    _write(args, json.dumps(fc.save_state(rho)) + "\n")
    return 0


def cmd_charfunc(args) -> int:
    rho = _load_state(args.state)
    f = _filter_from_args(args)
    extent, points = _parse_grid(args.beta_grid)
    grid = qe.charfunc_grid(rho, f, extent, points)
    _, betas = qe.lattice(extent, points)
    rows = zip(
        betas.real.ravel(),
        betas.imag.ravel(),
        grid.values.real.ravel(),
        grid.values.imag.ravel(),
    )
    _write(args, _csv(["re_beta", "im_beta", "re_value", "im_value"], rows))
    return 0


def cmd_quasiprob(args) -> int:
    rho = _load_state(args.state)
    f = _filter_from_args(args)
    b_extent, b_points = _parse_grid(args.beta_grid)
    a_extent, a_points = _parse_grid(args.grid)
    grid = qe.quasiprob_transform(
        qe.charfunc_grid(rho, f, b_extent, b_points), a_extent, a_points
    )
    _, alphas = qe.lattice(a_extent, a_points)
    rows = zip(alphas.real.ravel(), alphas.imag.ravel(), grid.values.ravel())
    _write(args, _csv(["re_alpha", "im_alpha", "value"], rows))
    return 0


def cmd_beamsplit(args) -> int:
    rho1 = _load_state(args.state1)
    rho2 = _load_state(args.state2)
    bs = cf.BeamSplitterParams(complex(args.t), complex(args.r))
    out = lo.apply_beamsplitter(fc.tensor(rho1, rho2), bs)
    _write(args, json.dumps(fc.save_state(out)) + "\n")
    return 0


def cmd_attenuate(args) -> int:
    rho = _load_state(args.state)
    out = lo.attenuate(rho, args.eta)
    _write(args, json.dumps(fc.save_state(out)) + "\n")
    return 0


def cmd_report(args) -> int:
    rho = _load_state(args.state)
    rep = nc.correlation_report(rho, args.max_order)
    payload = {
        "g1": rep.g1,
        "g2": rep.g2,
        "verdict": rep.g2_verdict,
        "moments": [
            {"m": m, "n": n, **_fmt_complex(v)} for (m, n), v in sorted(rep.gmn_table.items())
        ],
        "violations": [
            {"criterion": cid, "lhs": lhs, "rhs": rhs, "verdict": v}
            for cid, lhs, rhs, v in rep.violations
        ],
    }
    _write(args, json.dumps(payload, indent=2) + "\n")
    return 0


def cmd_figure3(args) -> int:
    rows = nc.figure3_data(args.eta_steps, cutoff=args.cutoff)
    _write(
        args,
        _csv(
            ["eta", "wigner_origin_numeric", "wigner_origin_analytic", "g2_minus_g1sq"],
            rows,
        ),
    )
    return 0


def cmd_verify(args) -> int:
    f = _filter_from_args(args)
    if args.theorem == 1:
        v = tl.classify_filter_bs(f, trials=args.trials, seed=args.seed)
        witness = None
        if v.witness is not None:
            bs, b3, b4, res = v.witness
            witness = {
                "t": _fmt_complex(bs.t),
                "r": _fmt_complex(bs.r),
                "beta3": _fmt_complex(b3),
                "beta4": _fmt_complex(b4),
                "residual": res,
            }
        payload = {
            "theorem": 1,
            "filter": f.describe(),
            "verdict": v.verdict,
            "s": v.s,
            "witness": witness,
            "max_residual": v.max_residual,
        }
    else:
        v = tl.classify_filter_attenuator(f, tl.disk_grid())
        payload = {
            "theorem": 2,
            "filter": f.describe(),
            "verdict": v.verdict,
            "witness": None
            if v.witness_beta is None
            else _fmt_complex(v.witness_beta),
            "max_residual": v.max_deviation,
        }
    _write(args, json.dumps(payload, indent=2) + "\n")
    return 0


def cmd_classical(args) -> int:
    ens = _load_ensemble(args.ensemble)
    if args.op == "beamsplit":
        bs = cf.BeamSplitterParams(complex(args.t), complex(args.r))
        out = cf.ensemble_beamsplit(ens, bs)
        _write(args, json.dumps(cf.save_ensemble(out)) + "\n")
    elif args.op == "attenuate":
        out = cf.classical_attenuate(ens, complex(args.t))
        _write(args, json.dumps(cf.save_ensemble(out)) + "\n")
    else:  # moments
        val = cf.classical_moments(ens, args.m, args.n)
        _write(args, json.dumps({"m": args.m, "n": args.n, **_fmt_complex(val)}) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phaselab",
        description="Phase-space toolbox for classical and quantum light.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", default=None, help="output file (default stdout)")
        p.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub.add_parser("state", help="build a state and write it as JSON")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--fock", type=int)
    group.add_argument("--coherent", help="complex amplitude, e.g. 1+0.5j")
    group.add_argument("--thermal", type=float, help="mean occupation")
    common(p)
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("charfunc", help="characteristic-function lattice as CSV")
    p.add_argument("--state", required=True)
    p.add_argument("--s", type=float, default=0.0)
    p.add_argument("--filter", help="filter JSON file (overrides --s)")
    p.add_argument("--beta-grid", default=DEFAULT_BETA_GRID, help="extent:steps")
    common(p)
    p.set_defaults(func=cmd_charfunc)

    p = sub.add_parser("quasiprob", help="quasiprobability grid as CSV")
    p.add_argument("--state", required=True)
    p.add_argument("--s", type=float, default=0.0)
    p.add_argument("--filter", help="filter JSON file (overrides --s)")
    p.add_argument("--grid", default=DEFAULT_GRID, help="alpha extent:steps")
    p.add_argument("--beta-grid", default=DEFAULT_BETA_GRID, help="extent:steps")
    common(p)
    p.set_defaults(func=cmd_quasiprob)

    p = sub.add_parser("beamsplit", help="apply a beam splitter to two states")
    p.add_argument("--state1", required=True)
    p.add_argument("--state2", required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--r", required=True)
    common(p)
    p.set_defaults(func=cmd_beamsplit)

    p = sub.add_parser("attenuate", help="apply the loss channel")
    p.add_argument("--state", required=True)
    p.add_argument("--eta", type=float, required=True)
    common(p)
    p.set_defaults(func=cmd_attenuate)

    p = sub.add_parser("report", help="correlation report as JSON")
    p.add_argument("--state", required=True)
    p.add_argument("--max-order", type=int, default=2)
    common(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("figure3", help="attenuated-photon curve data as CSV")
    p.add_argument("--eta-steps", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_figure3)

    p = sub.add_parser("verify", help="run a covariance verification suite")
    p.add_argument("--theorem", type=int, choices=(1, 2), required=True)
    p.add_argument("--s", type=float, default=0.0)
    p.add_argument("--filter", help="filter JSON file (overrides --s)")
    p.add_argument("--trials", type=int, default=100)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classical", help="classical ensemble operations")
    p.add_argument("--op", choices=("beamsplit", "attenuate", "moments"), required=True)
    p.add_argument("--ensemble", required=True)
    p.add_argument("--t", default="1")
    p.add_argument("--r", default="0")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--n", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_classical)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        json.dump({"error": exc.name, "detail": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 1


def entry():
    raise SystemExit(main())
