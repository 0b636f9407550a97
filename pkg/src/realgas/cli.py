"""Command-line driver.

Subcommands:

* ``run``       - march a benchmark (or inline problem) and write profiles
* ``riemann``   - solve one two-material stiffened Riemann problem
* ``grp-check`` - print the full GRP interface resolution for configured data
* ``exact``     - dump an exact general-EOS reference profile as CSV
* ``problems``  - list the registered benchmarks

Exit codes: 0 success, 1 usage error, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import io as rio
from .config import parse_config
from .eos import StiffenedParams
from .errors import RealGasError
from .grp import GrpSideData, solve_grp
from .riemann import SideState, sample, solve_star
from .scheme import run_simulation
from .exact import solve_exact
from .states import PrimitiveState

__all__ = ["main", "cli_main"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="realgas",
                                     description="Stiffened-gas-approximate Godunov/GRP solvers")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a simulation")
    p_run.add_argument("--config", help="TOML run configuration")
    p_run.add_argument("--problem", help="registered problem name")
    p_run.add_argument("--cells", type=int, help="cells (per direction for 2-D)")
    p_run.add_argument("--scheme", choices=("godunov", "grp"))
    p_run.add_argument("--backend", choices=("approximate", "exact-eos"))
    p_run.add_argument("--cfl", type=float)
    p_run.add_argument("--out-dir")

    p_rp = sub.add_parser("riemann", help="solve a two-material Riemann problem")
    p_rp.add_argument("--left", required=True, help="rho,u,p")
    p_rp.add_argument("--right", required=True, help="rho,u,p")
    p_rp.add_argument("--gamma-left", type=float, required=True)
    p_rp.add_argument("--pinf-left", type=float, default=0.0)
    p_rp.add_argument("--gamma-right", type=float)
    p_rp.add_argument("--pinf-right", type=float)
    p_rp.add_argument("--samples", type=int, default=0,
                      help="also dump a profile sampled on this many rays")
    p_rp.add_argument("--out", help="CSV path for the sampled profile")

    p_gc = sub.add_parser("grp-check", help="print a GRP interface resolution")
    p_gc.add_argument("--config", required=True,
                      help="TOML file with a [grp-check] table")

    p_ex = sub.add_parser("exact", help="exact general-EOS reference profile")
    p_ex.add_argument("--problem", required=True)
    p_ex.add_argument("--points", type=int, default=1000)
    p_ex.add_argument("--out", help="CSV path (default: stdout summary only)")

    sub.add_parser("problems", help="list registered benchmarks")
    return parser


def _parse_state(text: str):
    parts = [float(v) for v in text.split(",")]
    if len(parts) != 3:
        raise RealGasError(f"expected rho,u,p, got {text!r}")
    return parts


def _cmd_run(args) -> int:
    if args.config:
        with open(args.config) as fh:
            cfg = parse_config(fh.read())
    elif args.problem:
        cfg = parse_config(f'problem = "{args.problem}"')
    else:
        print("run: need --config or --problem", file=sys.stderr)
        return 1
    updates = {}
    if args.cells:
        updates["cells"] = (args.cells,)
    if args.scheme:
        updates["scheme"] = args.scheme
    if args.backend:
        updates["backend"] = args.backend
    if args.cfl:
        updates["cfl"] = args.cfl
    if args.out_dir:
        updates["out_dir"] = args.out_dir
    if updates:
        from dataclasses import replace
        cfg = replace(cfg, **updates)

    spec = cfg.problem_spec()
    cells = cfg.cells[0] if len(cfg.cells) == 1 else cfg.cells
    field = spec.make_field(cells)
    result = run_simulation(field, spec.t_final, scheme=cfg.scheme, cfl=cfg.cfl,
                            snapshot_times=spec.snapshot_times, backend=cfg.backend)
    out_dir = rio.output_dir(cfg.out_dir)
    os.makedirs(out_dir, exist_ok=True)
    tag = f"{spec.name}_{cfg.scheme}"
    if cfg.backend != "approximate":
        tag += "_exact-eos"
    written = []
    for snap in result.snapshots:
        stamp = format(snap.t, ".6g").replace(".", "p")
        if spec.dim == 1:
            path = os.path.join(out_dir, f"{tag}_t{stamp}.csv")
            rio.write_csv_1d(snap, path)
        else:
            path = os.path.join(out_dir, f"{tag}_t{stamp}.vtk")
            rio.write_vtk_2d(snap, path, title=f"{spec.name} t={snap.t:.6g}")
        written.append(path)
    print(f"{spec.name}: {result.steps} steps, conservation residual "
          f"{result.conservation_residual:.3e}")
    for path in written:
        print(f"wrote {path}")
    return 0


def _cmd_riemann(args) -> int:
    rho_l, u_l, p_l = _parse_state(args.left)
    rho_r, u_r, p_r = _parse_state(args.right)
    g_l = args.gamma_left
    g_r = args.gamma_right if args.gamma_right is not None else g_l
    pi_l = args.pinf_left
    pi_r = args.pinf_right if args.pinf_right is not None else pi_l
    left = SideState.make(rho_l, u_l, p_l, StiffenedParams(g_l, pi_l))
    right = SideState.make(rho_r, u_r, p_r, StiffenedParams(g_r, pi_r))
    fan = solve_star(left, right)
    print(f"p_star    = {fan.pstar:.17g}")
    print(f"u_star    = {fan.ustar:.17g}")
    print(f"rho_starL = {fan.rho_star_l:.17g}")
    print(f"rho_starR = {fan.rho_star_r:.17g}")
    print(f"left wave  : {fan.left_wave.kind} speeds "
          f"[{fan.left_wave.head:.17g}, {fan.left_wave.tail:.17g}]")
    print(f"right wave : {fan.right_wave.kind} speeds "
          f"[{fan.right_wave.tail:.17g}, {fan.right_wave.head:.17g}]")
    print(f"iterations = {fan.iterations}")
    if args.samples:
        lo = min(fan.left_wave.head, 0.0) * 1.2 - 0.1 * left.c
        hi = max(fan.right_wave.head, 0.0) * 1.2 + 0.1 * right.c
        xis = np.linspace(lo, hi, args.samples)
        rows = ["xi,rho,u,p,e"]
        for xi in xis:
            st, tag = sample(fan, float(xi))
            gas = left.gas if tag == "left" else right.gas
            e = gas.internal_energy(st.rho, st.p)
            rows.append(",".join(format(v, ".17g") for v in (xi, st.rho, st.u, st.p, e)))
        text = "\n".join(rows) + "\n"
        if args.out:
            with open(args.out, "w", newline="\n") as fh:
                fh.write(text)
            print(f"wrote {args.out}")
        else:
            print(text, end="")
    return 0


def _cmd_grp_check(args) -> int:
    if sys.version_info >= (3, 11):
        import tomllib
    else:
        import tomli as tomllib
    with open(args.config, "rb") as fh:
        raw = tomllib.load(fh)
    try:
        tab = raw["grp-check"]
        sides = []
        for key in ("left", "right"):
            entry = tab[key]
            state = SideState.make(
                float(entry["rho"]), float(entry["u"]), float(entry["p"]),
                StiffenedParams(float(entry["gamma"]), float(entry.get("p_inf", 0.0))),
            )
            sides.append(GrpSideData.make(
                state, float(entry.get("drho", 0.0)), float(entry.get("du", 0.0)),
                float(entry.get("dp", 0.0)),
            ))
    except KeyError as exc:
        raise RealGasError(f"grp-check config is missing {exc}") from exc
    res = solve_grp(*sides)
    print(f"material   = {res.material}")
    print(f"rho_star   = {res.state.rho:.17g}")
    print(f"u_star     = {res.state.u:.17g}")
    print(f"p_star     = {res.state.p:.17g}")
    print(f"Du_Dt      = {res.Du_Dt:.17g}")
    print(f"Dp_Dt      = {res.Dp_Dt:.17g}")
    print(f"du_dt      = {res.du_dt:.17g}")
    print(f"dp_dt      = {res.dp_dt:.17g}")
    print(f"drho_dt    = {res.drho_dt:.17g}")
    print(f"theta      = {res.theta:.17g}")
    return 0


def _cmd_exact(args) -> int:
    from .problems import load_problem

    spec = load_problem(args.problem)
    if spec.dim != 1:
        raise RealGasError("exact reference profiles are for 1-D problems")
    sol = solve_exact(PrimitiveState(*spec.left_state), PrimitiveState(*spec.right_state),
                      spec.model)
    print(f"p_star = {sol.pstar:.17g}")
    print(f"u_star = {sol.ustar:.17g}")
    print(f"rho_starL = {sol.rho_star_l:.17g}")
    print(f"rho_starR = {sol.rho_star_r:.17g}")
    if args.out:
        lo = (spec.x_lo - spec.interface) / spec.t_final
        hi = (spec.x_hi - spec.interface) / spec.t_final
        xis = np.linspace(lo, hi, args.points)
        rho, u, p, e = sol.sample_profile(xis)
        rows = ["xi,rho,u,p,e"]
        for vals in zip(xis, rho, u, p, e):
            rows.append(",".join(format(v, ".17g") for v in vals))
        with open(args.out, "w", newline="\n") as fh:
            fh.write("\n".join(rows) + "\n")
        print(f"wrote {args.out}")
    return 0


def cli_main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "riemann":
            return _cmd_riemann(args)
        if args.command == "grp-check":
            return _cmd_grp_check(args)
        if args.command == "exact":
            return _cmd_exact(args)
        if args.command == "problems":
            from .problems import problem_names
            for name in problem_names():
                print(name)
            return 0
        return 1
    except (RealGasError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_main())
