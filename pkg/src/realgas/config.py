"""Run configuration: TOML parsing, validation, and serialization.

A configuration selects a registered benchmark (or defines an inline
two-state problem), the scheme and flux backend, the resolution and
output plan.  Unknown keys are rejected so typos fail loudly.  EOS
parameter names mirror the benchmark-table column headers (rho0, e0,
Gamma, A, B, R1, R2, eps1, eps2).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .eos import CochranChan, EosModel, Jwl, Polytropic, Stiffened
from .errors import ConfigError
from .problems import ProblemSpec, problem_names

__all__ = ["RunConfig", "InlineProblem", "parse_config", "serialize_config"]

_SCHEMES = ("godunov", "grp")
_BACKENDS = ("approximate", "exact-eos")
_BC_KINDS = ("transmissive", "reflective", "periodic")

_MODEL_FIELDS = {
    "polytropic": ("gamma",),
    "stiffened": ("gamma", "p_inf"),
    "jwl": ("rho0", "e0", "Gamma", "A", "B", "R1", "R2"),
    "cochran-chan": ("rho0", "e0", "Gamma", "A", "B", "eps1", "eps2"),
}


@dataclass(frozen=True)
class InlineProblem:
    """A user-defined 1-D two-state problem carried inside the config."""

    name: str
    t_final: float
    x_lo: float
    x_hi: float
    interface: float
    left: tuple
    right: tuple
    model_type: str
    model_params: dict

    def build_model(self) -> EosModel:
        cls = {"polytropic": Polytropic, "stiffened": Stiffened,
               "jwl": Jwl, "cochran-chan": CochranChan}[self.model_type]
        return cls(**self.model_params)

    def to_spec(self) -> ProblemSpec:
        from .problems import _two_state  # shared region builder

        return ProblemSpec(
            name=self.name, dim=1, model=self.build_model(),
            x_lo=self.x_lo, x_hi=self.x_hi, t_final=self.t_final,
            default_cells=(100,), init=_two_state(self.interface, self.left, self.right),
            interface=self.interface, left_state=self.left, right_state=self.right,
        )


@dataclass(frozen=True)
class RunConfig:
    """Validated run plan."""

    problem: Optional[str] = None
    inline_problem: Optional[InlineProblem] = None
    scheme: str = "grp"
    backend: str = "approximate"
    cells: tuple = (100,)
    cfl: float = 0.5
    limiter: float = 1.9
    bc: str = "transmissive"
    out_dir: str = "out"
    snapshots: tuple = field(default_factory=tuple)

    def problem_spec(self) -> ProblemSpec:
        from .problems import load_problem

        if self.inline_problem is not None:
            return self.inline_problem.to_spec()
        return load_problem(self.problem)


def _reject_unknown(table: dict, allowed, where: str):
    unknown = sorted(set(table) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown key(s) in {where}: {', '.join(unknown)}")


def _parse_inline_problem(table: dict) -> InlineProblem:
    allowed = ("name", "t_final", "x_lo", "x_hi", "interface", "left", "right", "model")
    _reject_unknown(table, allowed, "[problem]")
    for key in ("t_final", "interface", "left", "right", "model"):
        if key not in table:
            raise ConfigError(f"[problem] is missing required key {key!r}")
    model_tab = dict(table["model"])
    mtype = model_tab.pop("type", None)
    if mtype not in _MODEL_FIELDS:
        raise ConfigError(
            f"[problem.model] type must be one of {', '.join(_MODEL_FIELDS)}"
        )
    _reject_unknown(model_tab, _MODEL_FIELDS[mtype], "[problem.model]")
    missing = set(_MODEL_FIELDS[mtype]) - set(model_tab)
    if missing:
        raise ConfigError(f"[problem.model] is missing {', '.join(sorted(missing))}")
    left = tuple(float(v) for v in table["left"])
    right = tuple(float(v) for v in table["right"])
    if len(left) != 3 or len(right) != 3:
        raise ConfigError("[problem] left/right must be (rho, u, p) triples")
    return InlineProblem(
        name=str(table.get("name", "inline")),
        t_final=float(table["t_final"]),
        x_lo=float(table.get("x_lo", 0.0)),
        x_hi=float(table.get("x_hi", 100.0)),
        interface=float(table["interface"]),
        left=left, right=right,
        model_type=mtype,
        model_params={k: float(v) for k, v in model_tab.items()},
    )


def parse_config(text: str) -> RunConfig:
    """Parse and validate a TOML run configuration."""
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"TOML parse error: {exc}") from exc

    allowed = ("problem", "scheme", "backend", "cells", "cfl", "limiter",
               "bc", "out_dir", "snapshots")
    _reject_unknown(raw, allowed, "the top level")

    inline = None
    problem = raw.get("problem")
    if isinstance(problem, dict):
        inline = _parse_inline_problem(problem)
        problem = None
    elif problem is not None:
        problem = str(problem)
        if problem not in problem_names():
            raise ConfigError(
                f"unknown problem {problem!r}; available: {', '.join(problem_names())}"
            )
    else:
        raise ConfigError("config must name a problem or define a [problem] block")

    scheme = str(raw.get("scheme", "grp"))
    if scheme not in _SCHEMES:
        raise ConfigError(f"scheme must be one of {_SCHEMES}, got {scheme!r}")
    backend = str(raw.get("backend", "approximate"))
    if backend not in _BACKENDS:
        raise ConfigError(f"backend must be one of {_BACKENDS}, got {backend!r}")

    cells_raw = raw.get("cells", 100)
    if isinstance(cells_raw, (list, tuple)):
        cells = tuple(int(c) for c in cells_raw)
        if len(cells) not in (1, 2):
            raise ConfigError("cells must be an integer or a pair")
    else:
        cells = (int(cells_raw),)
    if any(c < 4 for c in cells):
        raise ConfigError("resolution must be at least 4 cells per direction")

    cfl = float(raw.get("cfl", 0.5))
    if not 0.0 < cfl <= 1.0:
        raise ConfigError(f"CFL must lie in (0, 1], got {cfl}")
    limiter = float(raw.get("limiter", 1.9))
    if not 1.0 <= limiter < 2.0:
        raise ConfigError(f"limiter parameter must lie in [1, 2), got {limiter}")
    bc = str(raw.get("bc", "transmissive"))
    if bc not in _BC_KINDS:
        raise ConfigError(f"bc must be one of {_BC_KINDS}, got {bc!r}")
    snapshots = tuple(float(t) for t in raw.get("snapshots", ()))

    return RunConfig(problem=problem, inline_problem=inline, scheme=scheme,
                     backend=backend, cells=cells, cfl=cfl, limiter=limiter,
                     bc=bc, out_dir=str(raw.get("out_dir", "out")),
                     snapshots=snapshots)


def _toml_value(v) -> str:
    if isinstance(v, str):
        return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_toml_value(x) for x in v) + "]"
    return repr(float(v)) if isinstance(v, float) else repr(v)


def serialize_config(cfg: RunConfig) -> str:
    """Emit a TOML document that parses back to an equal RunConfig."""
    lines = []
    if cfg.problem is not None:
        lines.append(f"problem = {_toml_value(cfg.problem)}")
    lines.append(f"scheme = {_toml_value(cfg.scheme)}")
    lines.append(f"backend = {_toml_value(cfg.backend)}")
    cells = cfg.cells[0] if len(cfg.cells) == 1 else list(cfg.cells)
    lines.append(f"cells = {_toml_value(cells)}")
    lines.append(f"cfl = {_toml_value(cfg.cfl)}")
    lines.append(f"limiter = {_toml_value(cfg.limiter)}")
    lines.append(f"bc = {_toml_value(cfg.bc)}")
    lines.append(f"out_dir = {_toml_value(cfg.out_dir)}")
    lines.append(f"snapshots = {_toml_value(list(cfg.snapshots))}")
    if cfg.inline_problem is not None:
        ip = cfg.inline_problem
        lines += [
            "",
            "[problem]",
            f"name = {_toml_value(ip.name)}",
            f"t_final = {_toml_value(ip.t_final)}",
            f"x_lo = {_toml_value(ip.x_lo)}",
            f"x_hi = {_toml_value(ip.x_hi)}",
            f"interface = {_toml_value(ip.interface)}",
            f"left = {_toml_value(list(ip.left))}",
            f"right = {_toml_value(list(ip.right))}",
            "",
            "[problem.model]",
            f"type = {_toml_value(ip.model_type)}",
        ]
        lines += [f"{k} = {_toml_value(v)}" for k, v in ip.model_params.items()]
    return "\n".join(lines) + "\n"
