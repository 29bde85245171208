"""JSON problem files.

Example::

    {
      "geometry": {"type": "cylinder", "height": 1.0},
      "material": {"k": 1.0, "rho": 1.0, "c": 1.0},
      "domain": {"x_start": 1.0, "x_end": 2.0},
      "mesh": {"n_elements": 10},
      "bc": {"left": {"type": "dirichlet", "value": 1.0},
             "right": {"type": "insulated"}},
      "initial": 0.0,
      "time": {"dt": 0.01, "t_end": 1.0, "theta": 1.0, "record_times": [0.5]}
    }

Unknown fields are rejected.  Every problem (bad JSON, schema violation,
inadmissible geometry) surfaces as :class:`ConfigError` with a location.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Annotated, List, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .discretize import Mesh, build_mesh
from .errors import DomainError
from .geometry import Cone, FlowTube, Material, Prism, RadialCylinder, RadialSphere, Tabulated
from .solver import BoundaryPair, Dirichlet, Flux, Insulated, SolverConfig


class ConfigError(ValueError):
    """Problem file could not be parsed or validated."""


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class PrismCfg(_Strict):
    type: Literal["prism"]
    area: float = 1.0


class CylinderCfg(_Strict):
    type: Literal["cylinder"]
    height: float = 1.0


class SphereCfg(_Strict):
    type: Literal["sphere"]


class ConeCfg(_Strict):
    type: Literal["cone"]
    r0: float
    slope: float


class TabulatedCfg(_Strict):
    type: Literal["tabulated"]
    x: List[float]
    area: List[float]


GeometryCfg = Annotated[
    Union[PrismCfg, CylinderCfg, SphereCfg, ConeCfg, TabulatedCfg], Field(discriminator="type")
]


class MaterialCfg(_Strict):
    k: float
    rho: float = 1.0
    c: float = 1.0


class DomainCfg(_Strict):
    x_start: float
    x_end: float


class MeshCfg(_Strict):
    n_elements: Optional[int] = None
    breakpoints: Optional[List[float]] = None

    @model_validator(mode="after")
    def _one_of(self):
        if (self.n_elements is None) == (self.breakpoints is None):
            raise ValueError("give exactly one of n_elements or breakpoints")
        return self


class BoundaryCfg(_Strict):
    type: Literal["dirichlet", "flux", "insulated"]
    value: Optional[float] = None

    @model_validator(mode="after")
    def _value(self):
        if self.type == "insulated":
            if self.value not in (None, 0.0):
                raise ValueError("insulated boundary takes no value")
        elif self.value is None or not math.isfinite(self.value):
            raise ValueError(f"{self.type} boundary needs a finite value")
        return self


class BoundaryPairCfg(_Strict):
    left: BoundaryCfg
    right: BoundaryCfg


class TimeCfg(_Strict):
    dt: float = Field(gt=0)
    t_end: float
    theta: float = Field(default=1.0, ge=0, le=1)
    record_times: List[float] = []
    allow_unstable: bool = False


class OutputCfg(_Strict):
    profile: str = "profile.csv"
    series: str = "series.csv"
    report: str = "converge.csv"


class ConvergeCfg(_Strict):
    mode: Literal["oracle", "self"] = "self"
    dt_power: Literal[1, 2] = 1


class ProblemConfig(_Strict):
    geometry: GeometryCfg
    material: MaterialCfg
    domain: DomainCfg
    mesh: MeshCfg
    bc: BoundaryPairCfg
    initial: Union[float, List[float], Literal["sine"], None] = None
    time: Optional[TimeCfg] = None
    output: OutputCfg = OutputCfg()
    converge: Optional[ConvergeCfg] = None


@dataclass(frozen=True)
class Problem:
    """A validated problem: the config plus the objects built from it."""

    config: ProblemConfig
    tube: FlowTube
    mesh: Mesh
    bc: BoundaryPair

    @property
    def breakpoints(self):
        m = self.config.mesh
        return m.n_elements if m.n_elements is not None else list(m.breakpoints)

    def solver_config(self) -> SolverConfig:
        t = self._time()
        return SolverConfig(t.dt, t.theta)

    def _time(self) -> TimeCfg:
        if self.config.time is None:
            raise ConfigError("time: section required for transient runs")
        return self.config.time

    def initial_profile(self):
        """Callable mapping node positions to initial temperatures."""
        init = self.config.initial
        if init is None:
            raise ConfigError("initial: required for transient runs")
        if init == "sine":
            x0, L = self.tube.x_start, self.tube.length
            return lambda x: np.sin(np.pi * (np.asarray(x) - x0) / L)
        if isinstance(init, list):
            values = np.array(init, dtype=float)
            if values.size != len(self.mesh):
                raise ConfigError(
                    f"initial: {values.size} values given for {len(self.mesh)} elements"
                )

            def per_element(x):
                if len(x) != values.size:
                    raise ConfigError("initial: per-element list only fits the configured mesh")
                return values

            return per_element
        return lambda x: np.full(len(x), float(init))


def _profile(g):
    if isinstance(g, PrismCfg):
        return Prism(g.area)
    if isinstance(g, CylinderCfg):
        return RadialCylinder(g.height)
    if isinstance(g, SphereCfg):
        return RadialSphere()
    if isinstance(g, ConeCfg):
        return Cone(g.r0, g.slope)
    return Tabulated(g.x, g.area)


def _boundary(b: BoundaryCfg):
    if b.type == "dirichlet":
        return Dirichlet(b.value)
    if b.type == "flux":
        return Flux(b.value)
    return Insulated()


def parse_problem(text: str, source: str = "<config>") -> Problem:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{source}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc
    try:
        cfg = ProblemConfig.model_validate(raw)
    except ValidationError as exc:
        lines = [
            f"{source}: {'.'.join(str(p) for p in err['loc']) or '<root>'}: {err['msg']}"
            for err in exc.errors()
        ]
        raise ConfigError("\n".join(lines)) from exc
    try:
        tube = FlowTube(
            _profile(cfg.geometry),
            Material(cfg.material.k, cfg.material.rho, cfg.material.c),
            cfg.domain.x_start,
            cfg.domain.x_end,
        )
    except DomainError as exc:
        raise ConfigError(f"{source}: geometry/material/domain: {exc}") from exc
    try:
        m = cfg.mesh
        mesh = build_mesh(tube, m.n_elements if m.n_elements is not None else m.breakpoints)
    except DomainError as exc:
        raise ConfigError(f"{source}: mesh: {exc}") from exc
    if cfg.time is not None:
        t = cfg.time
        if any(b < a for a, b in zip(t.record_times, t.record_times[1:])):
            raise ConfigError(f"{source}: time.record_times: must be sorted")
        if t.t_end < 0 or any(not 0 <= r <= t.t_end for r in t.record_times):
            raise ConfigError(f"{source}: time.record_times: must lie within [0, t_end]")
    problem = Problem(cfg, tube, mesh, (_boundary(cfg.bc.left), _boundary(cfg.bc.right)))
    if isinstance(cfg.initial, list):
        problem.initial_profile()
    return problem


def load_problem(path: str | Path) -> Problem:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read: {exc.strerror}") from exc
    return parse_problem(text, str(path))
