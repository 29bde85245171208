"""Command-line front end.

    fluxion [--output-dir DIR] steady <cfg>
    fluxion [--output-dir DIR] transient <cfg>
    fluxion [--output-dir DIR] converge <cfg> --levels N
    fluxion lattice {binomial,evolve,walk,kernel,compare} ARGS

Exit status: 0 success, 2 parse/usage error, 3 ill-posed problem,
4 stability refusal.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import lattice
from .config import ConfigError, Problem, load_problem
from .convergence import RefinementStudy, run_study
from .errors import DomainError, IllPosedError, InstabilityError
from .geometry import Prism
from .oracles import SlabSpec, slab_mode_T
from .solver import Dirichlet, ThermalState, interface_fluxes, run_transient, steady_solve

log = logging.getLogger("fluxion")

EXIT_USAGE = 2
EXIT_ILL_POSED = 3
EXIT_UNSTABLE = 4


def fmt(value) -> str:
    """Shortest round-trip text for a float, without a trailing ``.0``."""
    s = repr(float(value))
    return s[:-2] if s.endswith(".0") else s


def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def csv_text(header, rows, meta=()) -> str:
    lines = [",".join(header)]
    lines += [",".join(row) for row in rows]
    lines += [f"# {m}" for m in meta]
    return "\n".join(lines) + "\n"


def profile_rows(nodes, temperatures):
    return [(fmt(x), fmt(T)) for x, T in zip(nodes, temperatures)]


def suffixed(path: Path, t: float) -> Path:
    return path.with_name(f"{path.stem}_t{fmt(t)}{path.suffix}")


def cmd_steady(problem: Problem, out_dir: Path) -> int:
    state = steady_solve(problem.mesh, problem.bc)
    flux = interface_fluxes(problem.mesh, state, problem.bc)[0]
    target = out_dir / problem.config.output.profile
    write_atomic(
        target,
        csv_text(("x", "T"), profile_rows(problem.mesh.nodes, state.temperatures), [f"flux={fmt(flux)}"]),
    )
    log.info("wrote %s", target)
    return 0


def cmd_transient(problem: Problem, out_dir: Path) -> int:
    t = problem._time()
    mesh = problem.mesh
    initial = ThermalState(0.0, problem.initial_profile()(mesh.nodes))
    result = run_transient(
        mesh,
        initial,
        problem.bc,
        problem.solver_config(),
        t.t_end,
        t.record_times,
        allow_unstable=t.allow_unstable,
    )
    out = problem.config.output
    snapshots = {s.time: s for s in result.states}
    for rt in t.record_times:
        state = snapshots[rt]
        write_atomic(
            suffixed(out_dir / out.profile, rt),
            csv_text(("x", "T"), profile_rows(mesh.nodes, state.temperatures)),
        )
    meta = [f"warning={w}" for w in result.warnings]
    write_atomic(
        out_dir / out.series,
        csv_text(("t", "heat_content"), [(fmt(tt), fmt(h)) for tt, h in result.series], meta),
    )
    return 0


def _study(problem: Problem) -> RefinementStudy:
    cfg = problem.config
    conv = cfg.converge
    t = problem._time()
    if conv is None:
        raise ConfigError("converge: section required for convergence studies")
    if isinstance(cfg.initial, list):
        raise ConfigError("initial: a per-element list cannot be refined; use a constant or 'sine'")
    oracle = None
    if conv.mode == "oracle":
        zero = Dirichlet(0.0)
        if not (
            isinstance(problem.tube.profile, Prism)
            and cfg.initial == "sine"
            and problem.bc == (zero, zero)
        ):
            raise ConfigError(
                "converge.mode: oracle mode needs a prism, initial 'sine' and zero Dirichlet ends"
            )
        tube = problem.tube
        spec = SlabSpec(tube.length, tube.material.diffusivity)

        def oracle(x, time):
            return np.array([slab_mode_T(v - tube.x_start, time, spec) for v in x])

    return RefinementStudy(
        tube=problem.tube,
        bc=problem.bc,
        initial=problem.initial_profile(),
        theta=t.theta,
        dt0=t.dt,
        t_end=t.t_end,
        breakpoints=problem.breakpoints,
        dt_power=conv.dt_power,
        oracle=oracle,
    )


def cmd_converge(problem: Problem, out_dir: Path, levels: int) -> int:
    rows = run_study(_study(problem), levels)
    target = out_dir / problem.config.output.report
    write_atomic(
        target,
        csv_text(
            ("n_elements", "error", "order"),
            [(str(n), fmt(e), "" if o is None else fmt(o)) for n, e, o in rows],
        ),
    )
    return 0


def cmd_lattice(args) -> int:
    sub = args.lattice_cmd
    if sub == "binomial":
        value = lattice.binomial_term(args.m, args.n, args.p)
        print(f"{value} = {fmt(value)}")
    elif sub in ("evolve", "walk"):
        field = lattice.LatticeField.delta()
        for _ in range(args.steps):
            if sub == "evolve":
                field = lattice.laplace_step(field)
            else:
                field = lattice.scaled_heat_step(field, args.lam)
            print(field.format())
    elif sub == "kernel":
        print(fmt(lattice.heat_kernel(args.x, args.xprime)))
    elif sub == "compare":
        print(fmt(lattice.demoivre_compare(args.mu, args.p)))
    return 0


def _nonnegative(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fluxion", description=__doc__.splitlines()[0])
    parser.add_argument("--output-dir", type=Path, default=Path("."), help="where CSV files go")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("steady", "steady-state solve"),
        ("transient", "transient run"),
        ("converge", "refinement study"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("config", type=Path)
        if name == "converge":
            p.add_argument("--levels", type=int, required=True)

    lat = sub.add_parser("lattice", help="probability lattice demonstrations")
    lsub = lat.add_subparsers(dest="lattice_cmd", required=True)
    p = lsub.add_parser("binomial")
    p.add_argument("m", type=_nonnegative)
    p.add_argument("n", type=_nonnegative)
    p.add_argument("p", type=lattice.as_rational)
    p = lsub.add_parser("evolve")
    p.add_argument("steps", type=_nonnegative)
    p = lsub.add_parser("walk")
    p.add_argument("steps", type=_nonnegative)
    p.add_argument("lam", nargs="?", type=lattice.as_rational, default=Fraction(1, 2))
    p = lsub.add_parser("kernel")
    p.add_argument("x", type=float)
    p.add_argument("xprime", type=float)
    p = lsub.add_parser("compare")
    p.add_argument("mu", type=int)
    p.add_argument("p", type=lattice.as_rational)
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s"
    )
    try:
        if args.command == "lattice":
            return cmd_lattice(args)
        problem = load_problem(args.config)
        if args.command == "steady":
            return cmd_steady(problem, args.output_dir)
        if args.command == "transient":
            return cmd_transient(problem, args.output_dir)
        if args.levels < 3:
            raise ConfigError(f"--levels must be at least 3, got {args.levels}")
        return cmd_converge(problem, args.output_dir, args.levels)
    except ConfigError as exc:
        print(f"fluxion: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IllPosedError as exc:
        print(f"fluxion: ill-posed problem: {exc}", file=sys.stderr)
        return EXIT_ILL_POSED
    except InstabilityError as exc:
        print(f"fluxion: refused: {exc} (stable_dt bound {fmt(exc.bound)})", file=sys.stderr)
        return EXIT_UNSTABLE
    except DomainError as exc:
        print(f"fluxion: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None) -> None:
    sys.exit(run(argv))
