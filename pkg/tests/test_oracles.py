import math

import numpy as np
import pytest
from scipy.integrate import quad

from fluxion import (
    Cone,
    Dirichlet,
    DomainError,
    FlowTube,
    Material,
    Prism,
    RadialCylinder,
    RadialSphere,
    SolverConfig,
    ThermalState,
    build_mesh,
    flux,
    resistance_integral,
    run_transient,
)
from fluxion.oracles import SlabSpec, radial_steady_T, slab_mode_T, steady_flux

UNIT = SlabSpec(1.0, 1.0)


def test_slab_mode_examples():
    assert slab_mode_T(0.0, 0.3, UNIT) == 0.0
    assert slab_mode_T(0.5, 0.0, UNIT) == 1.0
    assert slab_mode_T(0.5, 0.1, UNIT) == pytest.approx(math.exp(-math.pi**2 / 10), rel=1e-15)
    assert slab_mode_T(0.5, 0.1, UNIT) == pytest.approx(0.372708, abs=1e-6)


def test_slab_mode_matches_fine_crank_nicolson_run():
    mesh = build_mesh(FlowTube(Prism(1.0), Material(1.0), 0.0, 1.0), 400)
    init = ThermalState(0.0, np.sin(np.pi * mesh.nodes))
    zero = (Dirichlet(0.0), Dirichlet(0.0))
    final = run_transient(mesh, init, zero, SolverConfig(1e-3, 0.5), 0.1)[-1]
    i = np.argmin(np.abs(mesh.nodes - 0.49875))
    assert final.temperatures[i] == pytest.approx(slab_mode_T(mesh.nodes[i], 0.1, UNIT), abs=1e-5)


def test_slab_mode_with_end_temperatures_keeps_boundary_values():
    spec = SlabSpec(2.0, 0.5, (1.0, 3.0))
    assert slab_mode_T(0.0, 0.7, spec) == 1.0
    assert slab_mode_T(2.0, 0.7, spec) == pytest.approx(3.0, abs=1e-15)


def test_slab_mode_domain():
    with pytest.raises(DomainError):
        slab_mode_T(1.5, 0.0, UNIT)
    with pytest.raises(DomainError):
        SlabSpec(0.0, 1.0)


@pytest.mark.parametrize("h0", [0.05])
def test_slab_mode_satisfies_heat_equation_second_order(h0):
    def residual(h):
        worst = 0.0
        for x in np.linspace(0.2, 0.8, 7):
            for t in (0.05, 0.1, 0.2):
                T = lambda xx, tt: slab_mode_T(xx, tt, UNIT)
                d_xx = (T(x + h, t) - 2 * T(x, t) + T(x - h, t)) / h**2
                d_t = (T(x, t + h) - T(x, t - h)) / (2 * h)
                worst = max(worst, abs(d_xx - d_t))
        return worst

    errs = [residual(h0 / 2**k) for k in range(3)]
    orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert np.all(np.abs(orders - 2.0) <= 0.2), orders


def test_radial_steady_examples():
    assert radial_steady_T("cylinder", 1.0, 1.0, 2.0, 7.0, 3.0) == 7.0
    assert radial_steady_T("cylinder", math.sqrt(1.5 * 6.0), 1.5, 6.0, 7.0, 3.0) == pytest.approx(5.0, rel=1e-14)
    assert radial_steady_T("sphere", 4 / 3, 1.0, 2.0, 1.0, 0.0) == pytest.approx(0.5, rel=1e-14)


def test_radial_steady_domain():
    with pytest.raises(DomainError):
        radial_steady_T("cylinder", 2.5, 1.0, 2.0, 1.0, 0.0)
    with pytest.raises(DomainError):
        radial_steady_T("torus", 1.5, 1.0, 2.0, 1.0, 0.0)


@pytest.mark.parametrize("geometry", ["cylinder", "sphere"])
def test_radial_steady_monotone(geometry):
    r = np.linspace(0.7, 3.1, 50)
    T = np.array([radial_steady_T(geometry, v, 0.7, 3.1, 2.0, -1.0) for v in r])
    assert np.all(np.diff(T) < 0) and T.max() <= 2.0 and T.min() >= -1.0 - 1e-15


def test_steady_flux_examples():
    assert steady_flux("prism", 0.0, 1.0, 1.0, 0.0, area=1.0) == pytest.approx(1.0)
    cyl = steady_flux("cylinder", 1.0, 2.0, 1.0, 0.0, height=1.0)
    assert cyl == pytest.approx(9.064720, abs=1e-6)
    assert cyl == pytest.approx(1.0 / quad(lambda y: 1 / (2 * math.pi * y), 1, 2, epsrel=1e-13)[0], rel=1e-12)
    cone = steady_flux("cone", 0.0, 1.0, 1.0, 0.0, r0=1.0, slope=1.0)
    assert cone == pytest.approx(2 * math.pi, rel=1e-14)
    assert cone == pytest.approx(
        1.0 / quad(lambda y: 1 / (math.pi * (1 + y) ** 2), 0, 1, epsrel=1e-13)[0], rel=1e-12
    )


@pytest.mark.parametrize(
    "kw", [dict(geometry="prism"), dict(geometry="cylinder", height=-1.0), dict(geometry="cone", r0=1.0, slope=-2.0)]
)
def test_steady_flux_degenerate(kw):
    with pytest.raises(DomainError):
        steady_flux(a=0.0, b=1.0, T_in=1.0, T_out=0.0, **kw)


@pytest.mark.parametrize(
    "geometry,profile,a,b,params",
    [
        ("prism", Prism(2.5), 0.0, 1.3, dict(area=2.5)),
        ("cylinder", RadialCylinder(0.4), 1.0, 3.0, dict(height=0.4)),
        ("sphere", RadialSphere(), 0.5, 2.0, {}),
        ("cone", Cone(1.0, 1.0), 0.0, 1.0, dict(r0=1.0, slope=1.0)),
        ("cone", Cone(2.0, -0.5), 0.5, 2.0, dict(r0=2.0, slope=-0.5)),
    ],
)
def test_oracle_engine_flux_consistency(geometry, profile, a, b, params):
    k = 1.7
    tube = FlowTube(profile, Material(k), a, b)
    engine = flux(3.0, 1.0, resistance_integral(tube, a, b))
    assert steady_flux(geometry, a, b, 3.0, 1.0, k, **params) == pytest.approx(engine, rel=1e-12)
