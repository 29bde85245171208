import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from fluxion.errors import DomainError
from fluxion.lattice import (
    LatticeField,
    as_rational,
    binomial_term,
    delta2,
    demoivre_compare,
    heat_kernel,
    laplace_step,
    pde_residual,
    scaled_heat_step,
)

F = Fraction

fields = st.dictionaries(
    st.integers(-6, 6), st.fractions(min_value=-5, max_value=5, max_denominator=12), max_size=6
).map(LatticeField)
rationals = st.fractions(min_value=-3, max_value=3, max_denominator=7)


def test_binomial_examples():
    assert binomial_term(1, 1, F(1, 2)) == F(1, 2)
    assert binomial_term(2, 0, "3/10") == F(9, 100)
    assert sum(binomial_term(m, 10 - m, F(3, 10)) for m in range(11)) == 1


def test_binomial_float_inputs():
    # exact value for the binary float 0.3, rounded once
    assert binomial_term(3, 7, 0.3) == float(math.comb(10, 3) * F(0.3) ** 3 * (1 - F(0.3)) ** 7)
    assert binomial_term(0, 5, 0.0) == 1.0 and binomial_term(2, 0, 1.0) == 1.0


def test_binomial_large_mu_does_not_overflow():
    value = binomial_term(5000, 5000, 0.5)
    exact = float(math.comb(10000, 5000) * F(1, 2) ** 10000)
    assert value == pytest.approx(exact, rel=1e-12)
    assert value == pytest.approx(math.sqrt(2 / (math.pi * 10000)), rel=1e-4)
    assert binomial_term(5000, 5000, F(1, 2)) == math.comb(10000, 5000) * F(1, 2) ** 10000


def test_binomial_log_gamma_branch():
    v = binomial_term(15000, 15000, 0.5)
    assert v == pytest.approx(float(math.comb(30000, 15000) * F(1, 2) ** 30000), rel=1e-10)


@pytest.mark.parametrize("p", [-0.1, 1.5, "3/2", F(-1, 3)])
def test_binomial_domain(p):
    with pytest.raises(DomainError):
        binomial_term(1, 1, p)


def test_as_rational():
    assert as_rational("1/2") == F(1, 2)
    assert as_rational(" 0.25 ") == F(1, 4)
    with pytest.raises(DomainError):
        as_rational("one half")


def test_delta2_examples():
    assert delta2(LatticeField()) == LatticeField()
    assert delta2(LatticeField.delta()) == LatticeField({-2: 1, -1: -2, 0: 1})


def test_laplace_step_examples():
    zero = laplace_step(LatticeField())
    assert zero.x_prime == 1 and len(zero) == 0
    one = laplace_step(LatticeField.delta())
    assert one == LatticeField({-2: 1, -1: -2, 0: 2}, x_prime=1)
    assert one.mass() == 1


def test_scaled_heat_step_examples():
    assert scaled_heat_step(LatticeField.delta()) == LatticeField({-1: F(1, 2), 1: F(1, 2)}, 1)
    with pytest.raises(DomainError):
        scaled_heat_step(LatticeField.delta(), F(3, 4))
    with pytest.raises(DomainError):
        scaled_heat_step(LatticeField.delta(), 0)


def test_fair_walk_reproduces_binomial_terms():
    field = LatticeField.delta()
    for n in range(1, 21):
        field = scaled_heat_step(field, F(1, 2))
        expected = {2 * m - n: binomial_term(m, n - m, F(1, 2)) for m in range(n + 1)}
        assert field.values == expected


def test_laplace_step_amplitude_grows():
    field = LatticeField.delta()
    peaks = []
    for _ in range(12):
        field = laplace_step(field)
        peaks.append(max(abs(v) for _, v in field))
    assert peaks[-1] > 1000 and field.mass() == 1


@settings(max_examples=50, deadline=None)
@given(fields)
def test_delta2_telescopes(field):
    assert delta2(field).mass() == 0


@settings(max_examples=50, deadline=None)
@given(fields, st.fractions(min_value=F(1, 50), max_value=F(1, 2), max_denominator=50))
def test_mass_conserved(field, lam):
    assert laplace_step(field).mass() == field.mass()
    assert scaled_heat_step(field, lam).mass() == field.mass()


@settings(max_examples=50, deadline=None)
@given(fields)
def test_operators_commute(field):
    assert laplace_step(delta2(field)) == delta2(laplace_step(field))


@settings(max_examples=50, deadline=None)
@given(fields, fields, rationals)
def test_operators_linear(f, g, c):
    for op in (delta2, laplace_step, lambda h: scaled_heat_step(h, F(1, 3))):
        assert op(f + g) == op(f) + op(g)
        assert op(f.scale(c)) == op(f).scale(c)


def test_heat_kernel_examples():
    assert heat_kernel(0.0, 1 / (4 * math.pi)) == pytest.approx(1.0, rel=1e-15)
    assert heat_kernel(0.7, 0.3) == heat_kernel(-0.7, 0.3)
    total = quad(lambda x: heat_kernel(x, 0.8), -math.inf, math.inf, epsabs=1e-13)[0]
    assert total == pytest.approx(1.0, abs=1e-10)
    with pytest.raises(DomainError):
        heat_kernel(0.0, 0.0)


def test_pde_residual_second_order_and_even():
    r = [abs(pde_residual(0.5, 1.0, h)) for h in (0.1, 0.05, 0.025)]
    orders = [math.log2(r[i] / r[i + 1]) for i in range(2)]
    assert all(abs(o - 2.0) <= 0.2 for o in orders), orders
    assert pde_residual(-0.5, 1.0, 0.05) == pytest.approx(pde_residual(0.5, 1.0, 0.05), rel=1e-12)
    assert abs(pde_residual(1.3, 2.0, 1e-3)) < 1e-6
    with pytest.raises(DomainError):
        pde_residual(0.0, 0.1, 0.2)


def test_demoivre_examples():
    # frozen from brute-force comparison over every m
    v2 = demoivre_compare(2, F(1, 2))
    assert 0 < v2 < math.inf and v2 == pytest.approx(0.06418958354775628, rel=1e-12)
    seq = [demoivre_compare(mu, "1/2") for mu in (25, 100, 400)]
    assert seq == pytest.approx([0.0014360604774504016, 0.00019921869310776663, 2.492607635033728e-05], rel=1e-10)
    assert seq[0] > seq[1] > seq[2]
    assert seq[1] / seq[0] <= 0.6 and seq[2] / seq[1] <= 0.6
    with pytest.raises(DomainError):
        demoivre_compare(10, 1)
