import math

import pytest

import latsum


def test_square_spec_basics():
    spec = latsum.LatticeSpec.named("square")
    assert spec.size == 2
    assert spec.form.discriminant == -4.0
    assert latsum.psi(spec, (math.pi, math.pi)) == 2.0
    assert latsum.f(spec, (math.pi, 0.0)) == 1.0


def test_fn_direct_small_grid():
    spec = latsum.LatticeSpec.named("square")
    assert latsum.fn_direct(spec, 2).value == pytest.approx(2.5, rel=1e-15)
    assert latsum.fn_direct(spec, 2, m=1).value == pytest.approx(10 / math.pi**2, rel=1e-15)


def test_gn_methods_agree():
    form = latsum.QuadraticForm(2, 1, 3)
    direct = latsum.gn_direct(form, 100)
    via_digamma = latsum.gn_digamma(form, 100)
    assert direct.method == "direct"
    assert via_digamma.method == "digamma"
    assert via_digamma.value == pytest.approx(direct.value, rel=1e-11)


def test_fn_f1_expansion_leading_coefficient():
    e = latsum.fn_f1_expansion(latsum.LatticeSpec.named("square"))
    assert e.c_n2logn == pytest.approx(2 / math.pi, rel=1e-15)
    assert e.error_order == "logn_over_n2"


def test_odd_integral_is_exact():
    spec = latsum.LatticeSpec.named("unionjack")
    got = latsum.in_f1_closed(spec, 5).value
    assert got == pytest.approx(4 / (3 * math.pi) * 25 * math.log(5), rel=1e-15)


def test_graph_trace_matches_sum():
    spec = latsum.LatticeSpec.named("triangular")
    g = latsum.TorusGraph(spec, 12)
    assert latsum.trace_pseudoinverse_matrix(g) == pytest.approx(latsum.fn_direct(spec, 12).value / 6, rel=1e-9)
    tau, kf = latsum.tau_and_kirchhoff(g)
    assert kf == pytest.approx(g.vertex_count * latsum.trace_pseudoinverse_spectral(g), rel=1e-15)


def test_special_functions():
    c = latsum.constants()
    assert latsum.clausen_cl2(math.pi / 2) == pytest.approx(c["catalan"], abs=1e-15)
    assert latsum.digamma(1) == pytest.approx(-c["euler_gamma"], abs=1e-15)
    assert latsum.dilog(-1) == pytest.approx(-math.pi**2 / 12, abs=1e-15)


def test_residual_fit_synthetic():
    samples = [(n, 3.0 * math.log(n) / n**4) for n in (100, 200, 400, 800, 1600)]
    report = latsum.residual_order_fit(samples, "logn_over_n4")
    assert report.passed
    assert report.fitted_log_power == 1.0


def test_errors_are_typed():
    with pytest.raises(latsum.NotPositiveDefinite):
        latsum.QuadraticForm(1, 3, 1)
    with pytest.raises(latsum.InvalidSpec):
        latsum.LatticeSpec([(0, 1), (1, 0)])
    with pytest.raises(latsum.CutViolation):
        latsum.dilog(2.0)
    with pytest.raises(latsum.Error):
        latsum.TorusGraph(latsum.LatticeSpec.named("unionjack"), 2)
