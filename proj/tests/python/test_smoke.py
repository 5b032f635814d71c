import cmath
import math

import pytest

import hypzero as hz


def test_coefficients_small_degree():
    # p_1(z) = 1 - b z / (b + 1) with b = alpha + 1.
    p = hz.coefficients(1, 1.0)
    b = 2.0
    assert p.degree == 1
    assert abs(p.coefficient(0) - 1.0) < 1e-15
    assert abs(p.coefficient(1) + b / (b + 1)) < 1e-15
    assert max(abs(c) for c in p.coeffs) == pytest.approx(1.0)


def test_roots_have_small_residuals_and_conjugate_symmetry():
    zs = hz.find_roots(hz.coefficients(20, 2.0))
    assert zs.converged
    assert len(zs.zeros) == 20
    assert zs.max_residual() <= 1e-10
    for z in zs.zeros:
        assert min(abs(z.conjugate() - w) for w in zs.zeros) < 1e-9


def test_evaluate_at_a_zero():
    p = hz.coefficients(12, 1 + 1j)
    z = hz.find_roots(p).zeros[0]
    ev = hz.evaluate(p, z, "extended:200")
    assert ev.scaled_residual < 1e-10


def test_saddle_and_level_constant():
    s = hz.saddle_point(0.5 + 0.5j, 1.0)
    assert abs(s["t0"] - 0.5 / (0.5 + 0.5j)) < 1e-15
    assert abs(hz.phi_prime(s["t0"], 0.5 + 0.5j, 1.0)) < 1e-12
    assert hz.level_constant(1.0) == pytest.approx(0.25)
    assert hz.crossing_point(1.0) == pytest.approx(0.5)


def test_region_labels_for_alpha_one():
    assert hz.classify_region(0.9 + 0.3j, 1.0)[0] == "in_E"
    assert hz.classify_region(0.2 + 0.3j, 1.0)[0] == "not_in_E"
    assert hz.halfplane_zero_free_check(-0.5 + 0.5j, 1.0)["certified"]


def test_euler_integral_matches_polynomial():
    n, alpha, z = 6, 1.0, 0.4 + 0.2j
    e = hz.euler_integral(n, alpha, z)
    p = hz.coefficients(n, alpha)
    value = hz.evaluate(p, z).value
    assert abs((alpha * n + 1) * e["value"] - value) < 1e-10 * abs(value)


def test_contour_split_is_consistent():
    split = hz.contour_split(20, 1 + 1j, 0.9 + 0.1j)
    assert split["consistent"]
    assert split["log_discrepancy"] <= split["log_budget"]


def test_constant_f_gives_nth_root_of_one_over_n():
    roots = hz.f_lemma_check(lambda s: 1.0, [10, 100])
    assert roots[0] == pytest.approx(0.1 ** 0.1, rel=1e-10)
    assert roots[1] == pytest.approx(0.01 ** 0.01, rel=1e-10)


def test_level_curve_for_alpha_one_is_the_lemniscate_loop():
    curve = hz.trace_level_curve(1.0)
    loops = [a for a in curve.arcs if a["closed"] and a["label"] == "in_E"]
    assert loops
    for re, im in loops[0]["points"]:
        w = complex(re, im)
        assert abs(abs(w * (1 - w)) - 0.25) < 1e-9
    dists, dmax, _ = curve.distance([0.5 + 0.5 ** 0.5 + 0j])
    assert dmax < 1e-3


def test_check_run_reports_schema_and_passes():
    report = hz.run_check({"alpha_re": 1, "alpha_im": 1, "n": [8, 16], "threads": 1})
    assert report["schema"] == hz.SCHEMA == "hypzero/1"
    assert report["summary"]["passed"]
    assert [r["n"] for r in report["records"]] == [8, 16]


def test_realcase_and_asym_runs():
    real = hz.run_realcase(2.0, 1.0, {"n": [10, 20]})
    assert real["summary"]["zero_free"]
    table = hz.run_asym_table({"alpha_re": 1, "n": [20, 40]})
    assert table["passed"]


def test_region_map_matches_half_plane_rule():
    m = hz.run_region_map({"alpha_re": 1, "grid": "0.1:1.6:-0.5:0.5:4"})
    assert m["failures"] == 0
    for pt in m["points"]:
        z = complex(*pt["z"])
        assert (pt["label"] == "in_E") == (z.real > 0.5)


def test_errors_map_to_python_exceptions():
    with pytest.raises(hz.DomainError):
        hz.coefficients(-1, 1.0)
    with pytest.raises(hz.ConfigError):
        hz.run_check({"no_such_key": 1})
    with pytest.raises(hz.ConfigError):
        hz.run_check({"alpha_re": -1})
    with pytest.raises(hz.RegionError):
        hz.I1_asymptotic(10, 0.2 + 0.0j, 1.0)
    assert issubclass(hz.RegionError, hz.HypzeroError)
