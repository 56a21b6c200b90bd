import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.polynomial import polynomial as npoly

from jumpspec import (
    JumpData,
    XiOnNodeError,
    apply,
    barycentric_weights,
    chebyshev_gauss_lobatto,
    corrected_derivative,
    corrected_integrate,
    corrected_interpolate,
    correction_matrix,
    correction_terms,
    correction_weights,
    custom,
    derivative_matrix,
    equidistant,
    integrate,
    interpolate,
    jump_weights,
    one_sided_derivatives_at_node,
    quad_weights,
    reconstruct_pieces,
)
from jumpspec.refproblems import LegendreProblem, SyntheticPiecewise


def interpolant_derivative_at(w, data, x0, order):
    """Independent oracle: refit the interpolant's coefficients, then differentiate."""
    g = w.grid
    xs = np.linspace(g.a, g.b, 6 * (g.N + 1))
    p = np.polynomial.Polynomial.fit(xs, interpolate(w, data, xs), g.N)
    return p.deriv(order)(x0) if order else p(x0)


# --- jump weights -----------------------------------------------------------


def test_constant_jump_gives_unit_weights():
    g = equidistant(-1, 1, 5)
    np.testing.assert_array_equal(jump_weights(JumpData(0.1, [1.0]), g), np.ones(6))


def test_weight_series_linear_term():
    g = custom(-1, 1, [-1.0, 0.5, 1.0])
    got = jump_weights(JumpData(0.0, [1.0, 2.0]), g)
    assert got[1] == pytest.approx(2.0, abs=1e-15)


def test_weight_series_quadratic_term():
    g = custom(-1, 1, [-1.0, 0.8, 1.0])
    got = jump_weights(JumpData(0.3, [0.0, 0.0, 6.0]), g)
    assert got[1] == pytest.approx(0.75, abs=1e-15)


def test_empty_jumps_give_zero_weights():
    g = equidistant(-1, 1, 4)
    np.testing.assert_array_equal(jump_weights(JumpData(0.1, []), g), np.zeros(5))


def test_xi_on_node_rejected():
    g = equidistant(-1, 1, 4)
    with pytest.raises(XiOnNodeError):
        jump_weights(JumpData(0.0, [1.0]), g)


def test_xi_outside_interval_rejected():
    g = equidistant(-1, 1, 4)
    with pytest.raises(ValueError):
        jump_weights(JumpData(1.5, [1.0]), g)
    with pytest.raises(ValueError):
        jump_weights(JumpData(-1.0, [1.0]), g)


def test_non_finite_jumps_rejected():
    with pytest.raises(ValueError):
        JumpData(0.1, [np.inf])


# --- correction terms and matrix -------------------------------------------


def test_zero_jumps_vanish_everywhere():
    g = equidistant(-1, 1, 6)
    jd = JumpData(0.05, [0.0, 0.0, 0.0])
    np.testing.assert_array_equal(correction_terms(jd, g, 0.7), np.zeros(7))
    np.testing.assert_array_equal(correction_matrix(jd, g), np.zeros((7, 7)))


def test_correction_terms_side_pattern():
    g = equidistant(-1, 1, 4)  # nodes -1, -0.5, 0, 0.5, 1
    jd = JumpData(0.1, [2.0])
    s = correction_terms(jd, g, 0.7)
    g_w = jump_weights(jd, g)
    # probe right of the discontinuity: nodes left of it get +g, others 0
    np.testing.assert_array_equal(s[:3], g_w[:3])
    np.testing.assert_array_equal(s[3:], 0.0)
    s_left = correction_terms(jd, g, -0.7)
    np.testing.assert_array_equal(s_left[:3], 0.0)
    np.testing.assert_array_equal(s_left[3:], -g_w[3:])


def test_correction_matrix_signs_and_diagonal():
    g = equidistant(-1, 1, 5)
    jd = JumpData(0.17, [1.0, -3.0])
    S = correction_matrix(jd, g)
    g_w = jump_weights(jd, g)
    right = g.nodes > jd.xi
    for i in range(6):
        for j in range(6):
            if right[i] and not right[j]:
                assert S[i, j] == g_w[j]
            elif not right[i] and right[j]:
                assert S[i, j] == -g_w[j]
            else:
                assert S[i, j] == 0.0
    assert np.all(np.diag(S) == 0.0)


def test_correction_matrix_consistent_with_terms():
    g = chebyshev_gauss_lobatto(-1, 1, 7)
    jd = JumpData(0.21, [0.5, 1.5, -2.0])
    S = correction_matrix(jd, g)
    for i, xi in enumerate(g.nodes):
        np.testing.assert_array_equal(S[i], correction_terms(jd, g, xi))


def test_prefactor_antisymmetry():
    g = chebyshev_gauss_lobatto(-1, 1, 9)
    jd = JumpData(-0.3, [1.0, 0.7, 0.2])
    cw = correction_weights(jd, g)
    S, g_w = cw.at_nodes, cw.node_weights
    for i in range(10):
        for j in range(10):
            if g_w[i] != 0.0 and g_w[j] != 0.0:
                assert S[i, j] / g_w[j] == pytest.approx(-S[j, i] / g_w[i], abs=1e-14)


# --- corrected interpolation ------------------------------------------------


def test_step_function_reproduced_exactly():
    g = custom(-1, 1, [-1.0, -1.0 / 3.0, 1.0 / 3.0, 1.0])
    w = barycentric_weights(g)
    xi = 0.1
    f = np.heaviside(g.nodes - xi, 0.5)
    jd = JumpData(xi, [1.0])
    assert corrected_interpolate(w, f, jd, -0.5) == 0.0
    assert corrected_interpolate(w, f, jd, 0.5) == 1.0


def test_no_jumps_reduces_to_plain_interpolation_bitwise():
    g = chebyshev_gauss_lobatto(-1, 1, 10)
    w = barycentric_weights(g)
    rng = np.random.default_rng(1)
    f = rng.standard_normal(11)
    x = rng.uniform(-1, 1, 100)
    jd = JumpData(0.123, [])
    np.testing.assert_array_equal(corrected_interpolate(w, f, jd, x), interpolate(w, f, x))


def test_collocation_preserved_exactly():
    g = chebyshev_gauss_lobatto(-1, 1, 8)
    w = barycentric_weights(g)
    rng = np.random.default_rng(2)
    f = rng.standard_normal(9)
    jd = JumpData(0.4, [3.0, -1.0, 0.5])
    np.testing.assert_array_equal(corrected_interpolate(w, f, jd, g.nodes), f)


@settings(max_examples=30, deadline=None)
@given(
    N=st.integers(2, 12),
    seed=st.integers(0, 10_000),
    order=st.integers(0, 4),
)
def test_collocation_property(N, seed, order):
    rng = np.random.default_rng(seed)
    g = chebyshev_gauss_lobatto(-1, 1, N)
    w = barycentric_weights(g)
    f = rng.uniform(-3, 3, N + 1)
    xi = rng.uniform(-0.95, 0.95)
    while np.any(g.nodes == xi):
        xi = rng.uniform(-0.95, 0.95)
    jd = JumpData(xi, rng.uniform(-2, 2, order + 1))
    np.testing.assert_array_equal(corrected_interpolate(w, f, jd, g.nodes), f)


def test_kinked_legendre_interpolation_improves_near_discontinuity():
    prob = LegendreProblem(2, 0.3)
    g = chebyshev_gauss_lobatto(-0.8, 0.8, 12)
    w = barycentric_weights(g)
    f = prob.value(g.nodes)
    mids = 0.5 * (g.nodes[:-1] + g.nodes[1:])
    plain = np.abs(interpolate(w, f, mids) - prob.value(mids)).max()
    corrected = np.abs(corrected_interpolate(w, f, prob.jump_data(6), mids) - prob.value(mids)).max()
    assert corrected < 1e-3 * plain


def test_probe_at_discontinuity_averages_branches():
    g = equidistant(-1, 1, 4)
    w = barycentric_weights(g)
    xi = 0.1
    f = np.heaviside(g.nodes - xi, 0.5)
    assert corrected_interpolate(w, f, JumpData(xi, [1.0]), xi) == pytest.approx(0.5, abs=1e-14)


# --- corrected differentiation ----------------------------------------------


def test_kink_derivative_is_sign_function():
    g = chebyshev_gauss_lobatto(-1, 1, 8)
    xi = 0.2
    f = np.abs(g.nodes - xi)
    D = derivative_matrix(g, 1)
    got = corrected_derivative(D, f, JumpData(xi, [0.0, 2.0]))
    np.testing.assert_allclose(got, np.sign(g.nodes - xi), rtol=0, atol=1e-11)


def test_zero_jumps_match_plain_apply_bitwise():
    g = chebyshev_gauss_lobatto(-1, 1, 10)
    D = derivative_matrix(g, 1)
    f = np.cos(g.nodes)
    np.testing.assert_array_equal(corrected_derivative(D, f, JumpData(0.3, [])), apply(D, f))


def test_composite_rows_away_from_discontinuity_untouched():
    g = equidistant(-1, 1, 16)
    D = derivative_matrix(g, 1, 2)
    rng = np.random.default_rng(3)
    f = rng.standard_normal(17)
    xi = g.nodes[8] + 0.3 * (g.nodes[9] - g.nodes[8])
    got = corrected_derivative(D, f, JumpData(xi, [1.0, 2.0]))
    plain = apply(D, f)
    # only the two stencils straddling xi may change
    touched = [8, 9]
    for i in range(17):
        if i not in touched:
            assert got[i] == plain[i]
    assert np.any(got[touched] != plain[touched])


def test_kinked_legendre_derivative_accuracy():
    prob = LegendreProblem(2, 0.3)
    g = chebyshev_gauss_lobatto(-0.8, 0.8, 24)
    D = derivative_matrix(g, 1)
    f = prob.value(g.nodes)
    got = corrected_derivative(D, f, prob.jump_data(12))
    exact = prob.derivative(g.nodes, 1)
    assert np.abs(got - exact).max() <= 1e-6


# --- one-sided derivatives at an on-node discontinuity -----------------------


def test_one_sided_smooth_limit():
    g = equidistant(0, 4, 4)
    f = np.sin(g.nodes)
    left, right = one_sided_derivatives_at_node(g, f, 2, [0.0, 0.0, 0.0])
    assert left == right
    smooth = (f[3] - f[1]) / 2.0
    assert left == pytest.approx(smooth, rel=1e-14)


def test_one_sided_kink_values():
    g = equidistant(0, 4, 4)
    f = np.abs(g.nodes - g.nodes[2])
    left, right = one_sided_derivatives_at_node(g, f, 2, [0.0, 2.0, 0.0])
    assert (left, right) == (-1.0, 1.0)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 100_000))
def test_one_sided_jump_condition(seed):
    rng = np.random.default_rng(seed)
    nodes = np.sort(rng.uniform(-2, 2, 7))
    while np.any(np.diff(nodes) < 1e-3):
        nodes = np.sort(rng.uniform(-2, 2, 7))
    g = custom(-2, 2, nodes)
    f = rng.uniform(-5, 5, 7)
    J = rng.uniform(-2, 2, 3)
    k = int(rng.integers(1, 6))
    left, right = one_sided_derivatives_at_node(g, f, k, J)
    assert right - left == pytest.approx(J[1], abs=1e-13)


def test_one_sided_boundary_node_rejected():
    g = equidistant(0, 1, 4)
    with pytest.raises(ValueError):
        one_sided_derivatives_at_node(g, np.zeros(5), 0, [0.0, 1.0, 0.0])
    with pytest.raises(ValueError):
        one_sided_derivatives_at_node(g, np.zeros(5), 4, [0.0, 1.0, 0.0])


def test_one_sided_missing_jumps_rejected():
    g = equidistant(0, 1, 4)
    with pytest.raises(ValueError):
        one_sided_derivatives_at_node(g, np.zeros(5), 2, [0.0, 1.0])


# --- corrected integration ----------------------------------------------------


def test_zero_jumps_match_plain_integrate():
    g = chebyshev_gauss_lobatto(-1, 1, 9)
    w = barycentric_weights(g)
    rule = quad_weights(g)
    f = np.exp(g.nodes)
    jd = JumpData(0.37, [0.0, 0.0])
    assert corrected_integrate(rule, w, f, jd) == integrate(rule, f)


def test_step_integral_exact():
    g = chebyshev_gauss_lobatto(-1, 1, 3)
    w = barycentric_weights(g)
    rule = quad_weights(g)
    xi = 0.1
    f = np.heaviside(g.nodes - xi, 0.5)
    got = corrected_integrate(rule, w, f, JumpData(xi, [1.0]))
    assert got == pytest.approx(0.9, abs=1e-13)


def test_kinked_legendre_integral_accuracy():
    prob = LegendreProblem(2, 0.3)
    g = chebyshev_gauss_lobatto(-0.8, 0.8, 16)
    w = barycentric_weights(g)
    rule = quad_weights(g)
    f = prob.value(g.nodes)
    got = corrected_integrate(rule, w, f, prob.jump_data(8))
    assert got == pytest.approx(prob.integral(-0.8, 0.8), abs=1e-8)


# --- jump-condition reproduction ---------------------------------------------


@pytest.mark.parametrize("N,M", [(6, 2), (9, 4), (12, 5)])
def test_reconstructed_pieces_reproduce_jumps(N, M):
    rng = np.random.default_rng(N * 100 + M)
    g = chebyshev_gauss_lobatto(-1, 1, N)
    w = barycentric_weights(g)
    f = rng.uniform(-2, 2, N + 1)
    xi = 0.237
    J = rng.uniform(-3, 3, M + 1)
    minus, plus = reconstruct_pieces(f, JumpData(xi, J), g)
    for m in range(N + 1):
        dp = interpolant_derivative_at(w, plus, xi, m)
        dm = interpolant_derivative_at(w, minus, xi, m)
        expected = J[m] if m <= M else 0.0
        scale = max(1.0, abs(dp), abs(dm))
        assert (dp - dm) - expected == pytest.approx(0.0, abs=1e-9 * scale)


# --- piecewise-polynomial exactness -------------------------------------------


@pytest.mark.parametrize("seed", range(6))
def test_piecewise_polynomial_exactness(seed):
    rng = np.random.default_rng(seed)
    N = int(rng.integers(4, 13))
    M = int(rng.integers(0, N + 1))
    g = chebyshev_gauss_lobatto(-1, 1, N) if seed % 2 else equidistant(-1, 1, N)
    w = barycentric_weights(g)
    left = rng.uniform(-1, 1, N + 1)
    delta = np.zeros(N + 1)
    delta[: M + 1] = rng.uniform(-1, 1, M + 1)
    prob = SyntheticPiecewise(left, npoly.polyadd(left, delta), xi=float(rng.uniform(-0.6, 0.6)))
    while np.any(g.nodes == prob.xi):
        prob = SyntheticPiecewise(left, prob.right, xi=float(rng.uniform(-0.6, 0.6)))
    jd = prob.jump_data(M)
    f = prob.value(g.nodes)

    probes = rng.uniform(-1, 1, 200)
    vals = corrected_interpolate(w, f, jd, probes)
    assert np.abs(vals - prob.value(probes)).max() <= 1e-11

    D = derivative_matrix(g, 1)
    got = corrected_derivative(D, f, jd)
    assert np.abs(got - prob.derivative(g.nodes, 1)).max() <= 1e-11 * max(1.0, np.abs(D.entries).max())

    rule = quad_weights(g)
    assert corrected_integrate(rule, w, f, jd) == pytest.approx(prob.integral(-1, 1), abs=1e-11)


# --- several discontinuities ---------------------------------------------------


def test_two_discontinuities_sum_their_corrections():
    g = chebyshev_gauss_lobatto(-1, 1, 10)
    w = barycentric_weights(g)
    pieces = [np.array([0.3, 1.0]), np.array([-0.2, 0.5, 1.0]), np.array([0.1, -1.0])]
    cuts = (-0.4, 0.33)

    def value(x):
        x = np.asarray(x, dtype=float)
        out = npoly.polyval(x, pieces[0])
        out = np.where(x > cuts[0], npoly.polyval(x, pieces[1]), out)
        out = np.where(x > cuts[1], npoly.polyval(x, pieces[2]), out)
        return out

    jds = []
    for cut, (lo, hi) in zip(cuts, [(0, 1), (1, 2)]):
        delta = npoly.polysub(pieces[hi], pieces[lo])
        J = [npoly.polyval(cut, npoly.polyder(delta, m)) if m < len(delta) else 0.0 for m in range(3)]
        jds.append(JumpData(cut, J))

    f = value(g.nodes)
    probes = np.linspace(-0.99, 0.99, 211)
    vals = corrected_interpolate(w, f, jds, probes)
    np.testing.assert_allclose(vals, value(probes), rtol=0, atol=1e-12)

    with pytest.raises(ValueError):
        corrected_interpolate(w, f, [jds[0], jds[0]], 0.5)


def test_corrected_derivative_validates_xi():
    g = equidistant(-1, 1, 4)
    D = derivative_matrix(g, 1)
    with pytest.raises(XiOnNodeError):
        corrected_derivative(D, np.zeros(5), JumpData(0.5, [1.0]))


def test_jump_data_json_wire_format():
    jd = JumpData(0.25, [0.0, 2.0, -1.5])
    d = jd.to_dict()
    assert d == {"xi": 0.25, "J": [0.0, 2.0, -1.5]}
    back = JumpData.from_dict(d)
    assert back.xi == jd.xi
    np.testing.assert_array_equal(back.jumps, jd.jumps)
    assert JumpData.from_dict({"xi": 0.1, "J": []}).order == -1
