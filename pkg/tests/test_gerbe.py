"""Gerbe coherence: naturality, 3-curvature, pasting defect, gauge flow,
section transport."""

import numpy as np
import pytest

from gerbekit.cochain import Cochain1, nu_component, omega_component
from gerbekit.errors import IncompleteFieldError
from gerbekit.fixtures import (exponentiated_gerbe, loglog_slope,
                               random_bundle, random_gauge,
                               random_linear_gerbe, rng_for, smooth_bundle)
from gerbekit.gerbe import (GerbeGauge, SectionData, beta_inverse_defect,
                            bundle_induced_gerbe, cocycle_defect_group,
                            fake_curvature_defect, gauge_transform_linear,
                            linearize_gerbe, naturality_defect, omega_group,
                            sweep_section, trivial_gerbe, word_value,
                            zigzag_check)
from gerbekit.liegroup import SO3, SU2
from gerbekit.pathspace import (DELETE, INSERT, LOOP_DELETE, LOOP_INSERT,
                                TwoCellGenerator, tetra_sweep_word)
from gerbekit.simplicial import based_loops, standard_simplex

EPS = [10.0 ** e for e in (-1, -1.5, -2, -2.5)]
GROUPS = [SU2, SO3]


def gen(kind, verts, pos):
    return TwoCellGenerator(kind, tuple(verts), pos)


# --------------------------------------------------------------------------
# bundle-induced coherence (exact cancellation oracles)
# --------------------------------------------------------------------------

def test_trivial_gerbe_everything_trivial():
    cx = standard_simplex(3)
    g = trivial_gerbe(SU2, cx)
    assert np.allclose(omega_group(g, (0, 1, 2, 3, 0)), SU2.eye)
    u = SU2.random_element(np.random.default_rng(0))
    assert naturality_defect(g, (0, 1, 2), u) < 1e-14
    assert zigzag_check(g) == []


def test_flat_bundle_induces_trivial_gerbe():
    cx = standard_simplex(2)
    b = random_bundle(SU2, cx, np.random.default_rng(1))
    flat = bundle_induced_gerbe(
        type(b)(SU2, cx, Cochain1(SU2, "group",
                                  {e: SU2.eye.copy() for e in cx.edges})))
    assert np.allclose(flat.phi_read(0, 1).matrix, np.eye(3))
    assert np.allclose(flat.beta_read((0, 1, 2, 0)).matrix, np.eye(3))


@pytest.mark.parametrize("g", GROUPS)
def test_bundle_induced_naturality_exact(g):
    cx = standard_simplex(3)
    rng = np.random.default_rng(2)
    gb = bundle_induced_gerbe(random_bundle(g, cx, rng))
    for tri in cx.triangles:
        for _ in range(20):
            assert naturality_defect(gb, tri, g.random_element(rng)) <= 1e-10


@pytest.mark.parametrize("g", GROUPS)
def test_bundle_induced_omega_and_cocycle_exact(g):
    cx = standard_simplex(4)
    rng = np.random.default_rng(3)
    gb = bundle_induced_gerbe(random_bundle(g, cx, rng))
    for loop in based_loops(cx, 3):
        assert np.linalg.norm(omega_group(gb, loop) - g.eye) <= 1e-10
    D = cocycle_defect_group(gb, (0, 1, 2, 3, 4))
    assert np.linalg.norm(D - g.eye) <= 1e-10


def test_bundle_induced_beta_inverse_law():
    cx = standard_simplex(3)
    gb = bundle_induced_gerbe(random_bundle(SU2, cx, np.random.default_rng(4)))
    for tri in cx.triangles:
        assert beta_inverse_defect(gb, tri) <= 1e-10


def test_naturality_perturbation_grows_linearly():
    """Finite-difference oracle: perturbing beta by exp(tD) moves the defect
    proportionally to t."""
    cx = standard_simplex(2)
    rng = np.random.default_rng(5)
    gb = bundle_induced_gerbe(random_bundle(SU2, cx, rng))
    D = SU2.random_derivation(rng, 1.0)
    u = SU2.random_element(rng)
    defects = []
    for t in (1e-3, 2e-3):
        g2 = bundle_induced_gerbe(random_bundle(SU2, cx, np.random.default_rng(5)))
        key = (0, 1, 2)
        g2.beta[key] = SU2.exp_derivation(t * D) @ g2.beta[key]
        defects.append(naturality_defect(g2, (0, 1, 2), u))
    ratio = defects[1] / defects[0]
    assert 1.8 < ratio < 2.2


# --------------------------------------------------------------------------
# linearization
# --------------------------------------------------------------------------

def test_linearize_trivial_gerbe():
    cx = standard_simplex(2)
    L = linearize_gerbe(trivial_gerbe(SU2, cx))
    assert all(np.linalg.norm(L.mu.read(*e)) == 0 for e in cx.edges)
    assert all(np.linalg.norm(L.B.read_loop(t + (t[0],))) == 0
               for t in cx.triangles)


def test_linearize_round_trip():
    cx = standard_simplex(3)
    rng = rng_for(0, "lin-round")
    L = random_linear_gerbe(SU2, cx, 0.05, rng)
    g = exponentiated_gerbe(SU2, cx, L)
    L2 = linearize_gerbe(g)
    for e in cx.edges:
        assert np.linalg.norm(L2.mu.read(*e) - L.mu.read(*e)) < 1e-12
    for t in cx.triangles:
        assert np.linalg.norm(L2.B.read_loop(t + (t[0],))
                              - L.B.read_loop(t + (t[0],))) < 1e-12


def test_linearize_bundle_induced_gerbe():
    cx = standard_simplex(2)
    b = smooth_bundle(SU2, cx, 0.05, rng_for(1, "lin-ind"))
    g = bundle_induced_gerbe(b)
    L = linearize_gerbe(g)
    for t in cx.triangles:
        assert np.linalg.norm(L.B.read_loop(t + (t[0],))) == 0
    from gerbekit.liegroup import SO3 as aut_space
    for e in cx.edges:
        assert np.allclose(L.mu.read(*e),
                           aut_space.log(SU2.Ad(b.f.read(*e)).matrix))


# --------------------------------------------------------------------------
# fake curvature and 3-curvature cross-checks
# --------------------------------------------------------------------------

def test_fake_curvature_trivial():
    cx = standard_simplex(2)
    assert fake_curvature_defect(trivial_gerbe(SU2, cx), (0, 1, 2, 0)) < 1e-14


def test_fake_curvature_expansion_slope():
    cx = standard_simplex(2)
    vals = []
    for eps in EPS:
        b = smooth_bundle(SU2, cx, eps, rng_for(2, "t-fake"))
        gb = bundle_induced_gerbe(b)
        vals.append(fake_curvature_defect(gb, (0, 1, 2, 0)))
    assert loglog_slope(EPS, vals) >= 2.8


def test_fake_curvature_drops_B_term_when_K_trivial():
    """Bundle-induced data has B = 0, so nu is the pure d(mu) + mu^2 pattern."""
    cx = standard_simplex(2)
    b = smooth_bundle(SU2, cx, 0.05, rng_for(3, "t-fakeB"))
    L = linearize_gerbe(bundle_induced_gerbe(b))
    loop = (0, 1, 2, 0)
    withB = nu_component(L.mu, L.B, loop)
    without = nu_component(L.mu, None, loop)
    assert np.allclose(withB, without)


def test_omega_group_matches_component_through_third_order():
    cx = standard_simplex(3)
    vals = []
    for eps in EPS:
        L = random_linear_gerbe(SU2, cx, eps, rng_for(4, "t-omega"), smooth=False)
        g = exponentiated_gerbe(SU2, cx, L)
        worst = 0.0
        for loop in based_loops(cx, 3):
            om = omega_component(L.mu, L.B, loop)
            worst = max(worst, SU2.algebra_residual_norm(
                SU2.log(omega_group(g, loop)) - om))
        vals.append(worst)
    assert loglog_slope(EPS, vals) >= 3.8


def test_sweep_word_value_matches_omega_group_through_second_order():
    """The step-by-step transport value of the tetrahedron sweep and the
    four-factor composition differ only in transport routes (third order)."""
    cx = standard_simplex(3)
    vals = []
    for eps in EPS:
        L = random_linear_gerbe(SU2, cx, eps, rng_for(5, "t-word"))
        g = exponentiated_gerbe(SU2, cx, L)
        word = tetra_sweep_word(cx, 0, 1, 2, 3)
        lhs = SU2.log(word_value(g, word))
        rhs = SU2.log(omega_group(g, (0, 1, 2, 3, 0)))
        vals.append(np.linalg.norm(lhs - rhs))
    assert loglog_slope(EPS, vals) >= 2.8


# --------------------------------------------------------------------------
# gauge transformations
# --------------------------------------------------------------------------

def test_gauge_identity_transformation():
    cx = standard_simplex(3)
    L = random_linear_gerbe(SU2, cx, 0.05, rng_for(6, "t-gauge0"))
    h = GerbeGauge(xi={v: np.zeros((3, 3)) for v in range(4)},
                   eta=Cochain1(SU2, "algebra",
                                {e: np.zeros((2, 2), complex) for e in cx.edges}))
    out = gauge_transform_linear(L, h, cx)
    for e in cx.edges:
        assert np.allclose(out.fields.mu.read(*e), L.mu.read(*e))
    for t in cx.triangles:
        assert np.allclose(out.fields.B.read_loop(t + (t[0],)),
                           L.B.read_loop(t + (t[0],)))


@pytest.mark.parametrize("which", ["nu", "omega"])
def test_gauge_predictions_quadratic_in_scale(which):
    cx = standard_simplex(3)
    deltas = [1e-1, 1e-2, 1e-3]
    errs = []
    for d in deltas:
        L = random_linear_gerbe(SU2, cx, 1e-2, rng_for(7, "t-gauge"))
        h0 = random_gauge(SU2, cx, 1e-2, rng_for(7, "t-gauge-p"))
        h = GerbeGauge(xi={v: d * x for v, x in h0.xi.items()},
                       eta=h0.eta.map_values(lambda m: d * m, "algebra"))
        out = gauge_transform_linear(L, h, cx)
        worst = 0.0
        if which == "nu":
            for tri in cx.triangles:
                rec = nu_component(out.fields.mu, out.fields.B, tri + (tri[0],))
                worst = max(worst, SU2.derivation_residual_norm(
                    rec - out.nu_pred.values[tri]))
        else:
            for tet in cx.tetrahedra:
                rec = omega_component(out.fields.mu, out.fields.B, tet + (tet[0],))
                worst = max(worst, SU2.algebra_residual_norm(
                    rec - out.omega_pred.values[tet]))
        errs.append(worst)
    assert loglog_slope(deltas, errs) >= 1.8


# --------------------------------------------------------------------------
# section transport
# --------------------------------------------------------------------------

def test_sweep_round_trip_trivial_gerbe():
    cx = standard_simplex(2)
    g = trivial_gerbe(SU2, cx)
    rng = np.random.default_rng(8)
    s = SectionData((0, 1), (SU2.random_element(rng),))
    ins = gen(INSERT, (0, 2, 1), 0)
    dele = gen(DELETE, (0, 2, 1), 0)
    back = sweep_section(g, sweep_section(g, s, ins), dele)
    assert back.path == s.path
    assert np.allclose(back.entries[0], s.entries[0])


def test_backtrack_sweep_preserves_section_bundle_induced():
    """Zigzag symmetry: deleting a backtrack composes the entries through
    the connection with a trivial K factor; inserting it back returns the
    section exactly."""
    cx = standard_simplex(4)
    rng = np.random.default_rng(9)
    g = bundle_induced_gerbe(random_bundle(SU2, cx, rng))
    for (x, z) in ((0, 1), (2, 4), (3, 1)):
        u1, u2 = SU2.random_element(rng), SU2.random_element(rng)
        s = SectionData((x, z, x), (u1, u2))
        dele = gen(DELETE, (x, z, x), 0)
        merged = sweep_section(g, s, dele)
        assert merged.path == (x, x)
        expected = u1 @ g.phi_read(x, z).apply_group(u2)
        assert np.linalg.norm(merged.entries[0] - expected) <= 1e-10
        # thin-homotopy invariance of the composite
        assert np.linalg.norm(merged.composite(g) - s.composite(g)) <= 1e-10


def test_loop_sweep_conserves_holonomy():
    """Sweeping the full triangle loop out of a constant path preserves the
    transported composite of the section."""
    cx = standard_simplex(2)
    rng = np.random.default_rng(10)
    g = bundle_induced_gerbe(random_bundle(SU2, cx, rng))
    s = SectionData((0, 0), (SU2.random_element(rng),))
    out = sweep_section(g, s, gen(LOOP_INSERT, (0, 1, 2), 0))
    assert out.path == (0, 1, 2, 0)
    assert np.linalg.norm(out.composite(g) - s.composite(g)) <= 1e-10
    back = sweep_section(g, out, gen(LOOP_DELETE, (0, 1, 2), 0))
    assert np.allclose(back.entries[0], s.entries[0])


def test_zigzag_check_reports_hand_set_violation():
    cx = standard_simplex(2)
    g = bundle_induced_gerbe(random_bundle(SU2, cx, np.random.default_rng(11)))
    assert zigzag_check(g) == []
    bad = SU2.exp(SU2.random_algebra(np.random.default_rng(12), 0.1))
    g.k2[(0, 1, 1)] = bad
    report = zigzag_check(g)
    assert len(report) == 1 and report[0][0] == (0, 1, 1)


def test_k2_read_missing_raises():
    cx = standard_simplex(2)
    g = trivial_gerbe(SU2, cx)
    g.k2.pop((0, 1, 2))
    with pytest.raises(IncompleteFieldError):
        g.k2_read((0, 1, 2, 0))
