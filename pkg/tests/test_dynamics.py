import numpy as np
import pytest

from ymft import lie_core
from ymft.deformations import (family_e_only, family_general,
                               family_solvable, family_su2, make_deformation)
from ymft.dynamics import (GaugeParam, TheoryVariant, boundary_theta,
                           check_commutators, check_cubic_tower,
                           check_euler_lagrange_consistency,
                           check_gauge_invariance, check_linearization,
                           check_noether_identities,
                           check_strength_identities,
                           check_strength_transformation,
                           directional_lagrangian, field_equations,
                           gauge_variation, generic_field_equations,
                           lagrangian, lagrangian_form,
                           lagrangian_symmetric_form, run_identity_suite,
                           variant_e_only, variant_general, variant_linear)
from ymft.forms import LieForm, random_field_config, random_gauge_params
from ymft.jets import JetRing
from ymft.lie_core import InternalSpace
from ymft.strengths import FieldConfig, b_transpose_pairing, compute_strengths

RING = JetRing(3)
CMAP = np.array([[0.0, 0, 0], [0, 0, 1.0], [0, -1.0, 0]])


def sym_e(seed=5, m=2, n=3):
    rng = np.random.default_rng(seed)
    e = rng.uniform(-1, 1, (m, n, n))
    return e + e.transpose(0, 2, 1)


VARIANTS = {
    "linear-massless": lambda: variant_linear(np.zeros((3, 3))),
    "linear-massive": lambda: variant_linear(2.0 * np.eye(3)),
    "su2-massless": lambda: variant_general(family_su2(0.0, 0.7)),
    "su2-massive": lambda: variant_general(family_su2(2.0, 0.5)),
    "solvable": lambda: variant_general(
        family_solvable([1, 0, 0], [0, 0, 1], CMAP)),
    "e-only": lambda: variant_e_only(family_e_only(sym_e())),
}


def test_variant_validation():
    with pytest.raises(ValueError):
        TheoryVariant("general-parity-even", family_e_only(sym_e()))
    with pytest.raises(ValueError):
        TheoryVariant("e-only", family_su2(0.0, 0.7))
    ds = family_e_only(sym_e())
    mixed = make_deformation(ds.space_a, ds.space_b, ds.a, ds.b, ds.j, ds.k,
                             ds.e, np.ones((3, 2)))
    with pytest.raises(ValueError):
        TheoryVariant("e-only", mixed)  # nonzero mass against e


def test_lagrangian_zero_fields():
    for name, build in VARIANTS.items():
        v = build()
        za, zb = random_field_config(0, 0.0, 3, v.ds.space_a.dim,
                                     v.ds.space_b.dim)
        assert lagrangian(v, FieldConfig(za, zb)).max_abs() == 0.0


def test_linear_lagrangian_component_oracle():
    # abelian, massless, B = 0: L = (1/2) F ^ *F
    v = variant_linear(np.zeros((3, 3)))
    a_form, _ = random_field_config(3, 0.3, 3, 3, 3)
    zb = LieForm.zero(RING, 2, 3)
    val = lagrangian(v, FieldConfig(a_form, zb))
    f_t = {}
    for a in range(3):
        for mu in range(4):
            for nu in range(4):
                f_t[(a, mu, nu)] = a_form.d().tensor_component((mu, nu))[a]
    eta_inv = np.diag([-1.0, 1, 1, 1])
    # (1/2) F ^ *F = (1/4) F_{mn} F^{mn} vol
    oracle = np.zeros(RING.width)
    for a in range(3):
        for mu in range(4):
            for nu in range(4):
                oracle += 0.25 * eta_inv[mu, mu] * eta_inv[nu, nu] * RING.mul(
                    f_t[(a, mu, nu)], f_t[(a, mu, nu)])
    assert np.allclose(val.coeffs, oracle, atol=1e-12)


def test_more_symmetrical_lagrangian_form():
    ds = family_su2(0.0, 0.7)
    v = variant_general(ds)
    a_form, b_form = random_field_config(4, 0.1, 3, 3, 3)
    cfg = FieldConfig(a_form, b_form)
    pair = compute_strengths(cfg, ds)
    direct = lagrangian(v, cfg, pair)
    cross = lagrangian_symmetric_form(v, cfg, pair)
    assert np.abs(direct.coeffs - cross.coeffs).max() < 1e-11


def test_field_equations_zero_and_linear_forms():
    v = variant_linear(2.0 * np.eye(3))
    za, zb = random_field_config(0, 0.0, 3, 3, 3)
    e_a, e_b = field_equations(v, FieldConfig(za, zb))
    assert e_a.max_abs() == 0.0 and e_b.max_abs() == 0.0
    a_form, b_form = random_field_config(1, 0.2, 3, 3, 3)
    cfg = FieldConfig(a_form, b_form)
    e_a, e_b = field_equations(v, cfg)
    direct_a = a_form.d().hodge().d() + b_form.d().scale(2.0)
    direct_b = b_form.d().hodge().d() + a_form.d().scale(2.0)
    assert (e_a - direct_a).max_abs() < 1e-13
    assert (e_b - direct_b).max_abs() < 1e-13


def test_massive_su2_equations_match_component_transcription():
    # specialization of the general equations to the three-dimensional
    # massive family, written with the explicit bracket terms
    ds = family_su2(2.0, 0.5)
    v = variant_general(ds)
    cfg = FieldConfig(*random_field_config(3, 0.1, 3, 3, 3))
    pair = compute_strengths(cfg, ds)
    e_a, e_b = field_equations(v, cfg, pair)
    eps = lie_core.levi_civita3()
    lam, mass = 0.5, 2.0
    direct_a = (pair.starP.d() + cfg.A.wedge(pair.starP, eps)
                + pair.starQ.wedge(pair.starP, eps).scale(lam)
                - cfg.A.wedge(pair.starP, eps)
                + pair.Q.scale(mass))
    direct_b = (pair.starQ.d()
                + pair.starQ.wedge(pair.starQ, eps).scale(0.5 * lam)
                + pair.P.scale(mass))
    assert (e_a - direct_a).max_abs() < 1e-11
    assert (e_b - direct_b).max_abs() < 1e-11


def test_gauge_variation_oracle():
    ds = family_su2(0.0, 0.7)
    v = variant_general(ds)
    cfg = FieldConfig(*random_field_config(5, 0.1, 3, 3, 3))
    pair = compute_strengths(cfg, ds)
    gp = GaugeParam(*random_gauge_params(55, 0.1, 3, 3, 3))
    var = gauge_variation(v, cfg, pair, gp)
    # delta_xi B = -j(B, xi)-swap - b^T(*P) xi; massless family has j = 0
    bt = b_transpose_pairing(ds)
    oracle = np.zeros_like(var.xi_b.comps)
    for i in range(6):
        for p in range(3):
            acc = np.zeros(RING.width)
            for b in range(3):
                for c in range(3):
                    acc -= bt[p, b, c] * RING.mul(
                        pair.starP.comps[b, i], gp.xi.comps[c, 0])
            oracle[p, i] = acc
    assert np.allclose(var.xi_b.comps, oracle, atol=1e-13)
    assert var.chi_a.max_abs() == 0.0


def test_constant_parameter_variations_linear():
    v = variant_linear(np.zeros((3, 3)))
    cfg = FieldConfig(*random_field_config(2, 0.1, 3, 3, 3))
    xi = LieForm.basis(RING, 0, 3, 0, 0)   # constant function
    chi = LieForm.zero(RING, 1, 3)
    var = gauge_variation(v, cfg, None, GaugeParam(xi, chi))
    assert var.xi_a.max_abs() == 0.0  # d(const) = 0


@pytest.mark.parametrize("name", list(VARIANTS))
def test_gauge_invariance_all_variants(name):
    v = VARIANTS[name]()
    report = check_gauge_invariance(v, [1, 2], tol=1e-8)
    assert report.passed, report.as_dict()
    if name == "e-only":
        assert report.max_residual < 5e-15  # identically zero, roundoff only


def test_gauge_invariance_negative_control():
    eps = lie_core.levi_civita3()
    bad = make_deformation(InternalSpace(3), InternalSpace(3), eps,
                           0.3 * eps, eps, 0.3 * eps, np.zeros((3, 3, 3)),
                           2.0 * np.eye(3), h_map=0.3 * np.eye(3))
    report = check_gauge_invariance(variant_general(bad), [1, 2])
    assert report.max_residual > 1e-3


@pytest.mark.parametrize("name", list(VARIANTS))
def test_noether_identities(name):
    v = VARIANTS[name]()
    report = check_noether_identities(v, [1, 2], tol=1e-9)
    assert report.passed, report.as_dict()


@pytest.mark.parametrize("name", list(VARIANTS))
def test_strength_identities(name):
    v = VARIANTS[name]()
    report = check_strength_identities(v, [1, 2], tol=1e-9)
    assert report.passed, report.as_dict()
    names = {r.name for r in report.results}
    assert "bianchi-F" in names
    if name == "su2-massive":
        assert "substitution-Q-massive" in names


def test_strength_identities_negative_control():
    eps = lie_core.levi_civita3()
    base = family_su2(0.0, 0.7)
    b_bad = base.b.copy()
    b_bad[0, 1, 2] += 0.1
    bad = make_deformation(base.space_a, base.space_b, base.a, b_bad,
                           base.j, base.k, base.e, base.mass.m,
                           h_map=base.h_map, validate=False)
    report = check_strength_identities(variant_general(bad), [1], tol=1e-9)
    assert not report.passed


@pytest.mark.parametrize("name", list(VARIANTS))
def test_commutators(name):
    v = VARIANTS[name]()
    report = check_commutators(v, [(1, 2)], tol=1e-9)
    assert report.passed, report.as_dict()


def test_commutator_closure_structure():
    # massless: j = 0 makes the mixed closure parameter vanish (direct
    # product); massive: chi_3 = j(xi_1, chi_2) is nonzero (semi-direct)
    massless = family_su2(0.0, 0.7)
    massive = family_su2(2.0, 0.5)
    xi, chi = random_gauge_params(1, 0.5, 3, 3, 3)
    assert xi.wedge(chi, massless.j).max_abs() == 0.0
    assert xi.wedge(chi, massive.j).max_abs() > 1e-3


@pytest.mark.parametrize("name", list(VARIANTS))
def test_linearization(name):
    v = VARIANTS[name]()
    report = check_linearization(v, [1, 2], tol=1e-12)
    assert report.passed, report.as_dict()


@pytest.mark.parametrize("name", ["linear-massive", "su2-massless",
                                  "su2-massive", "e-only"])
def test_euler_lagrange_consistency(name):
    v = VARIANTS[name]()
    report = check_euler_lagrange_consistency(v, [1], tol=1e-9)
    assert report.passed, report.as_dict()
    names = [r.name for r in report.results]
    assert "homogeneity-k1" in names and "homogeneity-k2" in names


def test_generic_el_matches_linear_exactly():
    v = variant_linear(2.0 * np.eye(3))
    cfg = FieldConfig(*random_field_config(3, 0.1, 3, 3, 3))
    gen_a, gen_b = generic_field_equations(v, cfg)
    hand_a, hand_b = field_equations(v, cfg)
    assert (gen_a - hand_a).max_abs() < 1e-14
    assert (gen_b - hand_b).max_abs() < 1e-14


def test_cubic_tower_families():
    for ds in (family_su2(2.0, 0.5), family_e_only(sym_e()),
               family_solvable([1, 0, 0], [0, 0, 1], CMAP)):
        report = check_cubic_tower(ds, [1], tol=1e-10)
        assert report.passed, report.as_dict()


@pytest.mark.parametrize("name", ["linear-massless", "su2-massless",
                                  "su2-massive", "solvable", "e-only"])
def test_strength_transformation(name):
    v = VARIANTS[name]()
    report = check_strength_transformation(v, [1], tol=1e-9)
    assert report.passed, report.as_dict()


def test_boundary_theta_linear_forms():
    v = variant_linear(2.0 * np.eye(3))
    cfg = FieldConfig(*random_field_config(2, 0.1, 3, 3, 3))
    gp = GaugeParam(*random_gauge_params(3, 0.1, 3, 3, 3))
    theta_xi, theta_chi = boundary_theta(v, cfg, None, gp)
    assert theta_xi.max_abs() == 0.0
    oracle = cfg.A.d().wedge(gp.chi, 2.0 * np.eye(3)[None])
    assert (theta_chi - oracle).max_abs() == 0.0


def test_directional_lagrangian_matches_finite_difference():
    ds = family_su2(0.0, 0.7)
    v = variant_general(ds)
    cfg = FieldConfig(*random_field_config(3, 0.1, 3, 3, 3))
    da, db = random_field_config(17, 0.05, 3, 3, 3)
    exact = directional_lagrangian(v, cfg, da, db)
    eps = 1e-6
    plus = lagrangian_form(v, FieldConfig(cfg.A + da.scale(eps),
                                          cfg.B + db.scale(eps)))
    minus = lagrangian_form(v, FieldConfig(cfg.A + da.scale(-eps),
                                           cfg.B + db.scale(-eps)))
    fd = (plus - minus).scale(1.0 / (2.0 * eps))
    assert (exact - fd).max_abs() < 1e-9


def test_run_identity_suite_aggregates():
    v = variant_linear(np.zeros((3, 3)))
    out = run_identity_suite(v, [1], checks=["gauge-invariance",
                                             "linearization"])
    assert set(out["reports"]) == {"gauge-invariance", "linearization"}
    assert all(rep.passed for rep in out["reports"].values())
    assert set(out["timings"]) == set(out["reports"])


def test_rich_general_family_suite():
    scaled = lie_core.StructureConstants(InternalSpace(3),
                                         0.8 * lie_core.levi_civita3())
    ds = family_general(massless_a=lie_core.su2(), massless_b=scaled,
                        h0=0.8 * np.eye(3), massive=lie_core.su2(),
                        mass_value=2.0)
    v = variant_general(ds)
    assert check_gauge_invariance(v, [1], tol=1e-8).passed
    assert check_noether_identities(v, [1], tol=1e-9).passed
    assert check_strength_transformation(v, [1], tol=1e-9).passed
