import pytest

from leibconf.poly import D, Poly
from leibconf.conformal import (
    ModuleHom,
    adjoint_action,
    check_jacobi,
    is_automorphism,
)
from leibconf.report import PreconditionError
from leibconf.cohomology import Cochain, delta, zero_cochain
from leibconf.extensions import (
    build_extension,
    cocycle_from_action,
    gauge_transform,
)
from leibconf.wells import (
    AutoPair,
    DerPair,
    NONZERO,
    VANISHES,
    abelian_extension,
    check_compat_pair,
    check_compatible_pair,
    compat_bracket,
    extend_derivation,
    induced_der_pair,
    induced_pair,
    left_derivations,
    lift_automorphism,
    phi_action,
    transform_cocycle,
    wells_auto,
    wells_der,
)
from corpus import (
    cur,
    nonsplit_cocycle,
    random_hom,
    rng,
    scalar_hom,
    vir_module,
)


def _semidirect_cocycle():
    return cocycle_from_action(vir_module(2, 0))


def test_identity_transform_is_identity():
    c = _semidirect_cocycle()
    pair = AutoPair(scalar_hom(c.H.module, 1), scalar_hom(c.R.module, 1))
    assert transform_cocycle(c, pair) == c


def test_scalar_gamma_fixes_semidirect():
    c = _semidirect_cocycle()
    pair = AutoPair(scalar_hom(c.H.module, 5), scalar_hom(c.R.module, 1))
    assert transform_cocycle(c, pair) == c
    ob = wells_auto(c, pair)
    assert ob.verdict == VANISHES


def test_transform_scales_chi():
    c = nonsplit_cocycle()
    pair = AutoPair(scalar_hom(c.H.module, 2), scalar_hom(c.R.module, 1))
    ct = transform_cocycle(c, pair)
    assert ct.chi[(0, 0)] == [Poly.const(2)]


def test_transform_rejects_non_automorphism():
    c = nonsplit_cocycle()
    bad = AutoPair(
        ModuleHom(c.H.module, c.H.module, [[D]]), scalar_hom(c.R.module, 1)
    )
    with pytest.raises(PreconditionError):
        transform_cocycle(c, bad)


def test_vanishing_obstruction_lift_and_induced_pair():
    c = nonsplit_cocycle()
    pair = AutoPair(scalar_hom(c.H.module, 4), scalar_hom(c.R.module, 2))
    assert transform_cocycle(c, pair) == c
    ob = wells_auto(c, pair)
    assert ob.verdict == VANISHES
    f = lift_automorphism(c, pair, ob.witness)
    ext = build_extension(c)
    assert is_automorphism(ext.E, f).ok
    back = induced_pair(ext, ext.canonical_section(), f)
    assert back.gamma.mat == pair.gamma.mat
    assert back.phi.mat == pair.phi.mat


def test_nonzero_obstruction():
    c = nonsplit_cocycle()
    pair = AutoPair(scalar_hom(c.H.module, 2), scalar_hom(c.R.module, 1))
    assert wells_auto(c, pair).verdict == NONZERO


def test_gauge_shifted_cocycle_still_vanishes():
    c = nonsplit_cocycle()
    alpha = ModuleHom(c.R.module, c.H.module, [[D]])
    c_g = gauge_transform(c, alpha)
    pair = AutoPair(scalar_hom(c.H.module, 4), scalar_hom(c.R.module, 2))
    ob = wells_auto(c_g, pair)
    assert ob.verdict == VANISHES
    f = lift_automorphism(c_g, pair, ob.witness)
    assert is_automorphism(build_extension(c_g).E, f).ok


def test_kappa_functorial_on_composites():
    from leibconf.conformal import mat_mul

    c = nonsplit_cocycle()
    ext = build_extension(c)
    p1 = AutoPair(scalar_hom(c.H.module, 4), scalar_hom(c.R.module, 2))
    f1 = lift_automorphism(c, p1, wells_auto(c, p1).witness)
    f2 = lift_automorphism(c, p1, wells_auto(c, p1).witness)
    comp = ModuleHom(ext.E.module, ext.E.module, mat_mul(f1.mat, f2.mat))
    pair = induced_pair(ext, ext.canonical_section(), comp)
    assert pair.gamma.mat == mat_mul(p1.gamma.mat, p1.gamma.mat)
    assert pair.phi.mat == mat_mul(p1.phi.mat, p1.phi.mat)


def test_kernel_of_kappa_is_a_shear():
    c = nonsplit_cocycle()
    ext = build_extension(c)
    beta = D  # f(a, h) = (a, h + beta(a)) is an automorphism of E
    f = ModuleHom(
        ext.E.module, ext.E.module,
        [[Poly.const(1), Poly.zero()], [beta, Poly.const(1)]],
    )
    assert is_automorphism(ext.E, f).ok
    pair = induced_pair(ext, ext.canonical_section(), f)
    assert pair.gamma.mat == [[Poly.const(1)]]
    assert pair.phi.mat == [[Poly.const(1)]]
    # beta is recoverable from the lower-left block
    assert f.mat[1][0] == beta


def test_compatible_pair_check():
    act = vir_module(2, 0)
    good = AutoPair(scalar_hom(act.space, 3), scalar_hom(act.algebra.module, 1))
    assert check_compatible_pair(act, good).ok
    bad = AutoPair(
        scalar_hom(act.space, 1),
        ModuleHom(act.algebra.module, act.algebra.module, [[Poly.const(2)]]),
    )
    assert not check_compatible_pair(act, bad).ok


def test_scalar_der_pair_compatible_and_extends():
    act = vir_module(2, 0)
    d = DerPair(scalar_hom(act.algebra.module, 0), scalar_hom(act.space, 3))
    assert check_compat_pair(act, d).ok
    chi0 = zero_cochain(2, act)
    ob = wells_der(act, chi0, d)
    assert ob.verdict == VANISHES
    assert all(p.is_zero() for row in ob.witness.mat for p in row)
    de = extend_derivation(act, chi0, d, ob.witness)
    ext = abelian_extension(act, chi0)
    pair = induced_der_pair(ext, ext.canonical_section(), de)
    assert pair.d_R.mat == d.d_R.mat and pair.d_H.mat == d.d_H.mat


def test_incompatible_der_pair_rejected():
    act = vir_module(2, 0)
    d = DerPair(scalar_hom(act.algebra.module, 1), scalar_hom(act.space, 0))
    assert not check_compat_pair(act, d).ok
    with pytest.raises(PreconditionError):
        wells_der(act, zero_cochain(2, act), d)


def test_twisted_extension_obstruction():
    # chi(L, L) = v is a genuine 2-cocycle at Delta = 2 but not a
    # coboundary reachable by the linear system with d_H = 3 id
    act = vir_module(2, 0)
    chi = Cochain(2, act, {(0, 0): [Poly.const(1)]})
    assert delta(chi).is_zero()
    assert check_jacobi(abelian_extension(act, chi).E).ok
    d = DerPair(scalar_hom(act.algebra.module, 0), scalar_hom(act.space, 3))
    assert wells_der(act, chi, d).verdict == NONZERO


def test_phi_representation_law():
    r = rng(23)
    aact = adjoint_action(cur())
    from corpus import random_cochain

    for _ in range(6):
        d1 = DerPair(random_hom(r, cur().module), random_hom(r, cur().module))
        d2 = DerPair(random_hom(r, cur().module), random_hom(r, cur().module))
        g = random_cochain(r, 2, aact)
        lhs = phi_action(aact, compat_bracket(d1, d2), g)
        rhs = phi_action(aact, d1, phi_action(aact, d2, g)) - phi_action(
            aact, d2, phi_action(aact, d1, g)
        )
        assert (lhs - rhs).is_zero()


def test_phi_preserves_cocycles():
    act = vir_module(2, 0)
    chi = Cochain(2, act, {(0, 0): [Poly.const(1)]})
    d = DerPair(scalar_hom(act.algebra.module, 0), scalar_hom(act.space, 3))
    assert delta(phi_action(act, d, chi)).is_zero()


def test_derivation_nullspace_round_trip():
    act = vir_module(2, 0)
    c = cocycle_from_action(act)
    ext = build_extension(c)
    ders = left_derivations(ext.E, 2, preserve={1})
    assert ders
    for de_hom in ders:
        pair = induced_der_pair(ext, ext.canonical_section(), de_hom)
        assert check_compat_pair(act, pair).ok
        ob = wells_der(act, zero_cochain(2, act), pair)
        assert ob.verdict == VANISHES
