from fractions import Fraction

from leibconf.poly import D, Poly, X1
from leibconf.conformal import (
    FreeModule,
    ModuleHom,
    adjoint_action,
    bracket_vec,
    check_derivation,
    check_homomorphism,
    check_jacobi,
    check_module,
    is_automorphism,
    mat_inverse_unit,
    mat_mul,
    semidirect,
)
from corpus import ab, bad_rank1, cur, random_hom, rng, vir, vir_module


def test_jacobi_corpus():
    for alg in (vir(), cur(), ab(), ab(("h", "k"))):
        assert check_jacobi(alg).ok


def test_jacobi_failure_residual():
    rep = check_jacobi(bad_rank1())
    assert not rep.ok
    assert rep.first_failure.residual  # nonzero printed residual


def test_sesquilinearity_through_bracket_vec():
    a = vir()
    # [(d L)_x L] = -x [L_x L]
    lhs = bracket_vec(a, [D], [Poly.const(1)], X1)
    rhs = [-X1 * p for p in bracket_vec(a, [Poly.const(1)], [Poly.const(1)], X1)]
    assert lhs == rhs
    # [L_x (d L)] = (d + x) [L_x L]
    lhs = bracket_vec(a, [Poly.const(1)], [D], X1)
    rhs = [(D + X1) * p for p in bracket_vec(a, [Poly.const(1)], [Poly.const(1)], X1)]
    assert lhs == rhs


def test_modules_and_semidirect():
    for Delta, alpha0 in [(1, 0), (2, 0), (Fraction(3, 2), 1)]:
        act = vir_module(Delta, alpha0)
        assert check_module(act).ok
        assert check_jacobi(semidirect(act)).ok


def test_adjoint_modules():
    assert check_module(adjoint_action(vir())).ok
    assert check_module(adjoint_action(cur())).ok


def test_bad_module_rejected():
    act = vir_module(1, 0)
    act.left[0][0][0] = act.left[0][0][0] + X1 * X1
    assert not check_module(act).ok


def test_derivation_check():
    a = cur()
    # d(e) = f is a left derivation (f is central and [e_x e] = f)
    dmat = [[Poly.zero(), Poly.zero()], [Poly.const(1), Poly.zero()]]
    d = ModuleHom(a.module, a.module, dmat)
    assert check_derivation(a, d, "left").ok
    bad = ModuleHom(a.module, a.module,
                    [[Poly.const(1), Poly.zero()], [Poly.zero(), Poly.zero()]])
    assert not check_derivation(a, bad, "left").ok


def test_homomorphism_and_automorphism():
    a = cur()
    # e -> 2e, f -> 4f respects e o e = f
    phi = ModuleHom(a.module, a.module,
                    [[Poly.const(2), Poly.zero()], [Poly.zero(), Poly.const(4)]])
    assert check_homomorphism(a, a, phi).ok
    assert is_automorphism(a, phi).ok
    # e -> 2e, f -> f does not
    psi = ModuleHom(a.module, a.module,
                    [[Poly.const(2), Poly.zero()], [Poly.zero(), Poly.const(1)]])
    assert not check_homomorphism(a, a, psi).ok


def test_non_unit_determinant_rejected():
    a = ab(("h",))
    phi = ModuleHom(a.module, a.module, [[D]])
    assert not is_automorphism(a, phi).ok


def test_matrix_inverse_unit():
    r = rng(3)
    m = FreeModule.of(("u", "w"))
    for _ in range(5):
        hom = random_hom(r, m)
        mat = [row[:] for row in hom.mat]
        # force unit determinant by making the matrix unitriangular
        mat[0][0] = Poly.const(1)
        mat[1][1] = Poly.const(1)
        mat[1][0] = Poly.zero()
        inv = mat_inverse_unit(mat)
        prod = mat_mul(mat, inv)
        assert prod[0][0] == Poly.const(1) and prod[1][1] == Poly.const(1)
        assert prod[0][1].is_zero() and prod[1][0].is_zero()
