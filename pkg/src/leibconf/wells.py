"""Automorphism inducibility and derivation extensibility obstructions.

Both problems reduce to the same shape: transform the extension datum by
the candidate pair, and decide whether the difference is trivialized by
a module homomorphism R -> H of bounded degree.  The automorphism side
reuses the cocycle-equivalence solver; the derivation side is always a
linear problem because the kernel is abelian.
"""

from __future__ import annotations

from dataclasses import dataclass

from .poly import D, PARTIAL, X1
from .report import Failure, PreconditionError, Report
from .conformal import (
    LeibnizConformalAlgebra,
    ModuleAction,
    ModuleHom,
    act_left,
    act_right,
    check_derivation,
    is_automorphism,
    mat_col,
    mat_inverse_unit,
    mat_mul,
    mat_vec,
    mat_zero,
    pair_eval,
    unit,
    vadd,
    vis_zero,
    vscale,
    vsub,
    vzero,
    _residual_str,
)
from .cohomology import Cochain, delta
from .extensions import (
    Extension,
    NonAbelianCocycle,
    _solve_affine,
    build_extension,
    check_equivalence,
    check_section,
    cocycle_from_action,
    default_deg_bound,
    solve_equivalence,
    EQUIVALENT,
    NOT_EQUIVALENT,
)

VANISHES = "vanishes"
NONZERO = "nonzero_up_to_bound"
UNDECIDED_OB = "undecided"


@dataclass
class AutoPair:
    gamma: ModuleHom  # H -> H
    phi: ModuleHom    # R -> R

    def validate(self, R: LeibnizConformalAlgebra, H: LeibnizConformalAlgebra) -> Report:
        rep = is_automorphism(H, self.gamma)
        if not rep.ok:
            rep.notes.append("gamma is not an automorphism of H")
            return rep
        rep = is_automorphism(R, self.phi)
        if not rep.ok:
            rep.notes.append("phi is not an automorphism of R")
            return rep
        return Report.passed()


@dataclass
class DerPair:
    d_R: ModuleHom  # R -> R
    d_H: ModuleHom  # H -> H


@dataclass
class Obstruction:
    kind: str       # "auto" or "der"
    verdict: str    # VANISHES | NONZERO | UNDECIDED_OB
    witness: ModuleHom | None
    deg_bound: int
    data: object    # the transformed cocycle (auto) or target cochain (der)


# ---------------------------------------------------------------------
# automorphism side


def transform_cocycle(c: NonAbelianCocycle, pair: AutoPair) -> NonAbelianCocycle:
    """Conjugate the cocycle by (gamma, phi): gamma . family . inverses."""
    rep = pair.validate(c.R, c.H)
    if not rep.ok:
        raise PreconditionError("invalid automorphism pair", rep)
    R, H = c.R, c.H
    nr, nh = R.rank, H.rank
    gm, gi = pair.gamma.mat, mat_inverse_unit(pair.gamma.mat)
    pi = mat_inverse_unit(pair.phi.mat)

    def conjugate(fams):
        out = []
        for i in range(nr):
            qi = mat_col(pi, i)  # coefficients of phi^-1(e_i), polys in d
            cols = []
            for m in range(nh):
                hvec = mat_col(gi, m)
                w = vzero(nh)
                for k in range(nr):
                    if qi[k].is_zero():
                        continue
                    coeff = qi[k].subs({PARTIAL: -X1})
                    term = _cmap_at(fams[k], X1, hvec)
                    w = vadd(w, vscale(coeff, term))
                cols.append(mat_vec(gm, w))
            out.append([[cols[m][t] for m in range(nh)] for t in range(nh)])
        return out

    l2 = conjugate(c.l)
    r2 = conjugate(c.r)
    chi2 = {}
    for i in range(nr):
        for j in range(nr):
            w = pair_eval(
                lambda a, b: c.chi[(a, b)], mat_col(pi, i), mat_col(pi, j), X1, nh
            )
            chi2[(i, j)] = mat_vec(gm, w)
    return NonAbelianCocycle(R, H, l2, r2, chi2)


def _cmap_at(mat, lam, vec):
    from .conformal import cmap_apply

    return cmap_apply(mat, lam, vec)


def wells_auto(c: NonAbelianCocycle, pair: AutoPair, deg_bound=None) -> Obstruction:
    """Inducibility obstruction: is c equivalent to its transform?"""
    ct = transform_cocycle(c, pair)
    if deg_bound is None:
        deg_bound = default_deg_bound(c, ct)
    res = solve_equivalence(c, ct, deg_bound)
    verdict = {EQUIVALENT: VANISHES, NOT_EQUIVALENT: NONZERO}.get(res.verdict, UNDECIDED_OB)
    return Obstruction("auto", verdict, res.beta, deg_bound, ct)


def lift_automorphism(c: NonAbelianCocycle, pair: AutoPair, beta: ModuleHom) -> ModuleHom:
    """The extension automorphism (a, h) -> (phi a, gamma h - beta(phi a)).

    Precondition: beta witnesses the equivalence of c with its
    transform.
    """
    ct = transform_cocycle(c, pair)
    rep = check_equivalence(c, ct, beta)
    if not rep.ok:
        raise PreconditionError("beta does not witness the equivalence", rep)
    nr, nh = c.R.rank, c.H.rank
    ext_module = build_extension(c).E.module
    bp = mat_mul(beta.mat, pair.phi.mat)
    mat = []
    for i in range(nr):
        mat.append(list(pair.phi.mat[i]) + vzero(nh))
    for t in range(nh):
        mat.append([-bp[t][j] for j in range(nr)] + list(pair.gamma.mat[t]))
    return ModuleHom(ext_module, ext_module, mat)


def induced_pair(ext: Extension, s: ModuleHom, f: ModuleHom) -> AutoPair:
    """kappa: restrict f to the H block and push it down through p and s."""
    rep = is_automorphism(ext.E, f)
    if not rep.ok:
        raise PreconditionError("f is not an automorphism of E", rep)
    nr, nh = ext.R.rank, ext.H.rank
    fa = mat_mul(f.mat, ext.alpha.mat)
    if any(not fa[i][j].is_zero() for i in range(nr) for j in range(nh)):
        raise PreconditionError("f does not preserve the H part")
    rep = check_section(ext, s)
    if not rep.ok:
        raise PreconditionError("not a section", rep)
    gamma = ModuleHom(ext.H.module, ext.H.module, [fa[nr + t] for t in range(nh)])
    phi_mat = mat_mul(ext.p.mat, mat_mul(f.mat, s.mat))
    phi = ModuleHom(ext.R.module, ext.R.module, phi_mat)
    return AutoPair(gamma, phi)


def check_compatible_pair(act: ModuleAction, pair: AutoPair) -> Report:
    """Abelian specialization: gamma intertwines the two actions along phi.

    The right action is compared at the direct parameter of the stored
    family, matching how the family is defined from a section.
    """
    R = act.algebra
    nr, nh = R.rank, act.space.rank
    rep = pair.validate(R, _abelian_of(act))
    if not rep.ok:
        return rep
    mnames = act.space.basis_names
    failures = []
    for i in range(nr):
        ei = unit(nr, i)
        pcol = mat_col(pair.phi.mat, i)
        for m in range(nh):
            vm = unit(nh, m)
            gcol = mat_col(pair.gamma.mat, m)
            res = vsub(
                mat_vec(pair.gamma.mat, act_left(act, ei, vm, X1)),
                act_left(act, pcol, gcol, X1),
            )
            if not vis_zero(res):
                failures.append(
                    Failure(
                        "left compatibility at (%d, %d)" % (i, m),
                        _residual_str(mnames, res),
                    )
                )
            res = vsub(
                mat_vec(pair.gamma.mat, act_right(act, vm, ei, X1)),
                act_right(act, gcol, pcol, X1),
            )
            if not vis_zero(res):
                failures.append(
                    Failure(
                        "right compatibility at (%d, %d)" % (i, m),
                        _residual_str(mnames, res),
                    )
                )
    return Report.failed(failures) if failures else Report.passed()


def _abelian_of(act: ModuleAction) -> LeibnizConformalAlgebra:
    from .conformal import abelian_algebra

    return abelian_algebra(act.space.basis_names)


# ---------------------------------------------------------------------
# derivation side


def check_compat_pair(act: ModuleAction, d: DerPair) -> Report:
    """Membership of (d_R, d_H) in the compatible-derivation Lie algebra.

    Checks that d_R is a left derivation of the acting algebra and the
    two action-intertwining identities.
    """
    R = act.algebra
    rep = check_derivation(R, d.d_R, "left")
    if not rep.ok:
        rep.notes.append("d_R is not a left derivation")
        return rep
    nr, nh = R.rank, act.space.rank
    mnames = act.space.basis_names
    failures = []
    for i in range(nr):
        ei = unit(nr, i)
        dcol = mat_col(d.d_R.mat, i)
        for m in range(nh):
            vm = unit(nh, m)
            dhm = mat_col(d.d_H.mat, m)
            res = vsub(
                mat_vec(d.d_H.mat, act_left(act, ei, vm, X1)),
                vadd(act_left(act, ei, dhm, X1), act_left(act, dcol, vm, X1)),
            )
            if not vis_zero(res):
                failures.append(
                    Failure(
                        "left action rule at (%d, %d)" % (i, m),
                        _residual_str(mnames, res),
                    )
                )
            res = vsub(
                mat_vec(d.d_H.mat, act_right(act, vm, ei, X1)),
                vadd(act_right(act, vm, dcol, X1), act_right(act, dhm, ei, X1)),
            )
            if not vis_zero(res):
                failures.append(
                    Failure(
                        "right action rule at (%d, %d)" % (i, m),
                        _residual_str(mnames, res),
                    )
                )
    return Report.failed(failures) if failures else Report.passed()


def phi_action(act: ModuleAction, d: DerPair, f: Cochain) -> Cochain:
    """Phi(d)(f)(a, b) = d_H(f(a, b)) - f(d_R a, b) - f(a, d_R b)."""
    if f.arity != 2:
        raise ValueError("phi_action needs a 2-cochain")
    nr = act.algebra.rank
    values = {}
    for i in range(nr):
        ei = unit(nr, i)
        di = mat_col(d.d_R.mat, i)
        for j in range(nr):
            ej = unit(nr, j)
            dj = mat_col(d.d_R.mat, j)
            v = mat_vec(d.d_H.mat, f.values[(i, j)])
            from .cohomology import eval_cochain

            v = vsub(v, eval_cochain(f, [di, ej], [X1]))
            v = vsub(v, eval_cochain(f, [ei, dj], [X1]))
            values[(i, j)] = v
    return Cochain(2, act, values)


def compat_bracket(d: DerPair, d2: DerPair) -> DerPair:
    """Commutator pair ([d_R, d'_R], [d_H, d'_H])."""
    dr = [
        [a - b for a, b in zip(r1, r2)]
        for r1, r2 in zip(mat_mul(d.d_R.mat, d2.d_R.mat), mat_mul(d2.d_R.mat, d.d_R.mat))
    ]
    dh = [
        [a - b for a, b in zip(r1, r2)]
        for r1, r2 in zip(mat_mul(d.d_H.mat, d2.d_H.mat), mat_mul(d2.d_H.mat, d.d_H.mat))
    ]
    return DerPair(
        ModuleHom(d.d_R.source, d.d_R.target, dr),
        ModuleHom(d.d_H.source, d.d_H.target, dh),
    )


def _one_cochain_of(act: ModuleAction, mat) -> Cochain:
    nr = act.algebra.rank
    return Cochain(1, act, {(i,): mat_col(mat, i) for i in range(nr)})


def wells_der(act: ModuleAction, chi: Cochain, d: DerPair, deg_bound=None) -> Obstruction:
    """Extensibility obstruction: solve delta(f) = Phi(d)(chi) exactly."""
    rep = check_compat_pair(act, d)
    if not rep.ok:
        raise PreconditionError("pair is not compatible with the action", rep)
    if not delta(chi).is_zero():
        raise PreconditionError("chi is not a 2-cocycle of the action")
    target = phi_action(act, d, chi)
    if deg_bound is None:
        best = 0
        for mats in (d.d_R.mat, d.d_H.mat):
            for row in mats:
                for p in row:
                    best = max(best, p.degree(PARTIAL))
        for v in chi.values.values():
            for p in v:
                best = max(best, p.degree(PARTIAL))
        deg_bound = best + 2
    nr, nh = act.algebra.rank, act.space.rank
    flat_target = []
    for i in range(nr):
        for j in range(nr):
            flat_target.extend(target.values[(i, j)])

    def residual(mat):
        dcf = delta(_one_cochain_of(act, mat))
        out = []
        for i in range(nr):
            for j in range(nr):
                out.extend(dcf.values[(i, j)])
        return [a - b for a, b in zip(out, flat_target)]

    fmat = _solve_affine(residual, nh, nr, deg_bound)
    if fmat is None:
        return Obstruction("der", NONZERO, None, deg_bound, target)
    f = ModuleHom(act.algebra.module, act.space, fmat)
    return Obstruction("der", VANISHES, f, deg_bound, target)


def abelian_extension(act: ModuleAction, chi: Cochain) -> Extension:
    """Build the extension of the acting algebra by its module twisted by chi."""
    chi_map = {
        (i, j): list(chi.values[(i, j)])
        for i in range(act.algebra.rank)
        for j in range(act.algebra.rank)
    }
    return build_extension(cocycle_from_action(act, chi_map))


def extend_derivation(act: ModuleAction, chi: Cochain, d: DerPair, f: ModuleHom) -> ModuleHom:
    """d_E(a, h) = (d_R a, f(a) + d_H h) on the built abelian extension.

    Verifies the derivation identity and both intertwining identities;
    raises if any fails.
    """
    ext = abelian_extension(act, chi)
    nr, nh = act.algebra.rank, act.space.rank
    mat = []
    for i in range(nr):
        mat.append(list(d.d_R.mat[i]) + vzero(nh))
    for t in range(nh):
        mat.append(list(f.mat[t]) + list(d.d_H.mat[t]))
    de = ModuleHom(ext.E.module, ext.E.module, mat)
    rep = check_derivation(ext.E, de, "left")
    if not rep.ok:
        raise PreconditionError("built map is not a left derivation", rep)
    if mat_mul(de.mat, ext.alpha.mat) != mat_mul(ext.alpha.mat, d.d_H.mat):
        raise PreconditionError("d_E does not intertwine the injection")
    if mat_mul(d.d_R.mat, ext.p.mat) != mat_mul(ext.p.mat, de.mat):
        raise PreconditionError("d_E does not intertwine the projection")
    return de


def induced_der_pair(ext: Extension, s: ModuleHom, de: ModuleHom) -> DerPair:
    """kappa for derivations: (p d_E s, d_E restricted to the H block)."""
    nr, nh = ext.R.rank, ext.H.rank
    da = mat_mul(de.mat, ext.alpha.mat)
    if any(not da[i][j].is_zero() for i in range(nr) for j in range(nh)):
        raise PreconditionError("d_E does not preserve the H part")
    dh = ModuleHom(ext.H.module, ext.H.module, [da[nr + t] for t in range(nh)])
    dr_mat = mat_mul(ext.p.mat, mat_mul(de.mat, s.mat))
    dr = ModuleHom(ext.R.module, ext.R.module, dr_mat)
    return DerPair(dr, dh)


def left_derivations(a: LeibnizConformalAlgebra, deg_bound: int, preserve=None):
    """Basis of left derivations with entries of bounded degree in d.

    preserve: optional set of basis indices spanning a submodule that
    the derivations must map into itself.
    """
    from .linalg import nullspace
    from fractions import Fraction

    n = a.rank
    idx = []
    for t in range(n):
        for i in range(n):
            if preserve is not None and i in preserve and t not in preserve:
                continue
            for k in range(deg_bound + 1):
                idx.append((t, i, k))

    def residual(mat):
        hom = ModuleHom(a.module, a.module, mat)
        out = []
        for i in range(n):
            ei = unit(n, i)
            di = mat_vec(mat, ei)
            for j in range(n):
                ej = unit(n, j)
                dj = mat_vec(mat, ej)
                from .conformal import bracket_vec

                res = vsub(
                    mat_vec(mat, bracket_vec(a, ei, ej, X1)),
                    vadd(bracket_vec(a, ei, dj, X1), bracket_vec(a, di, ej, X1)),
                )
                out.extend(res)
        return out

    columns = []
    for (t, i, k) in idx:
        m = mat_zero(n, n)
        m[t][i] = D ** k
        columns.append(residual(m))
    monomials = set()
    for col in columns:
        for p in col:
            monomials.update(p.terms())
    monomials = sorted(monomials)
    rows = []
    npos = len(columns[0]) if columns else 0
    for pos in range(npos):
        for mono in monomials:
            row = [Fraction(columns[u][pos].terms().get(mono, 0)) for u in range(len(idx))]
            if any(row):
                rows.append(row)
    if not rows:
        kernel = [[Fraction(1) if u == v else Fraction(0) for u in range(len(idx))]
                  for v in range(len(idx))]
    else:
        kernel = nullspace(rows)
    basis = []
    for vec in kernel:
        m = mat_zero(n, n)
        for val, (t, i, k) in zip(vec, idx):
            if val:
                m[t][i] = m[t][i] + val * D ** k
        basis.append(ModuleHom(a.module, a.module, m))
    return basis
