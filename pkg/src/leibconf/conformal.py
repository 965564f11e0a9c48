"""Leibniz conformal algebras over free C[d]-modules of finite rank.

An algebra is stored by its structure constants: vectors of polynomials
P_ij^k(d, x) with [e_i x e_j] = sum_k P_ij^k(d, x) e_k, where x is the
bracket parameter.  All checkers quantify over basis tuples with formal
parameters; sesquilinearity determines everything else, so each axiom
becomes finitely many exact polynomial identities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import D, ONE, PARTIAL, Poly, X1, X2, poly_to_str
from .report import Failure, PreconditionError, Report

# ---------------------------------------------------------------------
# vectors and matrices of polynomials


def vzero(n: int) -> list[Poly]:
    return [Poly.zero() for _ in range(n)]


def vadd(u, v):
    return [a + b for a, b in zip(u, v)]


def vsub(u, v):
    return [a - b for a, b in zip(u, v)]


def vneg(u):
    return [-a for a in u]


def vscale(c, u):
    return [c * a for a in u]


def vsubs(u, mapping):
    return [a.subs(mapping) for a in u]


def vis_zero(u) -> bool:
    return all(a.is_zero() for a in u)


def unit(n: int, i: int) -> list[Poly]:
    v = vzero(n)
    v[i] = ONE
    return v


def mat_zero(rows: int, cols: int):
    return [vzero(cols) for _ in range(rows)]


def mat_identity(n: int):
    return [[ONE if i == j else Poly.zero() for j in range(n)] for i in range(n)]


def mat_add(a, b):
    return [vadd(r, s) for r, s in zip(a, b)]


def mat_sub(a, b):
    return [vsub(r, s) for r, s in zip(a, b)]


def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = mat_zero(rows, cols)
    for i in range(rows):
        for k in range(inner):
            aik = a[i][k]
            if aik.is_zero():
                continue
            for j in range(cols):
                out[i][j] = out[i][j] + aik * b[k][j]
    return out


def mat_vec(a, v):
    return [
        sum((a[i][j] * v[j] for j in range(len(v))), Poly.zero())
        for i in range(len(a))
    ]


def mat_col(a, j):
    return [row[j] for row in a]


def mat_subs(a, mapping):
    return [vsubs(row, mapping) for row in a]


def mat_eq(a, b) -> bool:
    return all(r == s for r, s in zip(a, b)) and len(a) == len(b)


def mat_det(a) -> Poly:
    n = len(a)
    if n == 0:
        return ONE
    if n == 1:
        return a[0][0]
    det = Poly.zero()
    sign = 1
    for j in range(n):
        if not a[0][j].is_zero():
            minor = [[row[c] for c in range(n) if c != j] for row in a[1:]]
            det = det + sign * a[0][j] * mat_det(minor)
        sign = -sign
    return det


def mat_inverse_unit(a):
    """Inverse of a matrix over Q[d] whose determinant is a nonzero constant.

    Raises PreconditionError otherwise (the unit group of Q[d] is Q*, so
    anything else is not invertible over the polynomial ring).
    """
    det = mat_det(a)
    if not det.is_constant() or det.is_zero():
        raise PreconditionError(
            "matrix determinant %s is not a nonzero constant" % poly_to_str(det)
        )
    n = len(a)
    inv_det = Fraction(1) / det.constant_value()
    out = mat_zero(n, n)
    for i in range(n):
        for j in range(n):
            minor = [
                [a[r][c] for c in range(n) if c != i]
                for r in range(n)
                if r != j
            ]
            cof = mat_det(minor)
            if (i + j) % 2:
                cof = -cof
            out[i][j] = inv_det * cof
    return out


def mat_rank_generic(a) -> int:
    """Rank over the fraction field Q(d), via maximal nonzero minors."""
    from itertools import combinations

    rows, cols = len(a), len(a[0]) if a else 0
    for r in range(min(rows, cols), 0, -1):
        for rs in combinations(range(rows), r):
            for cs in combinations(range(cols), r):
                sub = [[a[i][j] for j in cs] for i in rs]
                if not mat_det(sub).is_zero():
                    return r
    return 0


# ---------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class FreeModule:
    rank: int
    basis_names: tuple

    def __post_init__(self):
        if self.rank != len(self.basis_names):
            raise ValueError("rank does not match the number of basis names")
        if len(set(self.basis_names)) != self.rank:
            raise ValueError("duplicate basis names")

    @staticmethod
    def of(names) -> "FreeModule":
        names = tuple(names)
        return FreeModule(len(names), names)


@dataclass
class Element:
    module: FreeModule
    coeffs: list  # Poly in d only

    def __post_init__(self):
        if len(self.coeffs) != self.module.rank:
            raise ValueError("coefficient vector has wrong length")


@dataclass
class LeibnizConformalAlgebra:
    module: FreeModule
    sc: list  # sc[i][j] = vector over basis of Poly in {d, x}

    @property
    def rank(self) -> int:
        return self.module.rank

    def basis_element(self, i: int) -> Element:
        return Element(self.module, unit(self.rank, i))

    def name_of(self, i: int) -> str:
        return self.module.basis_names[i]


@dataclass
class ConformalLinearMap:
    """f_x(e_s) = sum_t mat[t][s](d, x) e_t with f_x(dv) = (d+x) f_x(v)."""

    source: FreeModule
    target: FreeModule
    mat: list


@dataclass
class ModuleHom:
    """C[d]-module homomorphism; matrix entries use d only."""

    source: FreeModule
    target: FreeModule
    mat: list

    def __post_init__(self):
        for row in self.mat:
            for p in row:
                if p.max_param():
                    raise ValueError("module homomorphism entries must use d only")

    def apply(self, coeffs):
        return mat_vec(self.mat, coeffs)


@dataclass
class ModuleAction:
    """Left/right lambda-actions of an algebra on a free module.

    left[i][m]  : coefficients of  a_i |>_x v_m
    right[m][i] : coefficients of  v_m <|_x a_i   (direct parameter x)
    """

    algebra: LeibnizConformalAlgebra
    space: FreeModule
    left: list
    right: list


# ---------------------------------------------------------------------
# evaluation primitives


def _first_slot(p: Poly, lam: Poly) -> Poly:
    # (d a)_lam b = -lam [a_lam b]
    return p.subs({PARTIAL: -lam})


def _second_slot(p: Poly, lam: Poly) -> Poly:
    # a_lam (d b) = (d + lam)[a_lam b]
    return p.subs({PARTIAL: D + lam})


def pair_eval(table, u, v, lam, out_rank) -> list:
    """Sesquilinear extension of a stored bilinear family.

    table(i, j) returns the value vector on basis pair (i, j), a vector
    of polynomials in d and x; the family is evaluated at parameter lam
    on arguments with coefficient vectors u, v.
    """
    out = vzero(out_rank)
    lam_map = {1: lam}
    for i, ui in enumerate(u):
        if ui.is_zero():
            continue
        cu = _first_slot(ui, lam)
        for j, vj in enumerate(v):
            if vj.is_zero():
                continue
            c = cu * _second_slot(vj, lam)
            if c.is_zero():
                continue
            cell = table(i, j)
            for k, p in enumerate(cell):
                if not p.is_zero():
                    out[k] = out[k] + c * p.subs(lam_map)
    return out


def bracket_vec(a: LeibnizConformalAlgebra, u, v, lam=X1) -> list:
    """Coefficients of [u_lam v] for coefficient vectors u, v."""
    return pair_eval(lambda i, j: a.sc[i][j], u, v, lam, a.rank)


def bracket(a: LeibnizConformalAlgebra, x: Element, y: Element) -> list:
    """[x_lam y] with lam = x1; returns coefficients over the basis."""
    if x.module is not a.module and x.module != a.module:
        raise ValueError("element does not belong to the algebra's module")
    if y.module is not a.module and y.module != a.module:
        raise ValueError("element does not belong to the algebra's module")
    return bracket_vec(a, x.coeffs, y.coeffs, X1)


def act_left(act: ModuleAction, u, w, lam) -> list:
    """u |>_lam w for u over the algebra basis, w over the space basis."""
    return pair_eval(lambda i, m: act.left[i][m], u, w, lam, act.space.rank)


def act_right(act: ModuleAction, w, u, lam) -> list:
    """w <|_lam u."""
    return pair_eval(lambda m, i: act.right[m][i], w, u, lam, act.space.rank)


def cmap_apply(mat, lam, vec) -> list:
    """Apply a conformal linear map (stored with parameter x) at lam."""
    out = vzero(len(mat))
    lam_map = {1: lam}
    for s, c in enumerate(vec):
        if c.is_zero():
            continue
        c = _second_slot(c, lam)
        for t in range(len(mat)):
            p = mat[t][s]
            if not p.is_zero():
                out[t] = out[t] + c * p.subs(lam_map)
    return out


def clmap_of_element(a: LeibnizConformalAlgebra, coeffs, side: str) -> list:
    """Matrix of ad^L (side="left") or ad^R (side="right") of an element."""
    n = a.rank
    cols = []
    for j in range(n):
        if side == "left":
            cols.append(bracket_vec(a, coeffs, unit(n, j), X1))
        else:
            cols.append(bracket_vec(a, unit(n, j), coeffs, -D - X1))
    return [[cols[j][t] for j in range(n)] for t in range(n)]


def ad_left(a: LeibnizConformalAlgebra, x: Element) -> ConformalLinearMap:
    """(ad^L_x)_lam(b) = [x_lam b]."""
    return ConformalLinearMap(a.module, a.module, clmap_of_element(a, x.coeffs, "left"))


def ad_right(a: LeibnizConformalAlgebra, x: Element) -> ConformalLinearMap:
    """(ad^R_x)_lam(b) = [b_{-d-lam} x]."""
    return ConformalLinearMap(a.module, a.module, clmap_of_element(a, x.coeffs, "right"))


# ---------------------------------------------------------------------
# constructions


def current_algebra(leibniz_sc, basis_names=None) -> LeibnizConformalAlgebra:
    """Conformal algebra with constant structure coefficients.

    leibniz_sc[i][j][k] is the rational coefficient of e_k in e_i o e_j.
    The Jacobi identity is not assumed; run check_jacobi on the result.
    """
    n = len(leibniz_sc)
    if basis_names is None:
        basis_names = tuple("e%d" % (i + 1) for i in range(n))
    module = FreeModule.of(basis_names)
    sc = [
        [[Poly.const(Fraction(leibniz_sc[i][j][k])) for k in range(n)] for j in range(n)]
        for i in range(n)
    ]
    return LeibnizConformalAlgebra(module, sc)


def abelian_algebra(basis_names) -> LeibnizConformalAlgebra:
    module = FreeModule.of(basis_names)
    n = module.rank
    sc = [[vzero(n) for _ in range(n)] for _ in range(n)]
    return LeibnizConformalAlgebra(module, sc)


def virasoro(name: str = "L") -> LeibnizConformalAlgebra:
    """Rank-1 algebra with [L_x L] = (d + 2x) L."""
    module = FreeModule.of((name,))
    return LeibnizConformalAlgebra(module, [[[D + 2 * X1]]])


def adjoint_action(a: LeibnizConformalAlgebra) -> ModuleAction:
    """The algebra acting on itself by its own bracket on both sides."""
    n = a.rank
    left = [[a.sc[i][m] for m in range(n)] for i in range(n)]
    right = [[a.sc[m][i] for i in range(n)] for m in range(n)]
    return ModuleAction(a, a.module, left, right)


def trivial_action(a: LeibnizConformalAlgebra, space: FreeModule) -> ModuleAction:
    n, m = a.rank, space.rank
    left = [[vzero(m) for _ in range(m)] for _ in range(n)]
    right = [[vzero(m) for _ in range(n)] for _ in range(m)]
    return ModuleAction(a, space, left, right)


def semidirect(act: ModuleAction) -> LeibnizConformalAlgebra:
    """Semidirect product algebra on (algebra basis, space basis).

    [(a+u)_x (b+v)] = [a_x b] + a |>_x v + u <|_x b; space-space products
    are zero.  Preconditions (Jacobi for the algebra, the module axioms)
    are enforced.
    """
    rep = check_jacobi(act.algebra)
    if not rep.ok:
        raise PreconditionError(
            "acting algebra fails the Jacobi identity at %s" % rep.first_failure.label,
            rep,
        )
    rep = check_module(act)
    if not rep.ok:
        raise PreconditionError(
            "module axioms fail: %s" % rep.first_failure.label, rep
        )
    nr, nm = act.algebra.rank, act.space.rank
    names = list(act.algebra.module.basis_names)
    for nm_ in act.space.basis_names:
        while nm_ in names:
            nm_ = nm_ + "'"
        names.append(nm_)
    module = FreeModule.of(tuple(names))
    total = nr + nm
    sc = [[vzero(total) for _ in range(total)] for _ in range(total)]
    for i in range(nr):
        for j in range(nr):
            sc[i][j] = list(act.algebra.sc[i][j]) + vzero(nm)
        for m in range(nm):
            sc[i][nr + m] = vzero(nr) + list(act.left[i][m])
    for m in range(nm):
        for j in range(nr):
            sc[nr + m][j] = vzero(nr) + list(act.right[m][j])
    return LeibnizConformalAlgebra(module, sc)


# ---------------------------------------------------------------------
# checkers


def _label(names, tup) -> str:
    return "(" + ", ".join(names[i] for i in tup) + ")"


def _residual_str(names, res) -> str:
    parts = [
        "(%s)*%s" % (poly_to_str(p), names[k])
        for k, p in enumerate(res)
        if not p.is_zero()
    ]
    return " + ".join(parts) if parts else "0"


def jacobi_residual(a: LeibnizConformalAlgebra, i: int, j: int, k: int) -> list:
    """J(e_i, e_j, e_k) = [e_i x1 [e_j x2 e_k]] - [[e_i x1 e_j] x1+x2 e_k]
    - [e_j x2 [e_i x1 e_k]]."""
    n = a.rank
    ei, ej, ek = unit(n, i), unit(n, j), unit(n, k)
    t1 = bracket_vec(a, ei, bracket_vec(a, ej, ek, X2), X1)
    t2 = bracket_vec(a, bracket_vec(a, ei, ej, X1), ek, X1 + X2)
    t3 = bracket_vec(a, ej, bracket_vec(a, ei, ek, X1), X2)
    return vsub(vsub(t1, t2), t3)


def check_jacobi(a: LeibnizConformalAlgebra) -> Report:
    """Jacobi identity on all basis triples (sufficient by sesquilinearity)."""
    names = a.module.basis_names
    failures = []
    n = a.rank
    for i in range(n):
        for j in range(n):
            for k in range(n):
                res = jacobi_residual(a, i, j, k)
                if not vis_zero(res):
                    failures.append(
                        Failure(_label(names, (i, j, k)), _residual_str(names, res))
                    )
    return Report.failed(failures) if failures else Report.passed()


_MODULE_AXIOMS = (
    "a_x(b_y v) = [a_x b]_(x+y) v + b_y(a_x v)",
    "a_x(v_y b) = (a_x v)_(x+y) b + v_y [a_x b]",
    "v_x[a_y b] = (v_x a)_(x+y) b + a_y(v_x b)",
)


def check_module(act: ModuleAction) -> Report:
    """The conformal-module axioms on basis tuples.

    Both sesquilinearity rows hold automatically under the evaluation
    rule, so the three bracket-compatibility identities remain.
    """
    a = act.algebra
    nr, nm = a.rank, act.space.rank
    anames, mnames = a.module.basis_names, act.space.basis_names
    failures = []
    for i in range(nr):
        ei = unit(nr, i)
        for j in range(nr):
            ej = unit(nr, j)
            bij = bracket_vec(a, ei, ej, X1)
            for m in range(nm):
                vm = unit(nm, m)
                # axiom 1: a_x (b_y v)
                r1 = vsub(
                    act_left(act, ei, act_left(act, ej, vm, X2), X1),
                    vadd(
                        act_left(act, bij, vm, X1 + X2),
                        act_left(act, ej, act_left(act, ei, vm, X1), X2),
                    ),
                )
                # axiom 2: a_x (v_y b)
                r2 = vsub(
                    act_left(act, ei, act_right(act, vm, ej, X2), X1),
                    vadd(
                        act_right(act, act_left(act, ei, vm, X1), ej, X1 + X2),
                        act_right(act, vm, bij, X2),
                    ),
                )
                # axiom 3: v_x [a_y b]
                r3 = vsub(
                    act_right(act, vm, bracket_vec(a, ei, ej, X2), X1),
                    vadd(
                        act_right(act, act_right(act, vm, ei, X1), ej, X1 + X2),
                        act_left(act, ei, act_right(act, vm, ej, X1), X2),
                    ),
                )
                for axno, res in ((0, r1), (1, r2), (2, r3)):
                    if not vis_zero(res):
                        lbl = "%s on (%s, %s, %s)" % (
                            _MODULE_AXIOMS[axno],
                            anames[i],
                            anames[j],
                            mnames[m],
                        )
                        failures.append(Failure(lbl, _residual_str(mnames, res)))
    return Report.failed(failures) if failures else Report.passed()


DERIVATION_KINDS = ("left", "right", "left_conformal", "right_conformal")


def check_derivation(a: LeibnizConformalAlgebra, d, kind: str) -> Report:
    """Derivation identity of the given kind on all basis pairs.

    Plain kinds take a ModuleHom, conformal kinds a ConformalLinearMap
    whose parameter is renamed to x2 during the check (x1 stays the
    bracket parameter).
    """
    if kind not in DERIVATION_KINDS:
        raise ValueError("unknown derivation kind %r" % kind)
    conformal = kind.endswith("_conformal")
    if conformal and not isinstance(d, ConformalLinearMap):
        raise ValueError("kind %s needs a ConformalLinearMap" % kind)
    if not conformal and not isinstance(d, ModuleHom):
        raise ValueError("kind %s needs a ModuleHom" % kind)
    if d.source != a.module or d.target != a.module:
        raise ValueError("derivation must map the algebra's module to itself")
    n = a.rank
    names = a.module.basis_names
    dmat = mat_subs(d.mat, {1: X2}) if conformal else d.mat

    def apply_d(vec):
        if conformal:
            # parameter already renamed to x2; evaluation at x2
            out = vzero(n)
            for s, c in enumerate(vec):
                if c.is_zero():
                    continue
                c = c.subs({PARTIAL: D + X2})
                for t in range(n):
                    if not dmat[t][s].is_zero():
                        out[t] = out[t] + c * dmat[t][s]
            return out
        return mat_vec(dmat, vec)

    failures = []
    for i in range(n):
        ei = unit(n, i)
        di = apply_d(ei)
        for j in range(n):
            ej = unit(n, j)
            dj = apply_d(ej)
            if kind == "left":
                res = vsub(
                    apply_d(bracket_vec(a, ei, ej, X1)),
                    vadd(bracket_vec(a, ei, dj, X1), bracket_vec(a, di, ej, X1)),
                )
            elif kind == "right":
                res = vsub(
                    apply_d(bracket_vec(a, ei, ej, X1)),
                    vsub(bracket_vec(a, ei, dj, X1), bracket_vec(a, ej, di, -D - X1)),
                )
            elif kind == "left_conformal":
                # d_x2([a _x1 b]) = [a _x1 d_x2(b)] + [d_x2(a) _x1+x2 b]
                res = vsub(
                    apply_d(bracket_vec(a, ei, ej, X1)),
                    vadd(bracket_vec(a, ei, dj, X1), bracket_vec(a, di, ej, X1 + X2)),
                )
            else:
                # d_x2([a _x1 b]) = [a _x1 d_x2(b)] - [b _-d-x1 d_x2(a)]
                res = vsub(
                    apply_d(bracket_vec(a, ei, ej, X1)),
                    vsub(bracket_vec(a, ei, dj, X1), bracket_vec(a, ej, di, -D - X1)),
                )
            if not vis_zero(res):
                failures.append(
                    Failure(
                        "%s derivation on %s" % (kind, _label(names, (i, j))),
                        _residual_str(names, res),
                    )
                )
    return Report.failed(failures) if failures else Report.passed()


def check_homomorphism(
    a: LeibnizConformalAlgebra, b: LeibnizConformalAlgebra, phi: ModuleHom
) -> Report:
    """phi([e_i x e_j]) = [phi(e_i) x phi(e_j)] on all basis pairs."""
    if phi.source != a.module or phi.target != b.module:
        raise ValueError("homomorphism shape mismatch")
    n = a.rank
    names = a.module.basis_names
    failures = []
    for i in range(n):
        for j in range(n):
            res = vsub(
                phi.apply(bracket_vec(a, unit(n, i), unit(n, j), X1)),
                bracket_vec(b, mat_col(phi.mat, i), mat_col(phi.mat, j), X1),
            )
            if not vis_zero(res):
                failures.append(
                    Failure(_label(names, (i, j)), _residual_str(b.module.basis_names, res))
                )
    return Report.failed(failures) if failures else Report.passed()


def is_automorphism(a: LeibnizConformalAlgebra, phi: ModuleHom) -> Report:
    """Endo-homomorphism with unit determinant (a nonzero constant)."""
    rep = check_homomorphism(a, a, phi)
    if not rep.ok:
        rep.notes.append("not a homomorphism")
        return rep
    det = mat_det(phi.mat)
    if det.is_zero() or not det.is_constant():
        return Report.failed(
            [Failure("determinant", poly_to_str(det))],
            ["determinant must be a nonzero constant (a unit of Q[d])"],
        )
    return Report.passed()


def direct_sum(
    a: LeibnizConformalAlgebra, b: LeibnizConformalAlgebra, rename=None
) -> LeibnizConformalAlgebra:
    """Direct-sum algebra with the componentwise bracket."""
    names = tuple(a.module.basis_names) + tuple(b.module.basis_names)
    if rename:
        names = tuple(rename(nm) for nm in names)
    module = FreeModule.of(names)
    na, nb = a.rank, b.rank
    total = na + nb
    sc = [[vzero(total) for _ in range(total)] for _ in range(total)]
    for i in range(na):
        for j in range(na):
            sc[i][j] = list(a.sc[i][j]) + vzero(nb)
    for i in range(nb):
        for j in range(nb):
            sc[na + i][na + j] = vzero(na) + list(b.sc[i][j])
    return LeibnizConformalAlgebra(module, sc)
