"""Cochain complex of a Leibniz conformal algebra.

An n-cochain is stored by its values on basis n-tuples: vectors of
polynomials in d and the parameters x1..x_{n-1}.  Conformal antilinearity
is built into the evaluation rule, so arbitrary arguments are handled by
substitution (d -> -x_k in slot k < n, d -> d + x1 + ... + x_{n-1} in the
last slot) and stored parameters are renamed per call site.  The explicit
renaming is the error-prone part of the coboundary formula, so it is kept
in one place (eval_cochain) and unit-tested on its own.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .poly import D, PARTIAL, Poly, param
from .report import Failure, Report
from .conformal import (
    LeibnizConformalAlgebra,
    ModuleAction,
    act_left,
    act_right,
    bracket_vec,
    unit,
    vadd,
    vis_zero,
    vscale,
    vsub,
    vzero,
    _residual_str,
)

MAX_ARITY = 4  # delta of a 2-cochain is a 3-cochain; its delta needs 4


@dataclass
class Cochain:
    arity: int
    action: ModuleAction  # coefficients: the action's space
    values: dict  # basis index tuple -> vector of Poly over the space basis

    def __post_init__(self):
        if not 1 <= self.arity <= MAX_ARITY:
            raise ValueError("cochain arity must be between 1 and %d" % MAX_ARITY)
        n = self.algebra.rank
        for tup in product(range(n), repeat=self.arity):
            if tup not in self.values:
                raise ValueError("missing value on basis tuple %s" % (tup,))
            for p in self.values[tup]:
                if p.max_param() >= self.arity:
                    raise ValueError(
                        "value on %s uses a parameter beyond x%d"
                        % (tup, self.arity - 1)
                    )

    @property
    def algebra(self) -> LeibnizConformalAlgebra:
        return self.action.algebra

    @property
    def degree(self) -> int:
        return self.arity - 1

    def is_zero(self) -> bool:
        return all(vis_zero(v) for v in self.values.values())

    def __add__(self, other: "Cochain") -> "Cochain":
        _compatible(self, other)
        return Cochain(
            self.arity,
            self.action,
            {t: vadd(v, other.values[t]) for t, v in self.values.items()},
        )

    def __sub__(self, other: "Cochain") -> "Cochain":
        _compatible(self, other)
        return Cochain(
            self.arity,
            self.action,
            {t: vsub(v, other.values[t]) for t, v in self.values.items()},
        )

    def __neg__(self) -> "Cochain":
        return Cochain(
            self.arity, self.action, {t: [-p for p in v] for t, v in self.values.items()}
        )

    def scale(self, c) -> "Cochain":
        return Cochain(
            self.arity, self.action, {t: vscale(Poly.const(c), v) for t, v in self.values.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (
            self.arity == other.arity
            and self.values == other.values
        )


def _compatible(a: Cochain, b: Cochain):
    if a.arity != b.arity or a.action is not b.action and a.action != b.action:
        raise ValueError("cochains live on different complexes")


def zero_cochain(arity: int, action: ModuleAction) -> Cochain:
    n = action.algebra.rank
    m = action.space.rank
    return Cochain(
        arity, action, {t: vzero(m) for t in product(range(n), repeat=arity)}
    )


def eval_cochain(gamma: Cochain, args, params) -> list:
    """Evaluate on arbitrary coefficient vectors with explicit parameters.

    args: arity-many vectors over the algebra basis (entries may involve
    ambient parameters); params: arity-1 polynomials assigned to the
    stored parameters x1..x_{n-1}, in order.
    """
    n = gamma.arity
    if len(args) != n or len(params) != n - 1:
        raise ValueError("argument/parameter count mismatch")
    total = sum(params, Poly.zero())
    last_map = {PARTIAL: D + total}
    slot_maps = [{PARTIAL: -params[k]} for k in range(n - 1)]
    rename = {param(k + 1): params[k] for k in range(n - 1)}
    out = vzero(gamma.action.space.rank)
    for tup, val in gamma.values.items():
        coeff = None
        for k in range(n):
            c = args[k][tup[k]]
            if c.is_zero():
                coeff = None
                break
            c = c.subs(slot_maps[k] if k < n - 1 else last_map)
            coeff = c if coeff is None else coeff * c
            if coeff.is_zero():
                coeff = None
                break
        if coeff is None:
            continue
        for t, p in enumerate(val):
            if not p.is_zero():
                out[t] = out[t] + coeff * p.subs(rename)
    return out


def delta(gamma: Cochain) -> Cochain:
    """Coboundary of a cochain (the alternating three-block sum)."""
    n = gamma.arity
    if n + 1 > MAX_ARITY:
        raise ValueError("delta would exceed the supported arity %d" % MAX_ARITY)
    act = gamma.action
    alg = act.algebra
    nr = alg.rank
    lam = [Poly.var(param(i + 1)) for i in range(n)]
    lam_sum = sum(lam, Poly.zero())
    values = {}
    for tup in product(range(nr), repeat=n + 1):
        units = [unit(nr, idx) for idx in tup]
        res = vzero(act.space.rank)
        # left-action block: sum_i (-1)^(i+1) a_i |>_{x_i} gamma(..hat i..)
        for i in range(n):
            rest_args = units[:i] + units[i + 1 :]
            rest_params = lam[:i] + lam[i + 1 :]
            val = eval_cochain(gamma, rest_args, rest_params)
            term = act_left(act, units[i], val, lam[i])
            res = vadd(res, term) if i % 2 == 0 else vsub(res, term)
        # right-action block: (-1)^(n+1) gamma(a_1..a_n) <|_{x_1+..+x_n} a_{n+1}
        val = eval_cochain(gamma, units[:n], lam[: n - 1])
        term = act_right(act, val, units[n], lam_sum)
        res = vadd(res, term) if (n + 1) % 2 == 0 else vsub(res, term)
        # inner-substitution block: (-1)^(i+1) gamma(..hat i.., [a_i x_i a_j], ..)
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                br = bracket_vec(alg, units[i], units[j], lam[i])
                orig = [p for p in range(n + 1) if p != i]
                args = [br if p == j else units[p] for p in orig]
                params = [
                    lam[i] + lam[j] if orig[q] == j else lam[orig[q]]
                    for q in range(n - 1)
                ]
                term = eval_cochain(gamma, args, params)
                res = vadd(res, term) if i % 2 == 1 else vsub(res, term)
        values[tup] = res
    return Cochain(n + 1, act, values)


def delta_squared_check(gamma: Cochain) -> Report:
    """delta(delta(gamma)) must vanish identically."""
    dd = delta(delta(gamma))
    failures = [
        Failure(str(t), _residual_str(gamma.action.space.basis_names, v))
        for t, v in sorted(dd.values.items())
        if not vis_zero(v)
    ]
    return Report.failed(failures) if failures else Report.passed()


# ---------------------------------------------------------------------
# Nijenhuis-Richardson structure on the adjoint complex


def _shuffles(k: int, n: int):
    """(k,n)-shuffles of {0..k+n-1} as (ordering, sign)."""
    universe = range(k + n)
    for head in combinations(universe, k):
        tail = tuple(p for p in universe if p not in head)
        order = head + tail
        inv = sum(
            1
            for a in range(len(order))
            for b in range(a + 1, len(order))
            if order[a] > order[b]
        )
        yield order, -1 if inv % 2 else 1


def nr_product(gamma: Cochain, theta: Cochain) -> Cochain:
    """The shuffle-sum insertion product on the adjoint complex.

    Sign convention: the term with k leading untouched arguments carries
    (-1)^((k+m) n) where m = deg gamma, n = deg theta.  This is the
    convention under which the resulting bracket is graded Lie, delta
    equals bracketing with the multiplication 2-cochain in every degree,
    [m, m] = 0 exactly when the Jacobi identity holds, and
    delta c + (1/2)[c, c] reproduces the mixed-component Jacobiator of an
    extension datum; see the test suite.
    """
    m, n = gamma.degree, theta.degree
    out_arity = m + n + 1
    if out_arity > MAX_ARITY:
        raise ValueError("product arity %d exceeds the supported %d" % (out_arity, MAX_ARITY))
    act = gamma.action
    alg = act.algebra
    nr = alg.rank
    lam = [Poly.var(param(i + 1)) for i in range(m + n)]
    values = {}
    for tup in product(range(nr), repeat=out_arity):
        units = [unit(nr, idx) for idx in tup]
        res = vzero(act.space.rank)
        for k in range(m + 1):
            base_sign = -1 if ((k + m) * n) % 2 else 1
            for order, sgn in _shuffles(k, n):
                inner_args = [units[order[k + i]] for i in range(n)] + [units[k + n]]
                inner_params = [lam[order[k + i]] for i in range(n)]
                inner = eval_cochain(theta, inner_args, inner_params)
                outer_args = (
                    [units[order[q]] for q in range(k)]
                    + [inner]
                    + [units[p] for p in range(k + n + 1, m + n + 1)]
                )
                outer_params = []
                for q in range(m):
                    if q < k:
                        outer_params.append(lam[order[q]])
                    elif q == k:
                        outer_params.append(
                            sum(inner_params, Poly.zero()) + lam[k + n]
                        )
                    else:
                        outer_params.append(lam[n + q])
                term = eval_cochain(gamma, outer_args, outer_params)
                if base_sign * sgn == 1:
                    res = vadd(res, term)
                else:
                    res = vsub(res, term)
        values[tup] = res
    return Cochain(out_arity, act, values)


def nr_bracket(gamma: Cochain, theta: Cochain) -> Cochain:
    """[gamma, theta] = gamma . theta - (-1)^(mn) theta . gamma."""
    m, n = gamma.degree, theta.degree
    gt = nr_product(gamma, theta)
    tg = nr_product(theta, gamma)
    return gt - tg if (m * n) % 2 == 0 else gt + tg


def multiplication_cochain(a: LeibnizConformalAlgebra) -> Cochain:
    """The bracket of a as an adjoint 2-cochain."""
    from .conformal import adjoint_action

    act = adjoint_action(a)
    values = {
        (i, j): list(a.sc[i][j])
        for i in range(a.rank)
        for j in range(a.rank)
    }
    return Cochain(2, act, values)


def mc_defect(c: Cochain) -> Cochain:
    """delta(c) + (1/2)[c, c] for a degree-1 element of the complex.

    For degree 1 the bracket halves against itself: (1/2)[c, c] = c . c.
    """
    if c.degree != 1:
        raise ValueError("Maurer-Cartan defect needs a degree-1 element")
    return delta(c) + nr_product(c, c)
