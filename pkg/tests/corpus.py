"""Shared example algebras, modules and randomized generators."""

import random
from fractions import Fraction

from leibconf.poly import D, Poly, X1
from leibconf.conformal import (
    FreeModule,
    ModuleAction,
    ModuleHom,
    abelian_algebra,
    current_algebra,
    virasoro,
)
from leibconf.cohomology import Cochain
from leibconf.extensions import NonAbelianCocycle, zero_cocycle


def vir():
    return virasoro()


def cur():
    # e o e = f, everything else zero: Leibniz but not Lie
    return current_algebra([[[0, 1], [0, 0]], [[0, 0], [0, 0]]], ("e", "f"))


def ab(names=("h",)):
    return abelian_algebra(names)


def bad_rank1():
    # [L_x L] = x L violates the Jacobi identity
    from leibconf.conformal import LeibnizConformalAlgebra

    return LeibnizConformalAlgebra(FreeModule.of(("L",)), [[[X1]]])


def vir_module(Delta, alpha0):
    # L acts by d + alpha0 + Delta x; right action zero
    sp = FreeModule.of(("v",))
    left = [[[D + Poly.const(alpha0) + Poly.const(Delta) * X1]]]
    right = [[[Poly.zero()]]]
    return ModuleAction(virasoro(), sp, left, right)


def nonsplit_cocycle():
    # abelian R and H of rank 1, chi(a, a) = h: a non-split extension
    c = zero_cocycle(ab(("a",)), ab(("h",)))
    c.chi[(0, 0)] = [Poly.const(1)]
    return c


def scalar_hom(module, value):
    n = len(module.basis_names)
    return ModuleHom(
        module, module,
        [[Poly.const(value) if i == j else Poly.zero() for j in range(n)]
         for i in range(n)],
    )


def rng(seed):
    return random.Random(seed)


def random_poly(r, nvars, deg=2, terms=2):
    t = {}
    for _ in range(terms):
        e = [r.randint(0, deg) for _ in range(nvars)]
        t[tuple(e)] = Fraction(r.randint(-4, 4))
    return Poly(t)


def random_cochain(r, arity, act, deg=2):
    from itertools import product

    n, m = act.algebra.rank, act.space.rank
    return Cochain(
        arity, act,
        {t: [random_poly(r, arity, deg) for _ in range(m)]
         for t in product(range(n), repeat=arity)},
    )


def random_hom(r, module, deg=2):
    n = len(module.basis_names)
    return ModuleHom(
        module, module,
        [[random_poly(r, 1, deg) for _ in range(n)] for _ in range(n)],
    )


def random_cocycle(r, R, H, deg=2):
    nr, nh = R.rank, H.rank
    l = [[[random_poly(r, 2, deg) for _ in range(nh)] for _ in range(nh)]
         for _ in range(nr)]
    rr = [[[random_poly(r, 2, deg) for _ in range(nh)] for _ in range(nh)]
          for _ in range(nr)]
    chi = {(i, j): [random_poly(r, 2, deg) for _ in range(nh)]
           for i in range(nr) for j in range(nr)}
    return NonAbelianCocycle(R, H, l, rr, chi)
