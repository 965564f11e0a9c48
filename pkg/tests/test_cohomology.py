import pytest

from leibconf.poly import D, Poly, X1, X2
from leibconf.conformal import adjoint_action
from leibconf.cohomology import (
    Cochain,
    delta,
    delta_squared_check,
    eval_cochain,
    mc_defect,
    multiplication_cochain,
    nr_bracket,
    zero_cochain,
)
from corpus import bad_rank1, cur, random_cochain, rng, vir, vir_module


def test_eval_cochain_slot_conventions():
    act = vir_module(2, 0)
    g = Cochain(2, act, {(0, 0): [D * X1]})
    one = [Poly.const(1)]
    # stored parameter renames to the supplied one
    assert eval_cochain(g, [one, one], [X2]) == [D * X2]
    # first slot: d -> -x; evaluated on (d L, L)
    assert eval_cochain(g, [[D], one], [X1]) == [-X1 * D * X1]
    # last slot: d -> d + x
    assert eval_cochain(g, [one, [D]], [X1]) == [(D + X1) * D * X1]


def test_delta_squared_randomized():
    r = rng(101)
    for act in (adjoint_action(vir()), adjoint_action(cur()), vir_module(2, 0)):
        for arity in (1, 2):
            for _ in range(3):
                assert delta_squared_check(random_cochain(r, arity, act)).ok


def test_delta_linear():
    r = rng(7)
    act = adjoint_action(cur())
    f = random_cochain(r, 2, act)
    g = random_cochain(r, 2, act)
    assert (delta(f + g) - delta(f) - delta(g)).is_zero()


def test_mm_zero_iff_jacobi():
    for alg, good in [(vir(), True), (cur(), True), (bad_rank1(), False)]:
        m = multiplication_cochain(alg)
        assert nr_bracket(m, m).is_zero() == good


def test_graded_leibniz_identity():
    r = rng(19)
    act = adjoint_action(cur())
    for (p, q, s) in [(0, 0, 1), (0, 1, 0), (1, 0, 0), (0, 1, 1), (1, 1, 0), (1, 0, 1)]:
        a = random_cochain(r, p + 1, act)
        b = random_cochain(r, q + 1, act)
        c = random_cochain(r, s + 1, act)
        lhs = nr_bracket(a, nr_bracket(b, c))
        rhs = nr_bracket(nr_bracket(a, b), c)
        t2 = nr_bracket(b, nr_bracket(a, c))
        rhs = rhs + t2 if (p * q) % 2 == 0 else rhs - t2
        assert (lhs - rhs).is_zero(), (p, q, s)


def test_graded_antisymmetry():
    r = rng(29)
    act = adjoint_action(cur())
    for (p, q) in [(0, 0), (0, 1), (1, 1), (1, 2)]:
        a = random_cochain(r, p + 1, act)
        b = random_cochain(r, q + 1, act)
        flip = nr_bracket(b, a)
        expect = flip.scale(-1) if (p * q) % 2 == 0 else flip
        assert (nr_bracket(a, b) - expect).is_zero()


def test_delta_is_bracket_with_multiplication():
    r = rng(31)
    for alg in (vir(), cur()):
        m = multiplication_cochain(alg)
        act = adjoint_action(alg)
        for arity in (1, 2):
            g = random_cochain(r, arity, act)
            assert (delta(g) - nr_bracket(m, g)).is_zero()


def test_mc_defect_of_multiplication():
    for alg in (vir(), cur()):
        m = multiplication_cochain(alg)
        assert mc_defect(m).is_zero()
    assert not mc_defect(multiplication_cochain(bad_rank1())).is_zero()


def test_arity_limits():
    act = adjoint_action(cur())
    g = zero_cochain(3, act)
    with pytest.raises(ValueError):
        delta(delta(g))
    with pytest.raises(ValueError):
        Cochain(2, act, {(0, 0): [X2]})
