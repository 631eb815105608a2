import random

import pytest
from sympy import partition

from centw import FullComplex, K, Pyramid, ReducedAlgebra, State, alpha, mode
from centw.miura import (NotInReducedForm, VertexOps, critical_alphas, critical_commutativity,
                         gen_binomial, homomorphism_check, injectivity_rank, miura_expand,
                         miura_project, n_product, state_degree, verify_miura)
from centw.statespace import mono_parity
from centw.walgebra import generators

SUITE = [(1,), (1, 1), (1, 2), (2, 2), (1, 1, 1), (1, 1, 2)]


def rstate(p, *modes):
    return ReducedAlgebra(p).monomial_state(list(modes))


def e(i, j, r, m):
    return mode("e", i, j, r, m)


def test_projection_examples():
    p = Pyramid((1, 1))
    w2 = generators(p)[(2, 0)]
    expected = (K + 1) * rstate(p, e(2, 2, 0, -2)) + rstate(p, e(1, 1, 0, -1), e(2, 2, 0, -1))
    assert miura_project(w2) == expected
    assert miura_project(State.vacuum()) == State.vacuum()
    assert miura_project(rstate(p, e(2, 1, 0, -1))) == State.zero()


def test_projection_rejects_fermions():
    p = Pyramid((1, 2))
    v = rstate(p, mode("psi*", 1, 2, 1, 0))
    with pytest.raises(NotInReducedForm):
        miura_project(v)


def test_miura_expand_examples():
    p = Pyramid((1, 1))
    v = miura_expand(p)
    assert v[(1, 0)] == rstate(p, e(1, 1, 0, -1)) + rstate(p, e(2, 2, 0, -1))
    assert v[(2, 0)] == (alpha(p, 1) * rstate(p, e(2, 2, 0, -2))
                         + rstate(p, e(1, 1, 0, -1), e(2, 2, 0, -1)))
    assert miura_expand(Pyramid((1,)))[(1, 0)] == rstate(Pyramid((1,)), e(1, 1, 0, -1))


@pytest.mark.parametrize("shape", [(1, 2), (2, 3), (1, 2, 3)])
def test_v1_has_top_row_many_slots(shape):
    p = Pyramid(shape)
    slots = sorted(r for (l, r) in miura_expand(p) if l == 1)
    assert slots == list(range(p.lam(p.n)))


@pytest.mark.parametrize("shape", SUITE)
def test_verify_miura(shape):
    rep = verify_miura(Pyramid(shape))
    assert rep.passed, rep.counterexample


@pytest.mark.parametrize("shape", SUITE)
def test_projection_is_multiplicative_on_generators(shape):
    rep = homomorphism_check(Pyramid(shape))
    assert rep.passed, rep.counterexample


@pytest.mark.parametrize("shape", SUITE + [(2, 3, 4)])
def test_alphas_at_critical_level(shape):
    assert critical_alphas(Pyramid(shape))


def test_gen_binomial():
    assert gen_binomial(5, 2) == 10
    assert gen_binomial(-1, 3) == -1
    assert gen_binomial(-3, 2) == 6
    assert gen_binomial(4, 0) == 1


# n-product engine ----------------------------------------------------------------

def parity(v):
    ps = {mono_parity(m) for m in v.terms}
    return ps.pop() if ps else 0


def random_triples(alg, count, seed, cap=2):
    states = [State.wrap({m: K ** 0}) for m in alg.basis(cap)]
    rng = random.Random(seed)
    return [tuple(rng.choice(states) for _ in range(3)) for _ in range(count)]


@pytest.mark.parametrize("make", [lambda: FullComplex(Pyramid((1, 2))),
                                  lambda: ReducedAlgebra(Pyramid((1, 1)))])
def test_creation_and_translation(make):
    alg = make()
    ops = VertexOps(alg)
    rng = random.Random(2)
    for a, b, _ in random_triples(alg, 80, 1):
        assert ops.n_product(a, -1, State.vacuum()) == a
        n = rng.randint(-3, 3)
        assert ops.n_product(alg.translate(a), n, b) == (-n) * ops.n_product(a, n - 1, b)


def test_mode_products_of_single_modes():
    alg = FullComplex(Pyramid((1, 2)))
    a = alg.monomial_state([mode("E", 1, 1, 0, -1)])
    b = alg.monomial_state([mode("E", 1, 1, 0, -1)])
    # for a single mode, a_(n) is the mode itself
    assert n_product(alg, a, 1, b) == alg.monomial_state([mode("E", 1, 1, 0, 1),
                                                          mode("E", 1, 1, 0, -1)])
    s = alg.monomial_state([mode("psi*", 1, 2, 1, 0)])
    psi = alg.monomial_state([mode("psi", 1, 2, 1, -1)])
    assert n_product(alg, s, 0, psi) == State.vacuum()


@pytest.mark.parametrize("make", [lambda: FullComplex(Pyramid((1, 2))),
                                  lambda: ReducedAlgebra(Pyramid((1, 1)))])
def test_commutator_formula(make):
    # [a_(m), b_(n)] c = sum_j C(m, j) (a_(j) b)_(m+n-j) c
    alg = make()
    ops = VertexOps(alg)
    rng = random.Random(4)
    for a, b, c in random_triples(alg, 60, 9):
        m, n = rng.randint(-2, 2), rng.randint(-2, 2)
        sign = -1 if parity(a) and parity(b) else 1
        lhs = ops.n_product(a, m, ops.n_product(b, n, c)) - sign * ops.n_product(
            b, n, ops.n_product(a, m, c))
        rhs = State.zero()
        for j in range(8):
            cj = gen_binomial(m, j)
            if cj:
                rhs = rhs + cj * ops.n_product(ops.n_product(a, j, b), m + n - j, c)
        assert lhs == rhs


@pytest.mark.parametrize("make", [lambda: FullComplex(Pyramid((1, 1))),
                                  lambda: ReducedAlgebra(Pyramid((1, 1)))])
def test_quasi_associativity(make):
    alg = make()
    ops = VertexOps(alg)
    for a, b, c in random_triples(alg, 60, 13):
        sign = -1 if parity(a) and parity(b) else 1
        lhs = ops.n_product(ops.n_product(a, -1, b), -1, c)
        rhs = ops.n_product(a, -1, ops.n_product(b, -1, c))
        for j in range(6):
            rhs = rhs + ops.n_product(a, -j - 2, ops.n_product(b, j, c))
            rhs = rhs + sign * ops.n_product(b, -j - 2, ops.n_product(a, j, c))
        assert lhs == rhs


def test_state_degree():
    p = Pyramid((1, 1))
    assert state_degree(generators(p)[(2, 0)]) == 2
    with pytest.raises(ValueError):
        state_degree(rstate(p, e(1, 1, 0, -1)) + rstate(p, e(1, 1, 0, -2)))


# critical level and rank -----------------------------------------------------------

@pytest.mark.parametrize("shape", [(1, 1), (1, 2), (1, 1, 1), (2, 2)])
def test_critical_commutativity(shape):
    rep = critical_commutativity(Pyramid(shape))
    assert rep.passed, rep.counterexample
    assert rep.details["generic_nonzero"]


def test_generic_level_is_not_commutative():
    p = Pyramid((1, 1))
    alg = ReducedAlgebra(p)
    w2 = generators(p)[(2, 0)]
    prod = VertexOps(alg).n_product(w2, 1, w2)
    assert prod
    assert not prod.evaluate(-2)


def test_rank_examples():
    rep = injectivity_rank(Pyramid((1,)), 3)
    assert rep.passed
    assert rep.details["rank"] == sum(int(partition(d)) for d in range(4))
    rep = injectivity_rank(Pyramid((1, 1)), 2)
    assert rep.passed and rep.details["rank"] == 1 + 1 + 3
    rep = injectivity_rank(Pyramid((1, 1)), 0)
    assert rep.passed and rep.details["rank"] == 1


def test_rank_is_deterministic():
    a = injectivity_rank(Pyramid((1, 2)), 2, seed=5).to_json()
    b = injectivity_rank(Pyramid((1, 2)), 2, seed=5).to_json()
    assert a == b
    assert a["details"]["seed"] == 5
