import sympy
from hypothesis import given
from hypothesis import strategies as st

from coloralg.linalg import EchelonBasis, ModularReduction, kernel, poly_gcd, primes_one_mod, rank
from coloralg.scalars import CyclotomicField

Q = CyclotomicField(2)
F4 = CyclotomicField(4)

matrices = st.integers(1, 5).flatmap(
    lambda r: st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=r, max_size=r)
)


def as_vectors(rows):
    return [{j: Q.rational(v) for j, v in enumerate(row) if v} for row in rows]


@given(matrices)
def test_rank_matches_sympy(rows):
    assert rank(as_vectors(rows)) == sympy.Matrix(rows).rank()


@given(matrices)
def test_kernel_vectors_annihilate(rows):
    cols = as_vectors(rows)  # treat the rows as columns of a 4 x r matrix
    ker = kernel(cols, Q)
    assert len(ker) == len(rows) - sympy.Matrix(rows).rank()
    for vec in ker:
        total = {}
        for j, c in vec.items():
            for k, v in cols[j].items():
                total[k] = total.get(k, Q.zero) + c * v
        assert not any(total.values())


@given(matrices)
def test_coordinates_reconstruct(rows):
    eb = EchelonBasis()
    vecs = as_vectors(rows)
    for v in vecs:
        if v:
            eb.add(v)
    for v in vecs:
        co = eb.coordinates(v)
        assert co is not None
        back = {}
        for c, row in zip(co, eb.rows):
            for k, x in row.items():
                back[k] = back.get(k, Q.zero) + c * x
        assert {k: x for k, x in back.items() if x} == v


def test_tracked_dependency():
    eb = EchelonBasis(track=True)
    a = {0: Q.one, 1: Q.rational(2)}
    b = {1: Q.one}
    assert eb.add(a) is None and eb.add(b) is None
    dep = eb.add({0: Q.rational(3), 1: Q.rational(4)})
    # 3a - 2b - c = 0
    assert dep == {0: Q.rational(-3), 1: Q.rational(2), 2: Q.one}


def test_poly_gcd():
    r = Q.rational
    # (x-1)^2 (x+2) and (x-1)(x+3)
    a = [r(2), r(-3), r(0), r(1)]
    b = [r(-3), r(2), r(1)]
    assert poly_gcd(a, b) == [r(-1), r(1)]


def test_primes_and_roots():
    gen = primes_one_mod(4, start=2**19)
    p = next(gen)
    assert p == 524309 and sympy.isprime(p)
    red = ModularReduction(F4, p)
    assert pow(red.root, 2, p) == p - 1


@given(st.lists(st.integers(-9, 9), min_size=2, max_size=2), st.lists(st.integers(-9, 9), min_size=2, max_size=2), st.integers(1, 7))
def test_reduction_is_a_ring_map(x, y, den):
    red = ModularReduction(F4, 524309)
    p = red.prime
    a = F4.from_poly(x, den)
    b = F4.from_poly(y)
    assert red(a * b) == red(a) * red(b) % p
    assert red(a + b) == (red(a) + red(b)) % p
