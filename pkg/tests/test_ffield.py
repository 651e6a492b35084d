"""Field arithmetic, primitive roots, and character tests."""

import math
import random

import numpy as np
import pytest
import sympy

from curvestats.ffield import (
    Character,
    FieldSpec,
    char_index,
    char_index_table,
    char_indices,
    char_value,
    character,
    factorize,
    is_prime,
    legendre,
    pow_mod,
    pow_mod_vec,
    primitive_root,
    unity_root,
)


# ---------------------------------------------------------------- pow_mod


@pytest.mark.parametrize(
    "base,exp,p,want",
    [
        (2, 10, 1000003, 1024),
        (5, 0, 7, 1),
        (3, 100, 101, 1),  # Fermat: 101 prime, 100 = p - 1
    ],
)
def test_pow_mod_examples(base, exp, p, want):
    assert pow_mod(base, exp, p) == want


def test_pow_mod_matches_repeated_multiplication():
    rng = random.Random(1)
    for _ in range(200):
        p = rng.randrange(2, 10_000)
        b = rng.randrange(0, p)
        e = rng.randrange(0, 40)
        acc = 1
        for _ in range(e):
            acc = acc * b % p
        assert pow_mod(b, e, p) == acc


def test_pow_mod_rejects_bad_inputs():
    with pytest.raises(ValueError):
        pow_mod(2, -1, 7)
    with pytest.raises(ValueError):
        pow_mod(2, 3, 1)


def test_pow_mod_vec_matches_scalar():
    rng = random.Random(2)
    p = 1_000_003
    xs = np.array([rng.randrange(0, p) for _ in range(500)], dtype=np.int64)
    for e in (0, 1, 2, 17, (p - 1) // 2, p - 1):
        got = pow_mod_vec(xs, e, p)
        assert got.dtype == np.int64
        assert [int(v) for v in got] == [pow(int(x), e, p) for x in xs]


def test_pow_mod_vec_large_modulus_fallback():
    # 2**61 - 1 is prime and far above the int64 product-safe limit.
    p = (1 << 61) - 1
    xs = np.array([3, 5, 12345678901234567], dtype=np.int64)
    got = pow_mod_vec(xs, 7, p)
    assert [int(v) for v in got] == [pow(int(x), 7, p) for x in xs]


# ---------------------------------------------------------------- primality, factorization


def test_is_prime_small_table():
    small = {n for n in range(200) if sympy.isprime(n)}
    assert {n for n in range(200) if is_prime(n)} == small


def test_is_prime_matches_sympy_random_64bit():
    rng = random.Random(3)
    for _ in range(80):
        n = rng.randrange(2, 1 << 63)
        assert is_prime(n) == sympy.isprime(n)


@pytest.mark.parametrize(
    "n,verdict",
    [
        ((1 << 61) - 1, True),  # Mersenne prime
        (561, False),  # Carmichael
        (3215031751, False),  # strong pseudoprime to bases 2,3,5,7
        (1000003, True),
    ],
)
def test_is_prime_known_cases(n, verdict):
    assert is_prime(n) == verdict


def test_factorize_examples():
    assert factorize(1) == ()
    assert factorize(12) == ((2, 2), (3, 1))
    assert factorize(1000002) == ((2, 1), (3, 1), (166667, 1))


def test_factorize_matches_sympy():
    rng = random.Random(4)
    for _ in range(40):
        n = rng.randrange(2, 1 << 48)
        got = dict(factorize(n))
        assert got == sympy.factorint(n)
        prod = 1
        for q, e in got.items():
            prod *= q**e
        assert prod == n


# ---------------------------------------------------------------- primitive roots, FieldSpec


@pytest.mark.parametrize("p,g", [(7, 3), (11, 2), (3, 2)])
def test_primitive_root_examples(p, g):
    assert primitive_root(p) == g


def test_primitive_root_is_smallest_generator():
    for p in [q for q in range(3, 200) if is_prime(q)]:
        g = primitive_root(p)
        orders = {h: min(k for k in range(1, p) if pow(h, k, p) == 1) for h in range(2, p)}
        generators = [h for h, o in orders.items() if o == p - 1]
        assert g == min(generators)


def test_primitive_root_rejects_nonprime():
    for bad in (1, 2, 4, 9, 15):
        with pytest.raises(ValueError):
            primitive_root(bad)


def test_fieldspec_from_prime():
    fs = FieldSpec.from_prime(13)
    assert fs.p == 13
    assert fs.g == 2
    assert fs.pm1_factors == ((2, 2), (3, 1))
    order = math.prod(q**e for q, e in fs.pm1_factors)
    assert order == fs.p - 1
    for bad in (2, 4, 9, 1000002):
        with pytest.raises(ValueError):
            FieldSpec.from_prime(bad)


# ---------------------------------------------------------------- characters


def test_character_structure():
    fs = FieldSpec.from_prime(7)
    chi = character(fs, 3)
    assert chi.d == 3  # 7 = 1 mod 3, effective order equals requested
    assert chi.exponent == 2
    assert chi.match_table[0] == 1
    assert len(set(chi.match_table)) == chi.d
    assert (fs.p - 1) % chi.d == 0


def test_character_gcd_order():
    fs = FieldSpec.from_prime(7)
    chi = character(fs, 4)  # gcd(4, 6) = 2
    assert chi.d == 2
    with pytest.raises(ValueError):
        character(fs, 1)


def test_char_value_examples():
    fs = FieldSpec.from_prime(7)
    chi2 = character(fs, 2)
    assert char_value(chi2, 2).index == 0  # squares mod 7 are {1, 2, 4}
    assert char_value(chi2, 3).index == 1
    chi3 = character(fs, 3)
    assert char_value(chi3, 0).is_zero
    assert char_index(chi3, 0) is None


def test_char_multiplicativity_exhaustive():
    # index(xy) = index(x) + index(y) mod d, every prime p <= 200
    for p in [q for q in range(3, 201) if is_prime(q)]:
        fs = FieldSpec.from_prime(p)
        for ell in (2, 3, 4):
            chi = character(fs, ell)
            idx = char_index_table(chi).astype(np.int64)
            x = np.arange(1, p)
            prod = np.outer(x, x) % p
            lhs = idx[prod]
            rhs = (idx[x][:, None] + idx[x][None, :]) % chi.d
            assert (lhs == rhs).all()


def test_char_orthogonality_exact():
    # each unity index is hit exactly (p-1)/d times, so the value sum vanishes
    for p, ell in [(13, 2), (13, 3), (13, 4), (31, 3), (101, 5)]:
        chi = character(FieldSpec.from_prime(p), ell)
        counts = np.bincount(char_index_table(chi)[1:], minlength=chi.d)
        assert set(counts.tolist()) == {(p - 1) // chi.d}
        total = sum(c * unity_root(chi.d, j) for j, c in enumerate(counts))
        assert abs(total) < 1e-9


def test_ellth_powers_are_residues():
    for p, ell in [(13, 3), (31, 5), (29, 4), (101, 2)]:
        chi = character(FieldSpec.from_prime(p), ell)
        for y in range(1, p):
            assert char_value(chi, pow(y, ell, p)).index == 0


def test_legendre_examples():
    assert legendre(4, 7) == 1
    assert legendre(3, 7) == -1
    assert legendre(7, 7) == 0


def test_legendre_agrees_with_quadratic_character():
    for p in [q for q in range(3, 501) if is_prime(q)]:
        chi = character(FieldSpec.from_prime(p), 2)
        for a in range(p):
            v = char_value(chi, a)
            sym = legendre(a, p)
            if v.is_zero:
                assert sym == 0
            else:
                assert sym == (1 if v.index == 0 else -1)


def test_char_indices_agrees_with_table_and_scalar():
    fs = FieldSpec.from_prime(10009)  # 10009 = 1 mod 3
    chi = character(fs, 3)
    xs = np.arange(fs.p, dtype=np.int64)
    vec = char_indices(chi, xs)
    table = char_index_table(chi)
    assert (vec == table).all()
    rng = random.Random(5)
    for _ in range(50):
        x = rng.randrange(0, fs.p)
        j = char_index(chi, x)
        assert vec[x] == (-1 if j is None else j)


def test_char_index_table_rejects_large_p():
    p = (1 << 24) + 1
    while not is_prime(p):
        p += 2
    chi = character(FieldSpec.from_prime(p), 2)
    with pytest.raises(ValueError):
        char_index_table(chi)


def test_unity_root_values():
    assert abs(unity_root(4, 1) - 1j) < 1e-12
    assert abs(unity_root(2, 1) + 1) < 1e-12
    assert abs(unity_root(5, 7) - unity_root(5, 2)) < 1e-12
    with pytest.raises(ValueError):
        unity_root(0, 1)
