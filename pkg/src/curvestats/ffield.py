"""Prime fields and multiplicative characters.

Arithmetic lives in F_p for an odd prime p.  A character of order d is
determined by a generator g of F_p^* and the table of d-th roots of unity
images g^(k(p-1)/d); evaluating the character at x means computing
x^((p-1)/d) and locating it in that table.  Everything here is exact
integer arithmetic, with numpy fast paths for bulk evaluation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "is_prime",
    "pow_mod",
    "pow_mod_vec",
    "factorize",
    "primitive_root",
    "FieldSpec",
    "CharValue",
    "Character",
    "character",
    "char_value",
    "char_index",
    "char_indices",
    "char_index_table",
    "legendre",
    "unity_root",
]

# Largest modulus for which (p-1)^2 still fits in a signed 64-bit product.
_INT64_MOD_LIMIT = 3_037_000_499

# Sufficient deterministic Miller-Rabin witness set for all n < 3.3 * 10^24,
# which covers every 64-bit input with a wide margin.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SMALL_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
    67, 71, 73, 79, 83, 89, 97,
)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test for n < 2**64."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n == q:
            return True
        if n % q == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def pow_mod(base: int, exp: int, p: int) -> int:
    """base**exp mod p by square and multiply; exp >= 0, p >= 2."""
    if exp < 0:
        raise ValueError("exponent must be nonnegative")
    if p < 2:
        raise ValueError("modulus must be at least 2")
    return pow(base % p, exp, p)


def pow_mod_vec(xs: np.ndarray, exp: int, p: int) -> np.ndarray:
    """Elementwise xs**exp mod p.

    Uses int64 square-and-multiply when products cannot overflow
    (p <= 3_037_000_499); larger moduli fall back to scalar pow.
    """
    if exp < 0:
        raise ValueError("exponent must be nonnegative")
    if p < 2:
        raise ValueError("modulus must be at least 2")
    xs = np.asarray(xs)
    if p > _INT64_MOD_LIMIT:
        flat = [pow(int(x), exp, p) for x in xs.ravel()]
        return np.array(flat, dtype=object).reshape(xs.shape)
    base = np.mod(xs, p).astype(np.int64)
    result = np.ones_like(base)
    e = exp
    while e:
        if e & 1:
            np.multiply(result, base, out=result)
            np.mod(result, p, out=result)
        e >>= 1
        if e:
            np.multiply(base, base, out=base)
            np.mod(base, p, out=base)
    return result


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of composite n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    for c in range(1, 64):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"rho failed to split {n}")


def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as ((prime, multiplicity), ...), primes ascending."""
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    counts: dict[int, int] = {}
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            counts[m] = counts.get(m, 0) + 1
            continue
        for q in _SMALL_PRIMES:
            if m % q == 0:
                stack.extend([q, m // q])
                break
        else:
            d = _pollard_rho(m)
            stack.extend([d, m // d])
    return tuple(sorted(counts.items()))


def primitive_root(p: int) -> int:
    """Smallest generator of F_p^* for an odd prime p."""
    if p < 3 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    primes = [q for q, _ in factorize(p - 1)]
    exponents = [(p - 1) // q for q in primes]
    for g in range(2, p):
        if all(pow(g, e, p) != 1 for e in exponents):
            return g
    raise ArithmeticError(f"no primitive root below {p}")  # unreachable for prime p


@dataclass(frozen=True)
class FieldSpec:
    """An odd prime field together with its fixed generator.

    p: the odd prime modulus.
    g: smallest primitive root of p.
    pm1_factors: prime factorization of p - 1.
    """

    p: int
    g: int
    pm1_factors: tuple[tuple[int, int], ...]

    @classmethod
    def from_prime(cls, p: int) -> "FieldSpec":
        if p < 3 or p % 2 == 0 or not is_prime(p):
            raise ValueError(f"{p} is not an odd prime")
        return cls(p=p, g=primitive_root(p), pm1_factors=factorize(p - 1))


@dataclass(frozen=True)
class CharValue:
    """Value of a multiplicative character: zero, or a d-th root of unity.

    index is None for the value at arguments divisible by p, otherwise the
    exponent j with value = zeta_d^j.
    """

    index: int | None

    @classmethod
    def zero(cls) -> "CharValue":
        return cls(index=None)

    @classmethod
    def unity(cls, j: int) -> "CharValue":
        if j < 0:
            raise ValueError("unity index must be nonnegative")
        return cls(index=j)

    @property
    def is_zero(self) -> bool:
        return self.index is None


@dataclass(frozen=True)
class Character:
    """Multiplicative character of F_p^* of order d = gcd(ell, p-1).

    match_table[k] = g^(k * (p-1)/d); the character maps g^n to index n mod d.
    The induced value at x is located by matching x^((p-1)/d) against the
    table, and is zero when p divides x.
    """

    field: FieldSpec
    ell: int
    d: int
    exponent: int
    match_table: tuple[int, ...]
    _index_of: dict[int, int] = field(compare=False, repr=False, default_factory=dict)

    def __post_init__(self):
        if not self._index_of:
            self._index_of.update({v: k for k, v in enumerate(self.match_table)})


def character(fs: FieldSpec, ell: int) -> Character:
    """The order-gcd(ell, p-1) character sending the generator g to zeta_d."""
    if ell < 2:
        raise ValueError("character order parameter must be at least 2")
    d = math.gcd(ell, fs.p - 1)
    exponent = (fs.p - 1) // d
    table = tuple(pow(fs.g, k * exponent, fs.p) for k in range(d))
    if len(set(table)) != d:
        raise ArithmeticError("match table entries collide; field spec is invalid")
    return Character(field=fs, ell=ell, d=d, exponent=exponent, match_table=table)


def char_value(chi: Character, x: int) -> CharValue:
    """chi evaluated at x, as zero or a root-of-unity index."""
    p = chi.field.p
    if x % p == 0:
        return CharValue.zero()
    t = pow(x % p, chi.exponent, p)
    j = chi._index_of.get(t)
    if j is None:
        raise ArithmeticError(f"x^((p-1)/d) = {t} not a d-th root of unity mod {p}")
    return CharValue.unity(j)


def char_index(chi: Character, x: int) -> int | None:
    """Root-of-unity index of chi(x), or None when p divides x."""
    return char_value(chi, x).index


def char_indices(chi: Character, xs: np.ndarray) -> np.ndarray:
    """Vectorized char_index; zero values are encoded as -1."""
    p = chi.field.p
    xs = np.asarray(xs)
    t = pow_mod_vec(xs, chi.exponent, p)
    if t.dtype == object:
        flat = np.array(
            [-1 if x % p == 0 else chi._index_of[v] for x, v in zip(xs.ravel(), t.ravel())],
            dtype=np.int64,
        )
        return flat.reshape(xs.shape)
    table = np.array(chi.match_table, dtype=np.int64)
    order = np.argsort(table)
    svals = table[order]
    pos = np.searchsorted(svals, t)
    pos[pos == chi.d] = 0
    out = np.where(svals[pos] == t, order[pos], -1)
    bad = (out == -1) & (np.mod(xs, p) != 0)
    if bad.any():
        raise ArithmeticError("power map left the root-of-unity table")
    return out


def char_index_table(chi: Character) -> np.ndarray:
    """Full lookup table of char indices for x in [0, p), -1 at x = 0.

    Built by walking powers of the generator, O(p) total work; refused for
    p > 2**24 to bound memory.
    """
    p = chi.field.p
    if p > 1 << 24:
        raise ValueError("index table only supported for p <= 2**24")
    g = chi.field.g
    d = chi.d
    table = np.full(p, -1, dtype=np.int8 if d < 128 else np.int32)
    block = min(4096, p - 1)
    pows = np.empty(block, dtype=np.int64)
    t = 1
    for j in range(block):
        pows[j] = t
        t = t * g % p
    g_block = t  # g**block
    offsets = np.arange(block, dtype=np.int64)
    scale = 1
    for start in range(0, p - 1, block):
        cnt = min(block, p - 1 - start)
        vals = pows[:cnt] * scale % p
        table[vals] = (start + offsets[:cnt]) % d
        scale = scale * g_block % p
    return table


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) in {-1, 0, 1} by Euler's criterion; p an odd prime."""
    if p < 3 or p % 2 == 0:
        raise ValueError("legendre requires an odd prime modulus")
    t = pow(a % p, (p - 1) // 2, p)
    if t == 0:
        return 0
    if t == 1:
        return 1
    if t == p - 1:
        return -1
    raise ValueError(f"{p} is not prime (Euler criterion gave {t})")


def unity_root(d: int, j: int) -> complex:
    """exp(2 pi i j / d)."""
    if d < 1:
        raise ValueError("root order must be positive")
    return cmath.exp(2j * cmath.pi * (j % d) / d)
