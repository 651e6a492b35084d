"""Dense univariate polynomial arithmetic over prime fields F_p.

Coefficients are stored constant term first.  Factorization follows the
classical pipeline: derivative/gcd reduction to a squarefree part,
distinct-degree splitting by Frobenius powers, then seeded equal-degree
splitting, with multiplicities recovered by trial division.  On top of
the factor data sit complete-power and admissibility predicates, shifted
products P(ax+b_1)^{e_1} ... P(ax+b_r)^{e_r}, and a rational-rank test
for multiplicative independence of polynomial families.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .ffield import _INT64_MOD_LIMIT, factorize, is_prime

__all__ = [
    "Poly",
    "poly",
    "x_poly",
    "constant",
    "eval_poly",
    "Factorization",
    "factor",
    "is_complete_power",
    "admissible",
    "shift_combination",
    "IndependenceResult",
    "multiplicatively_independent",
]


@dataclass(frozen=True)
class Poly:
    """Polynomial over F_p, coefficients constant term first, no trailing zeros."""

    coeffs: tuple[int, ...]
    p: int

    def __post_init__(self):
        if self.p < 2:
            raise ValueError("modulus must be at least 2")
        if self.coeffs and self.coeffs[-1] % self.p == 0:
            raise ValueError("leading coefficient must be nonzero; use poly() to normalize")
        if any(not (0 <= c < self.p) for c in self.coeffs):
            raise ValueError("coefficients must be reduced mod p; use poly() to normalize")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def eval_vec(self, xs: np.ndarray) -> np.ndarray:
        """Horner evaluation over an array, int64 fast path for safe moduli."""
        xs = np.asarray(xs)
        if self.p > _INT64_MOD_LIMIT:
            flat = [self(int(x)) for x in xs.ravel()]
            return np.array(flat, dtype=object).reshape(xs.shape)
        x = np.mod(xs, self.p).astype(np.int64)
        acc = np.zeros_like(x)
        for c in reversed(self.coeffs):
            np.multiply(acc, x, out=acc)
            acc += c
            np.mod(acc, self.p, out=acc)
        return acc

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] = (a[i] + c) % self.p
        return poly(a, self.p)

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] = (a[i] - c) % self.p
        return poly(a, self.p)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        if self.is_zero or other.is_zero:
            return poly((), self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = (out[i + j] + a * b) % self.p
        return poly(out, self.p)

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative polynomial powers are not defined")
        result = constant(1, self.p)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c: int) -> "Poly":
        c %= self.p
        return poly([a * c % self.p for a in self.coeffs], self.p)

    def derivative(self) -> "Poly":
        return poly([i * c % self.p for i, c in enumerate(self.coeffs)][1:], self.p)

    def monic(self) -> "Poly":
        if self.is_zero:
            raise ValueError("zero polynomial cannot be made monic")
        inv = pow(self.lead, -1, self.p)
        return self.scale(inv)

    def _check(self, other: "Poly"):
        if self.p != other.p:
            raise ValueError("mixed moduli in polynomial arithmetic")

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("x" if c == 1 else f"{c}*x")
            else:
                parts.append(f"x^{i}" if c == 1 else f"{c}*x^{i}")
        return " + ".join(parts)


def poly(coeffs, p: int) -> Poly:
    """Normalizing constructor: reduces mod p and strips trailing zeros."""
    cs = [int(c) % p for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return Poly(coeffs=tuple(cs), p=p)


def x_poly(p: int) -> Poly:
    return poly((0, 1), p)


def constant(c: int, p: int) -> Poly:
    return poly((c,), p)


def eval_poly(P: Poly, x: int) -> int:
    """Horner evaluation of P at x mod p."""
    return P(x)


def _divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    p = a.p
    inv = pow(b.lead, -1, p)
    rem = list(a.coeffs)
    qdeg = a.degree - b.degree
    if qdeg < 0:
        return poly((), p), a
    quot = [0] * (qdeg + 1)
    for i in range(qdeg, -1, -1):
        c = rem[i + b.degree] * inv % p
        quot[i] = c
        if c:
            for j, bc in enumerate(b.coeffs):
                rem[i + j] = (rem[i + j] - c * bc) % p
    return poly(quot, p), poly(rem, p)


def _gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero:
        a, b = b, _divmod(a, b)[1]
    return a.monic() if not a.is_zero else a


def _pow_mod(base: Poly, e: int, mod: Poly) -> Poly:
    result = constant(1, base.p)
    base = _divmod(base, mod)[1]
    while e:
        if e & 1:
            result = _divmod(result * base, mod)[1]
        e >>= 1
        if e:
            base = _divmod(base * base, mod)[1]
    return result


def _pth_root(f: Poly) -> Poly:
    # In F_p[x], f with zero derivative is g(x^p) and coefficients are fixed
    # by Frobenius, so the root just keeps every p-th coefficient.
    p = f.p
    if any(c != 0 and i % p != 0 for i, c in enumerate(f.coeffs)):
        raise ArithmeticError("polynomial is not a p-th power")
    return poly(f.coeffs[::p], p)


def _distinct_irreducibles(f: Poly, rng: random.Random) -> list[Poly]:
    """Distinct monic irreducible factors of a monic squarefree f."""
    p = f.p
    out: list[Poly] = []
    h = x_poly(p)
    d = 0
    while f.degree > 0:
        d += 1
        if 2 * d > f.degree:
            out.append(f)
            break
        h = _pow_mod(h, p, f)  # x^(p^d) mod f
        g = _gcd(h - x_poly(p), f)
        if g.degree > 0:
            out.extend(_equal_degree_split(g, d, rng))
            f = _divmod(f, g)[0]
            h = _divmod(h, f)[1]
    return out


def _equal_degree_split(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Split monic squarefree f whose irreducible factors all have degree d."""
    p = f.p
    if f.degree == d:
        return [f]
    e = (pow(p, d) - 1) // 2
    while True:
        r = poly([rng.randrange(p) for _ in range(f.degree)], p)
        if r.degree < 1:
            continue
        t = _pow_mod(r, e, f) - constant(1, p)
        g = _gcd(t, f)
        if 0 < g.degree < f.degree:
            return _equal_degree_split(g, d, rng) + _equal_degree_split(_divmod(f, g)[0], d, rng)


@dataclass(frozen=True)
class Factorization:
    """unit * product(factor^multiplicity) with monic irreducible factors."""

    unit: int
    factors: tuple[tuple[Poly, int], ...]
    p: int

    def product(self) -> Poly:
        acc = constant(self.unit, self.p)
        for f, e in self.factors:
            acc = acc * f**e
        return acc

    def multiplicity_gcd(self) -> int:
        return math.gcd(*[e for _, e in self.factors]) if self.factors else 0


def factor(P: Poly, seed: int = 0) -> Factorization:
    """Full factorization over F_p, p an odd prime.

    Equal-degree splitting draws its randomness from the given seed, so
    identical inputs always factor identically.
    """
    if P.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    if not is_prime(P.p) or P.p == 2:
        raise ValueError("factorization requires an odd prime modulus")
    rng = random.Random(seed)
    unit = P.lead
    found: dict[tuple[int, ...], int] = {}
    _factor_monic(P.monic(), 1, found, rng)
    factors = tuple(
        sorted(
            ((Poly(coeffs=c, p=P.p), e) for c, e in found.items()),
            key=lambda fe: (fe[0].degree, fe[0].coeffs),
        )
    )
    result = Factorization(unit=unit, factors=factors, p=P.p)
    if result.product() != P:
        raise ArithmeticError("factorization failed reconstruction check")
    return result


def _factor_monic(f: Poly, scale: int, out: dict[tuple[int, ...], int], rng: random.Random):
    if f.degree < 1:
        return
    df = f.derivative()
    if df.is_zero:
        _factor_monic(_pth_root(f), scale * f.p, out, rng)
        return
    squarefree = _divmod(f, _gcd(f, df))[0]
    for irr in _distinct_irreducibles(squarefree, rng):
        mult = 0
        while True:
            q, r = _divmod(f, irr)
            if not r.is_zero:
                break
            f = q
            mult += 1
        out[irr.coeffs] = out.get(irr.coeffs, 0) + mult * scale
    # whatever survives trial division has all multiplicities divisible by p
    if f.degree > 0:
        _factor_monic(_pth_root(f), scale * f.p, out, rng)


def _is_power_residue(c: int, e: int, p: int) -> bool:
    d = math.gcd(e, p - 1)
    return pow(c % p, (p - 1) // d, p) == 1


def is_complete_power(P: Poly, e: int) -> bool:
    """True iff P = R^e for some polynomial R over F_p."""
    if P.is_zero:
        raise ValueError("zero polynomial is excluded")
    if e < 2:
        raise ValueError("power exponent must be at least 2")
    fac = factor(P)
    if any(m % e for _, m in fac.factors):
        return False
    return _is_power_residue(fac.unit, e, P.p)


def admissible(P: Poly, ell: int) -> bool:
    """No prime q coprime to ell has P as a complete q-th power."""
    if P.degree < 1:
        raise ValueError("admissibility is defined for nonconstant polynomials")
    fac = factor(P)
    g = fac.multiplicity_gcd()
    for q, _ in factorize(g):
        if math.gcd(q, ell) == 1 and _is_power_residue(fac.unit, q, P.p):
            return False
    return True


def shift_combination(P: Poly, a: int, bs, es) -> Poly:
    """The product P(a*x + b_1)^{e_1} * ... * P(a*x + b_r)^{e_r}."""
    p = P.p
    bs = [b % p for b in bs]
    es = [int(e) for e in es]
    if len(bs) != len(es) or not bs:
        raise ValueError("offset and exponent lists must be nonempty and equal length")
    if a % p == 0:
        raise ValueError("shift scale a must be nonzero")
    if len(set(bs)) != len(bs):
        raise ValueError("shift offsets must be pairwise distinct")
    if any(e < 0 for e in es):
        raise ValueError("exponents must be nonnegative")
    if not any(es):
        raise ValueError("exponent vector must be nonzero")
    acc = constant(1, p)
    for b, e in zip(bs, es):
        if e == 0:
            continue
        lin = poly((b, a), p)
        comp = poly((), p)
        for c in reversed(P.coeffs):
            comp = comp * lin + constant(c, p)
        acc = acc * comp**e
    return acc


@dataclass(frozen=True)
class IndependenceResult:
    independent: bool
    witness: tuple[int, ...] | None

    def __bool__(self) -> bool:
        return self.independent


def multiplicatively_independent(Ps) -> IndependenceResult:
    """Decide whether no nonzero integer vector e makes prod P_i^{e_i} constant.

    Works on the exponent matrix over the union of monic irreducible
    factors: a rational kernel vector scales to an integer one, and
    raising the resulting constant to the power p-1 turns it into exactly
    1, so rational rank decides the question.  The witness is primitive
    with positive first nonzero entry.
    """
    Ps = list(Ps)
    if not Ps:
        raise ValueError("need at least one polynomial")
    for P in Ps:
        if P.is_zero:
            raise ValueError("zero polynomials are excluded")
        if P.degree < 1:
            raise ValueError("constant polynomials are excluded from the independence test")
    facs = [factor(P) for P in Ps]
    support = sorted(
        {(f.degree, f.coeffs) for fac in facs for f, _ in fac.factors}
    )
    col = {key: i for i, key in enumerate(support)}
    k = len(Ps)
    rows = [[Fraction(0)] * len(support) for _ in range(k)]
    for i, fac in enumerate(facs):
        for f, e in fac.factors:
            rows[i][col[(f.degree, f.coeffs)]] = Fraction(e)
    trans = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    pivots: list[tuple[int, int]] = []
    for i in range(k):
        for pr, pc in pivots:
            if rows[i][pc]:
                f = rows[i][pc] / rows[pr][pc]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[pr])]
                trans[i] = [x - f * y for x, y in zip(trans[i], trans[pr])]
        lead = next((j for j, x in enumerate(rows[i]) if x), None)
        if lead is None:
            return IndependenceResult(False, _primitive(trans[i]))
        pivots.append((i, lead))
    return IndependenceResult(True, None)


def _primitive(vec: list[Fraction]) -> tuple[int, ...]:
    denom = math.lcm(*[f.denominator for f in vec])
    ints = [int(f * denom) for f in vec]
    g = math.gcd(*ints)
    if g:
        ints = [v // g for v in ints]
    lead = next(v for v in ints if v)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)
