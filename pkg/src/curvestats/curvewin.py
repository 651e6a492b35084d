"""Sliding-window point statistics on curves y^ell = P(x) over F_p.

The fiber over x has size 1 when P(x) = 0, size d = gcd(ell, p-1) when
P(x) is a nonzero d-th power residue, and 0 otherwise.  N(x0, I) counts
curve points with x in the window (x0, x0+I]; scanning x0 over an
interval and reducing the counts mod m gives the occupation histogram
Phi whose squared deviation from uniform is the central statistic.
Windows never wrap around mod p.

Restricted variants count points inside a rectangle, where the
at-most-one-y condition makes the count a 0/1 sum over x; the module
also covers beta-quadratic residue scans, the Gauss lemma parity check,
the short-interval exceptional-window count, and experiment drivers that
check every hypothesis by name, evaluate the explicit variance bounds,
and calibrate against the random walk block model.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import HypothesisError
from .ffield import (
    Character,
    FieldSpec,
    char_index,
    char_index_table,
    char_indices,
    character,
    legendre,
    pow_mod_vec,
)
from .polyff import Poly, admissible, multiplicatively_independent, x_poly
from .rwalk import (
    ModelSummary,
    model_reference,
    model_reference_bernoulli,
    model_reference_joint,
)

__all__ = [
    "Curve",
    "curve",
    "ScanSpec",
    "Rect",
    "Histogram",
    "JointHistogram",
    "HypothesisCheck",
    "ExperimentReport",
    "fiber_count",
    "fiber_array",
    "window_counts",
    "window_counts_direct",
    "residue_histogram",
    "discrepancy",
    "joint_histogram",
    "condition_star",
    "condition_star_witness",
    "delta_array",
    "restricted_window_counts",
    "BetaScan",
    "beta_residue_scan",
    "gauss_lemma_check",
    "cor4_exceptional",
    "experiment_thm1",
    "experiment_thm2",
    "experiment_thm3",
    "theorem_experiment",
]

_JOINT_CELL_LIMIT = 1 << 20


@dataclass(frozen=True)
class Curve:
    """The curve y^ell = P(x), with the order-ell character of its field."""

    ell: int
    P: Poly
    chi: Character

    @property
    def field(self) -> FieldSpec:
        return self.chi.field

    @property
    def p(self) -> int:
        return self.chi.field.p


def curve(fs: FieldSpec, ell: int, P: Poly) -> Curve:
    if ell < 2:
        raise ValueError("ell must be at least 2")
    if P.p != fs.p:
        raise ValueError("polynomial modulus does not match the field")
    if P.degree < 1:
        raise ValueError("curve polynomial must be nonconstant")
    return Curve(ell=ell, P=P, chi=character(fs, ell))


@dataclass(frozen=True)
class ScanSpec:
    """Scan geometry: x0 runs over [x_start, x_start + scan_len).

    window_len is the window length I (window (x0, x0+I]); block_len is
    the block length L used by theorem experiments and the walk model.
    """

    x_start: int
    scan_len: int
    window_len: int
    block_len: int | None = None

    def validate(self, p: int):
        if self.x_start < 0 or self.scan_len < 1 or self.window_len < 0:
            raise ValueError("scan start, length, and window length must be nonnegative (scan_len >= 1)")
        if self.x_start + self.scan_len + self.window_len > p:
            raise HypothesisError(
                "no_wraparound",
                f"x_start + scan_len + window_len = "
                f"{self.x_start + self.scan_len + self.window_len} exceeds p = {p}",
            )

    @classmethod
    def full(cls, p: int, window_len: int, block_len: int | None = None) -> "ScanSpec":
        """The widest admissible scan from 0, leaving window and block headroom."""
        margin = window_len + (block_len or 0)
        return cls(x_start=0, scan_len=p - margin, window_len=window_len, block_len=block_len)


@dataclass(frozen=True)
class Rect:
    """Rectangle [x_lo, x_hi] x [y_lo, y_hi], all bounds inclusive."""

    x_lo: int
    x_hi: int
    y_lo: int
    y_hi: int

    def validate(self, p: int):
        if not (0 <= self.x_lo <= self.x_hi <= p - 1):
            raise ValueError("x interval must be nonempty inside [0, p-1]")
        if not (0 <= self.y_lo <= self.y_hi <= p - 1):
            raise ValueError("y interval must be nonempty inside [0, p-1]")

    @property
    def x_size(self) -> int:
        return self.x_hi - self.x_lo + 1

    @property
    def y_size(self) -> int:
        return self.y_hi - self.y_lo + 1


@dataclass(frozen=True)
class Histogram:
    """Exact residue-class tallies mod m."""

    m: int
    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def phi(self, a: int) -> Fraction:
        if self.total == 0:
            raise ValueError("empty histogram has no proportions")
        return Fraction(self.counts[a % self.m], self.total)

    def merge(self, other: "Histogram") -> "Histogram":
        if self.m != other.m:
            raise ValueError("cannot merge histograms with different moduli")
        return Histogram(self.m, tuple(a + b for a, b in zip(self.counts, other.counts)))


def residue_histogram(counts: np.ndarray, m: int) -> Histogram:
    """Histogram of the values mod m."""
    if m < 1:
        raise ValueError("modulus must be positive")
    values = np.asarray(counts)
    if values.size == 0:
        return Histogram(m, (0,) * m)
    tall = np.bincount(np.mod(values, m).astype(np.int64), minlength=m)
    return Histogram(m, tuple(int(c) for c in tall))


def discrepancy(hist: Histogram) -> Fraction:
    """Exact squared deviation from uniform, sum_a (phi(a) - 1/m)^2."""
    if hist.total == 0:
        raise ValueError("discrepancy of an empty histogram is undefined")
    unif = Fraction(1, hist.m)
    return sum(((Fraction(c, hist.total) - unif) ** 2 for c in hist.counts), Fraction(0))


@dataclass(frozen=True)
class JointHistogram:
    """Dense tallies over residue vectors in (Z/mZ)^k, cell code sum a_i m^i."""

    m: int
    k: int
    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def cell(self, avec) -> int:
        return self.counts[self._code(avec)]

    def phi(self, avec) -> Fraction:
        return Fraction(self.cell(avec), self.total)

    def _code(self, avec) -> int:
        if len(avec) != self.k:
            raise ValueError("residue vector length must equal k")
        code = 0
        for a in reversed([a % self.m for a in avec]):
            code = code * self.m + a
        return code

    def discrepancy(self) -> Fraction:
        if self.total == 0:
            raise ValueError("discrepancy of an empty histogram is undefined")
        unif = Fraction(1, self.m**self.k)
        return sum(((Fraction(c, self.total) - unif) ** 2 for c in self.counts), Fraction(0))

    def as_dict(self) -> dict[tuple[int, ...], int]:
        out = {}
        for code, c in enumerate(self.counts):
            vec = []
            q = code
            for _ in range(self.k):
                vec.append(q % self.m)
                q //= self.m
            out[tuple(vec)] = c
        return out


# ---------------------------------------------------------------- fibers and windows


def fiber_count(C: Curve, x: int) -> int:
    """#{y in F_p : y^ell = P(x)}: 1 at roots of P, d at residues, else 0."""
    val = C.P(x)
    if val == 0:
        return 1
    return C.chi.d if char_index(C.chi, val) == 0 else 0


def fiber_array(C: Curve, lo: int, hi: int) -> np.ndarray:
    """Fiber sizes for x in [lo, hi] inclusive (empty when hi < lo)."""
    if hi < lo:
        return np.zeros(0, dtype=np.int64)
    xs = np.arange(lo, hi + 1, dtype=np.int64)
    vals = C.P.eval_vec(xs)
    idx = char_indices(C.chi, vals)
    out = np.where(idx == 0, C.chi.d, 0).astype(np.int64)
    out[vals == 0] = 1
    return out


def _counts_from_values(values: np.ndarray, scan_len: int, I: int) -> np.ndarray:
    """Window sums by the sliding update N(s+1) = N(s) - v[s] + v[s+I].

    values[j] holds the summand at x = x_start + 1 + j, for
    j in [0, scan_len - 1 + I).
    """
    out = np.empty(scan_len, dtype=np.int64)
    out[0] = int(values[:I].sum())
    if scan_len > 1:
        deltas = values[I : I + scan_len - 1] - values[: scan_len - 1]
        out[1:] = out[0] + np.cumsum(deltas)
    return out


def _scan_chunks(scan_len: int, threads: int) -> list[tuple[int, int]]:
    n = max(1, min(threads, scan_len))
    step = (scan_len + n - 1) // n
    return [(s, min(s + step, scan_len)) for s in range(0, scan_len, step)]


def _chunked_scan(values_for, spec: ScanSpec, threads: int) -> np.ndarray:
    """Run a window scan in contiguous chunks; each chunk recomputes its
    first window and slides thereafter, so the result is chunk-count
    independent."""
    I = spec.window_len
    if threads <= 1:
        vals = values_for(spec.x_start + 1, spec.x_start + spec.scan_len - 1 + I)
        return _counts_from_values(vals, spec.scan_len, I)
    chunks = _scan_chunks(spec.scan_len, threads)
    parts: list[np.ndarray | None] = [None] * len(chunks)

    def one(i: int):
        s0, s1 = chunks[i]
        lo = spec.x_start + s0 + 1
        hi = spec.x_start + s1 - 1 + I
        parts[i] = _counts_from_values(values_for(lo, hi), s1 - s0, I)

    with ThreadPoolExecutor(max_workers=threads) as ex:
        list(ex.map(one, range(len(chunks))))
    return np.concatenate(parts)


def window_counts(C: Curve, spec: ScanSpec, threads: int = 1) -> np.ndarray:
    """N(x0, I) for x0 in [x_start, x_start + scan_len)."""
    spec.validate(C.p)
    return _chunked_scan(lambda lo, hi: fiber_array(C, lo, hi), spec, threads)


def window_counts_direct(C: Curve, spec: ScanSpec) -> np.ndarray:
    """Independent per-window summation; oracle for the sliding scan."""
    spec.validate(C.p)
    I = spec.window_len
    fib = fiber_array(C, spec.x_start + 1, spec.x_start + spec.scan_len - 1 + I)
    return np.array(
        [int(fib[s : s + I].sum()) for s in range(spec.scan_len)], dtype=np.int64
    )


def joint_histogram(Cs, spec: ScanSpec, m: int, threads: int = 1) -> JointHistogram:
    """Joint residue tallies of the per-curve window counts at a common x0."""
    Cs = list(Cs)
    if not Cs:
        raise ValueError("need at least one curve")
    if m < 1:
        raise ValueError("modulus must be positive")
    k = len(Cs)
    if len({C.p for C in Cs}) != 1 or len({C.ell for C in Cs}) != 1:
        raise ValueError("curves must share one field and one ell")
    if m**k > _JOINT_CELL_LIMIT:
        raise ValueError("joint cell space m^k is too large")
    code = np.zeros(spec.scan_len, dtype=np.int64)
    weight = 1
    for C in Cs:
        counts = window_counts(C, spec, threads=threads)
        code += np.mod(counts, m) * weight
        weight *= m
    tall = np.bincount(code, minlength=m**k)
    return JointHistogram(m=m, k=k, counts=tuple(int(c) for c in tall))


# ---------------------------------------------------------------- restricted rectangles


def _power_multiset(C: Curve, rect: Rect) -> np.ndarray:
    """Multiplicity of each field element among {y^ell : y in [y_lo, y_hi]}."""
    p = C.p
    if p > (1 << 27):
        raise ValueError("restricted scans limited to p <= 2^27 (multiset index memory)")
    ys = np.arange(rect.y_lo, rect.y_hi + 1, dtype=np.int64)
    vals = pow_mod_vec(ys, C.ell, p)
    return np.bincount(vals, minlength=p)


def condition_star_witness(C: Curve, rect: Rect) -> int | None:
    """Smallest x in the rectangle's x-interval with two or more curve
    points (x, y), y in the y-interval; None when the condition holds."""
    rect.validate(C.p)
    mult = _power_multiset(C, rect)
    xs = np.arange(rect.x_lo, rect.x_hi + 1, dtype=np.int64)
    vals = C.P.eval_vec(xs)
    bad = np.nonzero(mult[vals] >= 2)[0]
    if bad.size:
        return int(xs[bad[0]])
    return None


def condition_star(C: Curve, rect: Rect) -> bool:
    """True iff every x in the x-interval has at most one y in the
    y-interval with (x, y) on the curve."""
    return condition_star_witness(C, rect) is None


def _delta_values(C: Curve, rect: Rect, mult: np.ndarray, lo: int, hi: int) -> np.ndarray:
    """delta(x) over [lo, hi]: 1 iff x lies in the x-interval and some y
    in the y-interval has (x, y) on the curve."""
    out = np.zeros(max(0, hi - lo + 1), dtype=np.int64)
    a, b = max(lo, rect.x_lo), min(hi, rect.x_hi)
    if a > b:
        return out
    xs = np.arange(a, b + 1, dtype=np.int64)
    vals = C.P.eval_vec(xs)
    out[a - lo : b - lo + 1] = mult[vals] >= 1
    return out


def delta_array(C: Curve, rect: Rect) -> np.ndarray:
    """The 0/1 membership indicator over the rectangle's x-interval."""
    rect.validate(C.p)
    mult = _power_multiset(C, rect)
    return _delta_values(C, rect, mult, rect.x_lo, rect.x_hi)


def restricted_window_counts(C: Curve, rect: Rect, spec: ScanSpec, threads: int = 1) -> np.ndarray:
    """Rectangle-restricted window counts; requires the at-most-one-y condition."""
    spec.validate(C.p)
    rect.validate(C.p)
    w = condition_star_witness(C, rect)
    if w is not None:
        raise HypothesisError("condition_star", f"x = {w} has more than one y in the rectangle")
    mult = _power_multiset(C, rect)
    return _chunked_scan(lambda lo, hi: _delta_values(C, rect, mult, lo, hi), spec, threads)


@dataclass
class BetaScan:
    """Residue/nonresidue window counts for the beta-quadratic residue scan."""

    beta: Fraction
    y_max: int
    r_counts: np.ndarray
    n_counts: np.ndarray
    r_hist: Histogram | None
    n_hist: Histogram | None


def beta_residue_scan(fs: FieldSpec, beta, spec: ScanSpec, m: int | None = None) -> BetaScan:
    """Counts of beta-quadratic residues R and nonresidues N = I - R per window.

    x is a beta-quadratic residue when x = y^2 mod p for some
    y in [1, floor(beta p)]; realized as a rectangle-restricted scan on
    y^2 = x, where beta <= 1/2 makes the at-most-one-y condition automatic.
    """
    beta = Fraction(beta)
    if not 0 < beta <= Fraction(1, 2):
        raise ValueError("beta must lie in (0, 1/2]")
    y_max = (beta.numerator * fs.p) // beta.denominator
    if y_max < 1:
        raise ValueError("beta * p must be at least 1")
    C = curve(fs, 2, x_poly(fs.p))
    rect = Rect(x_lo=0, x_hi=fs.p - 1, y_lo=1, y_hi=y_max)
    r = restricted_window_counts(C, rect, spec)
    n = spec.window_len - r
    r_hist = residue_histogram(r, m) if m is not None else None
    n_hist = residue_histogram(n, m) if m is not None else None
    return BetaScan(beta=beta, y_max=y_max, r_counts=r, n_counts=n, r_hist=r_hist, n_hist=n_hist)


# ---------------------------------------------------------------- parity and gaps


def gauss_lemma_check(a: int, p: int) -> tuple[int, bool]:
    """Gauss lemma: r = #{x <= (p-1)/2 : ax mod p > p/2}; (-1)^r = (a|p)."""
    if math.gcd(a, p) != 1:
        raise ValueError("a must be coprime to p")
    xs = np.arange(1, (p - 1) // 2 + 1, dtype=np.int64)
    vals = (a % p) * xs % p
    r = int((vals > p // 2).sum())
    ok = (-1) ** r == legendre(a, p)
    return r, ok


def cor4_exceptional(fs: FieldSpec, ell: int, L_window: int, mu: int) -> int:
    """#{x0 in [0, p-1-L] : no x in [x0, x0+L) has character index mu}."""
    p = fs.p
    if ell < 2:
        raise ValueError("ell must be at least 2")
    if (p - 1) % ell != 0:
        raise HypothesisError("p_equiv_1_mod_ell", f"p = {p}, ell = {ell}")
    if not 1 <= L_window <= p:
        raise ValueError("window length must lie in [1, p]")
    chi = character(fs, ell)
    if not 0 <= mu < chi.d:
        raise ValueError("mu must be a unity index in [0, d)")
    hi = p - 2  # windows [x0, x0+L) with x0 <= p-1-L never reach p-1
    if p <= 1 << 24:
        idx = char_index_table(chi)[: hi + 1]
    else:
        idx = char_indices(chi, np.arange(hi + 1, dtype=np.int64))
    hit = (idx == mu).astype(np.int64)
    S = np.concatenate([[0], np.cumsum(hit)])
    n_pos = p - L_window  # x0 in [0, p-1-L]
    window_hits = S[L_window : L_window + n_pos] - S[:n_pos]
    return int((window_hits == 0).sum())


# ---------------------------------------------------------------- experiments


@dataclass
class HypothesisCheck:
    name: str
    passed: bool
    detail: str = ""
    fatal: bool = True


@dataclass
class ExperimentReport:
    kind: str
    params: dict
    hypotheses: list[HypothesisCheck]
    histogram: Histogram | None
    joint: JointHistogram | None
    discrepancy: Fraction
    bound: float
    bound_pass: bool
    model: ModelSummary | None
    model_pass: bool | None


def _enforce(checks):
    for c in checks:
        if c.fatal and not c.passed:
            raise HypothesisError(c.name, c.detail)


def _geometry_checks(p: int, spec: ScanSpec) -> tuple[int, list[HypothesisCheck]]:
    if spec.block_len is None:
        raise ValueError("theorem experiments need a block length in the scan spec")
    L = spec.block_len
    I = spec.window_len
    checks = [
        HypothesisCheck(
            "window_len_range",
            p - L > I > L,
            f"need p - L > I > L, have p = {p}, I = {I}, L = {L}",
        ),
        HypothesisCheck(
            "no_wraparound",
            spec.x_start + spec.scan_len + I <= p,
            f"scan reaches x = {spec.x_start + spec.scan_len + I - 1}, p = {p}",
        ),
    ]
    if L < 1:
        raise ValueError("block length must be positive")
    return L, checks


def _interval_size_check(name: str, size: int, p: int) -> HypothesisCheck:
    eps = math.log(size) / math.log(p) - 0.5 if size > 1 else -0.5
    return HypothesisCheck(
        name,
        size > math.isqrt(p),
        f"size = {size}, p^0.5 = {math.isqrt(p)}, epsilon = {eps:.4f}",
    )


def _regime_check(name: str, L: int, p: int, d: int) -> HypothesisCheck:
    # asymptotic block-length regime; informative, never aborts a desk-scale run
    limit = math.log(p) / (2 * math.log(4 * d))
    return HypothesisCheck(
        name, L < limit, f"L = {L}, log p / (2 log 4d) = {limit:.3f}", fatal=False
    )


def experiment_thm1(
    C: Curve,
    spec: ScanSpec,
    m: int,
    trials: int,
    seed: int,
    blocks: int | None = None,
    threads: int = 1,
) -> ExperimentReport:
    """Full-height window scan: discrepancy vs 7 m^3 ell^2 / L and the block model."""
    if m < 1:
        raise ValueError("modulus must be positive")
    p, ell = C.p, C.ell
    L, checks = _geometry_checks(p, spec)
    checks = [
        HypothesisCheck("p_equiv_1_mod_ell", p % ell == 1, f"p = {p}, ell = {ell}"),
        HypothesisCheck("P_nonconstant", C.P.degree >= 1, f"deg = {C.P.degree}"),
        HypothesisCheck("P_admissible", admissible(C.P, ell), str(C.P)),
        HypothesisCheck("gcd_m_ell", math.gcd(m, ell) == 1, f"gcd({m}, {ell}) != 1"),
        *checks,
        _interval_size_check("scan_interval_size", spec.scan_len, p),
        _regime_check("block_len_regime", L, p, C.P.degree),
    ]
    _enforce(checks)
    counts = window_counts(C, spec, threads=threads)
    hist = residue_histogram(counts, m)
    disc = discrepancy(hist)
    bound = 7 * m**3 * ell**2 / L
    nblocks = blocks if blocks is not None else max(1, spec.scan_len // L - 1)
    model = model_reference(ell, m, L, blocks=nblocks, trials=trials, seed=seed, threads=threads)
    return ExperimentReport(
        kind="thm1",
        params={
            "p": p, "ell": ell, "m": m, "poly": list(C.P.coeffs),
            "x_start": spec.x_start, "scan_len": spec.scan_len,
            "window_len": spec.window_len, "block_len": L,
            "blocks": nblocks, "trials": trials, "seed": seed,
        },
        hypotheses=checks,
        histogram=hist,
        joint=None,
        discrepancy=disc,
        bound=bound,
        bound_pass=float(disc) <= bound,
        model=model,
        model_pass=float(disc) <= model.q99,
    )


def experiment_thm2(
    Cs,
    spec: ScanSpec,
    m: int,
    trials: int,
    seed: int,
    blocks: int | None = None,
    threads: int = 1,
) -> ExperimentReport:
    """Joint scan over several curves: discrepancy vs 7 m^(k+2) ell^2 / L."""
    Cs = list(Cs)
    if len(Cs) < 2:
        raise ValueError("joint experiment needs at least two curves")
    if m < 1:
        raise ValueError("modulus must be positive")
    p = Cs[0].p
    ell = Cs[0].ell
    k = len(Cs)
    L, geom = _geometry_checks(p, spec)
    indep = None
    common = len({C.p for C in Cs}) == 1 and len({C.ell for C in Cs}) == 1
    if common:
        indep = multiplicatively_independent([C.P for C in Cs])
    checks = [
        HypothesisCheck("curves_common_field_ell", common, "curves must share p and ell"),
        HypothesisCheck("p_equiv_1_mod_ell", p % ell == 1, f"p = {p}, ell = {ell}"),
        HypothesisCheck(
            "multiplicative_independence",
            bool(indep) if indep is not None else False,
            f"witness {indep.witness}" if indep is not None and not indep.independent else "",
        ),
        HypothesisCheck(
            "P_admissible",
            all(admissible(C.P, ell) for C in Cs),
            ", ".join(str(C.P) for C in Cs),
        ),
        HypothesisCheck("gcd_m_ell", math.gcd(m, ell) == 1, f"gcd({m}, {ell}) != 1"),
        *geom,
        _interval_size_check("scan_interval_size", spec.scan_len, p),
        _regime_check("block_len_regime", L, p, max(C.P.degree for C in Cs)),
    ]
    _enforce(checks)
    joint = joint_histogram(Cs, spec, m, threads=threads)
    disc = joint.discrepancy()
    bound = 7 * m ** (k + 2) * ell**2 / L
    nblocks = blocks if blocks is not None else max(1, spec.scan_len // L - 1)
    model = model_pass = None
    try:
        model = model_reference_joint(
            ell, m, L, k, blocks=nblocks, trials=trials, seed=seed, threads=threads
        )
        model_pass = float(disc) <= model.q99
    except ValueError:
        pass  # cell or state space too large; bound comparison still reported
    return ExperimentReport(
        kind="thm2",
        params={
            "p": p, "ell": ell, "m": m, "k": k,
            "polys": [list(C.P.coeffs) for C in Cs],
            "x_start": spec.x_start, "scan_len": spec.scan_len,
            "window_len": spec.window_len, "block_len": L,
            "blocks": nblocks, "trials": trials, "seed": seed,
        },
        hypotheses=checks,
        histogram=None,
        joint=joint,
        discrepancy=disc,
        bound=bound,
        bound_pass=float(disc) <= bound,
        model=model,
        model_pass=model_pass,
    )


def experiment_thm3(
    C: Curve,
    rect: Rect,
    spec: ScanSpec,
    m: int,
    trials: int,
    seed: int,
    blocks: int | None = None,
    threads: int = 1,
) -> ExperimentReport:
    """Rectangle-restricted scan: discrepancy vs 4 m^4 / L, Bernoulli model."""
    if m < 1:
        raise ValueError("modulus must be positive")
    p, ell = C.p, C.ell
    rect.validate(p)
    L, geom = _geometry_checks(p, spec)
    witness = condition_star_witness(C, rect)
    alpha = Fraction(rect.y_size, p)
    limit = math.log(p) / (2 * math.log(math.log(p))) if p > 15 else float("inf")
    checks = [
        HypothesisCheck("p_equiv_1_mod_ell", p % ell == 1, f"p = {p}, ell = {ell}"),
        HypothesisCheck("P_nonconstant", C.P.degree >= 1, f"deg = {C.P.degree}"),
        HypothesisCheck("P_admissible", admissible(C.P, ell), str(C.P)),
        HypothesisCheck(
            "condition_star",
            witness is None,
            "" if witness is None else f"x = {witness} has more than one y in the rectangle",
        ),
        *geom,
        _interval_size_check("scan_interval_size", spec.scan_len, p),
        HypothesisCheck("y_interval_alpha", True, f"alpha = {float(alpha):.6f}", fatal=False),
        HypothesisCheck(
            "block_len_regime_thm3",
            L <= limit,
            f"L = {L}, log p / (2 log log p) = {limit:.3f}",
            fatal=False,
        ),
    ]
    _enforce(checks)
    counts = restricted_window_counts(C, rect, spec, threads=threads)
    hist = residue_histogram(counts, m)
    disc = discrepancy(hist)
    bound = 4 * m**4 / L
    nblocks = blocks if blocks is not None else max(1, spec.scan_len // L - 1)
    model = model_reference_bernoulli(
        alpha, m, L, blocks=nblocks, trials=trials, seed=seed, threads=threads
    )
    return ExperimentReport(
        kind="thm3",
        params={
            "p": p, "ell": ell, "m": m, "poly": list(C.P.coeffs),
            "x_lo": rect.x_lo, "x_hi": rect.x_hi,
            "y_lo": rect.y_lo, "y_hi": rect.y_hi,
            "alpha": float(alpha),
            "x_start": spec.x_start, "scan_len": spec.scan_len,
            "window_len": spec.window_len, "block_len": L,
            "blocks": nblocks, "trials": trials, "seed": seed,
        },
        hypotheses=checks,
        histogram=hist,
        joint=None,
        discrepancy=disc,
        bound=bound,
        bound_pass=float(disc) <= bound,
        model=model,
        model_pass=float(disc) <= model.q99,
    )


def theorem_experiment(kind: str, **kwargs) -> ExperimentReport:
    """Dispatch to the thm1/thm2/thm3 experiment driver."""
    drivers = {"thm1": experiment_thm1, "thm2": experiment_thm2, "thm3": experiment_thm3}
    if kind not in drivers:
        raise ValueError(f"unknown experiment kind '{kind}'")
    return drivers[kind](**kwargs)
