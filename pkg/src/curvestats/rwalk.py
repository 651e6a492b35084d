"""Random walk reference model on Z/mZ and exact small-parameter enumerations.

The walk takes steps F(v) - F(v') where v, v' are independent uniform
draws from the ell-th roots of unity and F(v) = 1 + v + ... + v^(ell-1),
so F equals ell at v = 1 and 0 elsewhere.  Z_x is the partial sum after
x steps and Phi(L; m, a) the fraction of x <= L with Z_x = a (mod m).

Besides Monte Carlo simulation of Phi, the module enumerates three
variance-style double sums over all pairs of step sequences exactly (for
parameters small enough to enumerate) and checks them against explicit
bounds, and it builds the block model used to calibrate curve scans: a
trial is N independent length-L walks, each started at a uniform residue,
and the aggregated visit histogram yields a discrepancy sample.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import HypothesisError

__all__ = [
    "WalkConfig",
    "SimulationResult",
    "EnumResult",
    "ModelSummary",
    "trial_rng",
    "walk_draws",
    "walk_steps",
    "simulate_phi",
    "exact_prop21a",
    "exact_prop21b",
    "exact_prop21c",
    "model_reference",
    "model_reference_bernoulli",
    "model_reference_joint",
]

_MASK64 = (1 << 64) - 1

# enumeration guard: pair spaces larger than this are refused
FEASIBLE_LIMIT = 1 << 20

# block-model DP guard on the number of (position, visit-vector) states
_STATE_LIMIT = 1 << 18


@dataclass(frozen=True)
class WalkConfig:
    """Parameters of a simulated walk: step order ell, modulus m, length L."""

    ell: int
    m: int
    L: int
    trials: int
    seed: int

    def validate(self):
        if self.ell < 2:
            raise ValueError("ell must be at least 2")
        if self.m < 1:
            raise ValueError("modulus must be positive")
        if self.L < 1:
            raise ValueError("walk length must be positive")
        if self.trials < 1:
            raise ValueError("need at least one trial")


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Counter-based per-trial stream: Philox keyed by (seed, trial).

    Philox is a keyed counter-mode bijection, so streams for distinct
    trials never overlap and results cannot depend on which thread runs
    which trial.
    """
    key = np.array([seed & _MASK64, trial & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def walk_draws(cfg: WalkConfig, trial: int) -> tuple[np.ndarray, np.ndarray]:
    """The raw root-of-unity indices (v, v') for one trial, each length L."""
    rng = trial_rng(cfg.seed, trial)
    v = rng.integers(0, cfg.ell, size=cfg.L)
    w = rng.integers(0, cfg.ell, size=cfg.L)
    return v, w


def walk_steps(cfg: WalkConfig, trial: int) -> np.ndarray:
    """Step values F(v) - F(v') for one trial; F = ell at index 0, else 0."""
    v, w = walk_draws(cfg, trial)
    return cfg.ell * ((v == 0).astype(np.int64) - (w == 0).astype(np.int64))


@dataclass
class SimulationResult:
    """Per-trial occupation frequencies Phi(L; m, a) and their trial statistics."""

    phis: np.ndarray  # (trials, m)
    mean: np.ndarray  # (m,)
    stderr: np.ndarray  # (m,) standard error of the mean over trials


def simulate_phi(cfg: WalkConfig, threads: int = 1) -> SimulationResult:
    cfg.validate()
    phis = np.empty((cfg.trials, cfg.m), dtype=np.float64)

    def one(t: int):
        z = np.cumsum(walk_steps(cfg, t)) % cfg.m
        phis[t] = np.bincount(z, minlength=cfg.m) / cfg.L

    if threads <= 1:
        for t in range(cfg.trials):
            one(t)
    else:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            list(ex.map(one, range(cfg.trials)))
    mean = phis.mean(axis=0)
    if cfg.trials > 1:
        stderr = phis.std(axis=0, ddof=1) / math.sqrt(cfg.trials)
    else:
        stderr = np.zeros(cfg.m)
    return SimulationResult(phis=phis, mean=mean, stderr=stderr)


# ---------------------------------------------------------------- enumerations


@dataclass(frozen=True)
class EnumResult:
    lhs: float
    bound: float
    passed: bool

    @classmethod
    def compare(cls, lhs: float, bound: float) -> "EnumResult":
        return cls(lhs=lhs, bound=bound, passed=lhs <= bound * (1 + 1e-6))


def _inner_table(m: int) -> np.ndarray:
    """T[z] = sum over t in [1, m-1] of exp(2 pi i t z / m)."""
    z = np.arange(m)
    t = np.arange(1, m)
    return np.exp(2j * np.pi * np.outer(z, t) / m).sum(axis=1)


def _prefix_sums(digits: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Map digit matrix (V, L) through a value table and prefix-sum rows."""
    return values[digits].cumsum(axis=1)


def _digit_matrix(base: int, L: int) -> np.ndarray:
    V = base**L
    seq = np.arange(V)
    return (seq[:, None] // base ** np.arange(L)[None, :]) % base


def _pair_sum(cum: np.ndarray, m: int) -> float:
    """Sum over ordered sequence pairs and all a of |sum_x T[(D_x - a) mod m]|^2."""
    if m == 1:
        return 0.0
    V, L = cum.shape
    T = _inner_table(m)
    lhs = 0.0
    chunk = max(1, (1 << 22) // max(1, V * L))
    for i0 in range(0, V, chunk):
        D = cum[i0 : i0 + chunk, None, :] - cum[None, :, :]
        for a in range(m):
            S = T[(D - a) % m].sum(axis=2)
            lhs += float((S.real**2 + S.imag**2).sum())
    return lhs


def exact_prop21a(ell: int, m: int, L: int) -> EnumResult:
    """Variance sum over all pairs of length-L root sequences, power-sum steps."""
    if ell < 2 or m < 1 or L < 1:
        raise ValueError("need ell >= 2, m >= 1, L >= 1")
    if math.gcd(ell, m) != 1:
        raise HypothesisError("gcd_m_ell", f"gcd({ell}, {m}) != 1")
    if ell ** (2 * L) > FEASIBLE_LIMIT:
        raise ValueError(f"enumeration of {ell}^(2*{L}) pairs exceeds the feasibility guard")
    digits = _digit_matrix(ell, L)
    fvals = np.zeros(ell, dtype=np.int64)
    fvals[0] = ell  # F = ell at the root 1, 0 at every other root
    cum = _prefix_sums(digits, fvals)
    lhs = _pair_sum(cum, m)
    bound = float(7 * m**4 * L * ell ** (2 * L + 2))
    return EnumResult.compare(lhs, bound)


def exact_prop21c(m: int, L: int) -> EnumResult:
    """Same variance sum with 0/1 step sequences and the bits themselves as steps."""
    if m < 1 or L < 1:
        raise ValueError("need m >= 1, L >= 1")
    if 2 ** (2 * L) > FEASIBLE_LIMIT:
        raise ValueError(f"enumeration of 2^(2*{L}) pairs exceeds the feasibility guard")
    digits = _digit_matrix(2, L)
    cum = digits.cumsum(axis=1)
    lhs = _pair_sum(cum, m)
    bound = float(2 ** (2 * L + 2) * m**4 * L)
    return EnumResult.compare(lhs, bound)


def exact_prop21b(ell: int, m: int, L: int, k: int) -> EnumResult:
    """k-walk version: pairs per walk, phases summed over nonzero t vectors."""
    if ell < 2 or m < 1 or L < 1 or k < 1:
        raise ValueError("need ell >= 2, m >= 1, L >= 1, k >= 1")
    if math.gcd(ell, m) != 1:
        raise HypothesisError("gcd_m_ell", f"gcd({ell}, {m}) != 1")
    if ell ** (2 * L * k) > FEASIBLE_LIMIT:
        raise ValueError(f"enumeration of {ell}^(2*{L}*{k}) pair tuples exceeds the feasibility guard")
    bound = float(7 * m ** (2 * k + 2) * L * ell ** (2 * L * k + 2))
    if m == 1:
        return EnumResult.compare(0.0, bound)
    digits = _digit_matrix(ell, L)
    fvals = np.zeros(ell, dtype=np.int64)
    fvals[0] = ell
    cum = _prefix_sums(digits, fvals)
    V = cum.shape[0]
    diffs = (cum[:, None, :] - cum[None, :, :]).reshape(V * V, L)  # one walk's pair space
    npairs = V * V
    total = npairs**k
    em = np.exp(2j * np.pi * np.arange(m) / m)
    lhs = 0.0
    chunk = max(1, (1 << 20) // max(1, L * k))
    for c0 in range(0, total, chunk):
        comb = np.arange(c0, min(c0 + chunk, total))
        Z = np.stack(
            [diffs[(comb // npairs**l) % npairs] for l in range(k)], axis=1
        )  # (chunk, k, L)
        for avec in itertools.product(range(m), repeat=k):
            acc = np.zeros(len(comb), dtype=np.complex128)
            for tvec in itertools.product(range(m), repeat=k):
                if not any(tvec):
                    continue
                phase = np.zeros(Z.shape[::2], dtype=np.int64)  # (chunk, L)
                for l in range(k):
                    phase += tvec[l] * (Z[:, l, :] - avec[l])
                acc += em[phase % m].sum(axis=1)
            lhs += float((acc.real**2 + acc.imag**2).sum())
    return EnumResult.compare(lhs, bound)


# ---------------------------------------------------------------- block model


@dataclass
class ModelSummary:
    """Empirical discrepancy distribution of the block model."""

    q50: float
    q95: float
    q99: float
    discrepancies: np.ndarray
    blocks: int
    trials: int


def _block_type_distribution(steps, m: int, k: int, L: int):
    """Exact distribution of a block's visit histogram over (Z/mZ)^k.

    A block walks L steps from a uniformly random start in (Z/mZ)^k; the
    distribution over visit-count vectors is computed by dynamic
    programming over (position, counts) states, then averaged over the
    uniform start by rotating the histogram.  Returns a type matrix
    (T, m^k) and exact-turned-float probabilities (T,).
    """
    mk = m**k
    if mk > 4096:
        raise ValueError("joint cell space too large for the block model")

    def encode(vec):
        code = 0
        for i in reversed(range(k)):
            code = code * m + vec[i]
        return code

    def decode(code):
        out = []
        for _ in range(k):
            out.append(code % m)
            code //= m
        return tuple(out)

    zero = tuple([0] * k)
    start_counts = tuple([0] * mk)
    states: dict[tuple, Fraction] = {(zero, start_counts): Fraction(1)}
    for _ in range(L):
        nxt: dict[tuple, Fraction] = {}
        for (z, c), pr in states.items():
            for sv, sp in steps:
                z2 = tuple((zi + si) % m for zi, si in zip(z, sv))
                cell = encode(z2)
                c2 = list(c)
                c2[cell] += 1
                key = (z2, tuple(c2))
                nxt[key] = nxt.get(key, Fraction(0)) + pr * sp
            if len(nxt) > _STATE_LIMIT:
                raise ValueError("block model state space exceeds the feasibility guard")
        states = nxt

    # rotate by a uniform start: a visit at cell b becomes a visit at b + u
    shift_perm = {}
    for u_code in range(mk):
        u = decode(u_code)
        perm = [0] * mk
        for b_code in range(mk):
            b = decode(b_code)
            src = encode(tuple((bi - ui) % m for bi, ui in zip(b, u)))
            perm[b_code] = src
        shift_perm[u_code] = perm

    unif = Fraction(1, mk)
    agg: dict[tuple, Fraction] = {}
    for (_, c), pr in states.items():
        w = pr * unif
        for u_code in range(mk):
            perm = shift_perm[u_code]
            c2 = tuple(c[perm[b]] for b in range(mk))
            agg[c2] = agg.get(c2, Fraction(0)) + w

    types = np.array(sorted(agg.keys()), dtype=np.int64)
    probs = np.array([float(agg[tuple(row)]) for row in types], dtype=np.float64)
    return types, probs


def _model_core(steps, m, k, L, blocks, trials, seed, threads=1) -> ModelSummary:
    if blocks < 1 or trials < 1 or L < 1 or m < 1:
        raise ValueError("blocks, trials, L, m must all be positive")
    types, probs = _block_type_distribution(steps, m, k, L)
    probs = probs / probs.sum()
    discs = np.empty(trials, dtype=np.float64)
    denom = float(blocks * L)
    target = 1.0 / m**k

    def one(t: int):
        n = trial_rng(seed, t).multinomial(blocks, probs)
        hist = n @ types
        phi = hist / denom
        discs[t] = float(((phi - target) ** 2).sum())

    if threads <= 1:
        for t in range(trials):
            one(t)
    else:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            list(ex.map(one, range(trials)))
    q50, q95, q99 = np.quantile(discs, [0.5, 0.95, 0.99])
    return ModelSummary(
        q50=float(q50), q95=float(q95), q99=float(q99),
        discrepancies=discs, blocks=blocks, trials=trials,
    )


def _power_steps(ell: int, m: int, k: int):
    """Independent per-coordinate steps F(v) - F(v') reduced mod m."""
    q = Fraction(1, ell)
    pq = q * (1 - q)
    single = {}
    for value, pr in ((ell % m, pq), ((-ell) % m, pq), (0, 1 - 2 * pq)):
        single[value] = single.get(value, Fraction(0)) + pr
    single_items = sorted(single.items())
    steps = []
    for combo in itertools.product(single_items, repeat=k):
        vec = tuple(v for v, _ in combo)
        pr = math.prod([c[1] for c in combo], start=Fraction(1))
        steps.append((vec, pr))
    return steps


def model_reference(ell, m, L, blocks, trials, seed, threads: int = 1) -> ModelSummary:
    """Discrepancy distribution of N-block walks matching a curve scan."""
    if ell < 2:
        raise ValueError("ell must be at least 2")
    return _model_core(_power_steps(ell, m, 1), m, 1, L, blocks, trials, seed, threads)


def model_reference_joint(ell, m, L, k, blocks, trials, seed, threads: int = 1) -> ModelSummary:
    """Joint k-walk variant: independent coordinates, cells in (Z/mZ)^k."""
    if ell < 2 or k < 1:
        raise ValueError("need ell >= 2 and k >= 1")
    return _model_core(_power_steps(ell, m, k), m, k, L, blocks, trials, seed, threads)


def model_reference_bernoulli(alpha, m, L, blocks, trials, seed, threads: int = 1) -> ModelSummary:
    """Restricted-domain variant: steps v - v' with v, v' Bernoulli(alpha)."""
    a = Fraction(alpha)
    if not 0 <= a <= 1:
        raise ValueError("alpha must lie in [0, 1]")
    paq = a * (1 - a)
    single = {}
    for value, pr in ((1 % m, paq), ((-1) % m, paq), (0, 1 - 2 * paq)):
        single[value] = single.get(value, Fraction(0)) + pr
    steps = [((v,), pr) for v, pr in sorted(single.items())]
    return _model_core(steps, m, 1, L, blocks, trials, seed, threads)
