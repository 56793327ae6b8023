"""Closed-form discrepancy bounds and the probabilistic constant pipeline.

All logarithms are natural.  Leading-term evaluators (subsequence_extreme_bound,
halton_extreme_bound) deliberately exclude their lower-order terms and are
only meaningful asymptotically; see each docstring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

LOG2 = math.log(2.0)

# Constants of the probabilistic star-discrepancy bound and its published
# comparison value.
C_STAR = 2.4631832        # our bound's constant
C_PREVIOUS = 2.4968       # previously best published constant
PROB_EXP_COEFF = 1.6728349
PROB_EXP_OFFSET = 10.1495427
QUANTILE_COEFF = 0.7731673


# ---------------------------------------------------------------------------
# Elementary upper bounds
# ---------------------------------------------------------------------------

def vdc_star_bound(base: int, n: int) -> float:
    """Star-discrepancy bound for the base-b van der Corput prefix:
    1/N + (b+1)/(2N) + (b-1)/(2 log b) * log(N)/N."""
    if base < 2 or n < 1:
        raise ValueError("need base >= 2 and N >= 1")
    return (1.0 / n + (base + 1) / (2.0 * n)
            + (base - 1) / (2.0 * math.log(base)) * math.log(n) / n)


def subsequence_extreme_bound(p: int, n: int) -> float:
    """Leading term (p-1)/(2 log p) * log(N)/N of the extreme-discrepancy
    bound for scrambled subsequences; the O(1/N) term is excluded."""
    if n < 2:
        raise ValueError("need N >= 2")
    return (p - 1) / (2.0 * math.log(p)) * math.log(n) / n


def halton_extreme_bound(primes: Sequence[int], n: int) -> float:
    """Leading term log(N)^d / N * prod 2(p_i - 1)/log p_i of the
    extreme-discrepancy bound for scrambled Halton subsequences."""
    if n < 2:
        raise ValueError("need N >= 2")
    if len(set(primes)) != len(primes):
        raise ValueError("primes must be distinct")
    d = len(primes)
    prod = 1.0
    for p in primes:
        prod *= 2.0 * (p - 1) / math.log(p)
    return math.log(n) ** d / n * prod


def atanassov_star_bound(bases: Sequence[int], n: int, s: Optional[float] = None,
                         halved_even: bool = False) -> float:
    """Halton star-discrepancy bound

        ( 1/d! * prod_j (w_j log N / log b_j + s)
          + sum_{k=0}^{d-1} b_{k+1}/k! * prod_{j<=k} (w_j log N / log b_j + k) ) / N

    with digit weight w_j = floor(b_j / 2), or (b_j - 1)/2 when halved_even
    is set (the two differ only for b = 2; the halved variant is the one
    consistent with the published d=4 crossover threshold).  The additive
    constant s defaults to the dimension d.
    """
    if n < 2:
        raise ValueError("need N >= 2")
    d = len(bases)
    if s is None:
        s = float(d)
    logn = math.log(n)

    def weight(b: int) -> float:
        return (b - 1) / 2.0 if halved_even else float(b // 2)

    lead = 1.0 / math.factorial(d)
    for b in bases:
        lead *= weight(b) * logn / math.log(b) + s
    tail = 0.0
    for k in range(d):
        term = bases[k] / math.factorial(k)
        for j in range(k):
            term *= weight(bases[j]) * logn / math.log(bases[j]) + k
        tail += term
    return (lead + tail) / n


def bracketing_bound(d: int, eps: float) -> float:
    """Cardinality bound d^d/d! * (1/eps)^d for an eps-bracketing cover."""
    if d < 3:
        raise ValueError("bracketing bound requires d >= 3")
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    return d ** d / math.factorial(d) * (1.0 / eps) ** d


def stirling_cover_bound(mu: int, d: int) -> float:
    """Stirling relaxation sqrt(2/(pi d)) e^d 2^(mu d) of the 2^-mu cover size."""
    return math.sqrt(2.0 / (math.pi * d)) * math.exp(d) * 2.0 ** (mu * d)


# ---------------------------------------------------------------------------
# Constant pipeline
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoverParams:
    """Auxiliary constants of the probabilistic bound at cover level mu."""

    mu: int
    d: int
    sigma: float
    zeta: float
    tau_mu: float
    c_mu: float
    c0: float
    c1: float
    c: float
    bracket_ok: bool

    @property
    def mu_minus_sigma(self) -> float:
        return self.mu - self.sigma


def cover_constant_pipeline(mu: int, d: int) -> CoverParams:
    """Recompute every auxiliary constant from its defining formula.

    bracket_ok reports whether the bracketed factor of the probability
    bound stays below sqrt(pi d / 2) once c0 = sqrt((mu - sigma)/2), which
    is the condition that lets the leading exponential be dropped.
    """
    if mu < 2:
        raise ValueError("mu must be >= 2")
    if d < 5:
        raise ValueError("the pipeline is stated for d >= 5")
    sigma = mu - mu * LOG2 - 1.0 - LOG2 / d
    zeta = 1.0 + LOG2 + LOG2 / d
    ms = mu - sigma
    tau_mu = LOG2 / ms + 0.02120108
    c_mu = 1.0 / (1.0 - math.sqrt((mu + 1.0) / (2.0 * mu)))
    c0 = math.sqrt(ms / 2.0)
    c1 = math.sqrt(4.0 * tau_mu * (1.0 + 1.0 / (3.0 * c_mu)))
    c = c0 * (1.0 + c1 * c_mu * math.sqrt(mu / 2.0 ** mu))
    numer = math.exp(-((ms * (mu * tau_mu - 1.0) + (1.0 - LOG2) * mu - zeta - sigma)) * d)
    denom = 1.0 - math.exp(-(ms * tau_mu - LOG2) * d)
    bracket = 1.0 + numer / denom
    bracket_ok = bracket <= math.sqrt(math.pi * d / 2.0)
    return CoverParams(mu, d, sigma, zeta, tau_mu, c_mu, c0, c1, c, bracket_ok)


def probability_forms(c: float, d: int, q: float) -> tuple[float, float]:
    """(probability lower bound for constant c, quantile constant for level q):

    1 - exp(-(1.6728349 c^2 - 10.1495427) d)   and
    0.7731673 * sqrt(10.1495427 + log(1/(1-q)) / d).
    """
    if d < 5:
        raise ValueError("stated for d >= 5")
    if not 0 < q < 1:
        raise ValueError("q must lie in (0, 1)")
    prob = 1.0 - math.exp(-(PROB_EXP_COEFF * c * c - PROB_EXP_OFFSET) * d)
    quant = QUANTILE_COEFF * math.sqrt(PROB_EXP_OFFSET + math.log(1.0 / (1.0 - q)) / d)
    return prob, quant


def sqrt_bound(c: float, d: int, n: int) -> float:
    """c * sqrt(d / N)."""
    if n < 1:
        raise ValueError("need N >= 1")
    return c * math.sqrt(d / float(n))


def inverse_point_count(c: float, d: int, eps: float) -> int:
    """floor(c^2 d eps^-2): points sufficing for star-discrepancy <= eps."""
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    return math.floor(c * c * d / (eps * eps))


# ---------------------------------------------------------------------------
# Explicit small-dimension bounds and crossover thresholds
# ---------------------------------------------------------------------------

def d2_proof_bound(n: int) -> float:
    """Base-2 Hammersley bound 7/(2N) + log(N)/(2 log 2 N) used for d=2."""
    if n < 1:
        raise ValueError("need N >= 1")
    return 7.0 / (2.0 * n) + 1.0 / (2.0 * LOG2) * math.log(n) / n


def d3_proof_bound(n: int) -> float:
    """Base-(2,3) Hammersley bound
    3/N + (log N/(2 log 2) + 3/2)(log N/log 3 + 2)/N used for d=3."""
    if n < 1:
        raise ValueError("need N >= 1")
    logn = math.log(n)
    return (3.0 + (logn / (2.0 * LOG2) + 1.5) * (logn / math.log(3.0) + 2.0)) / n


def lifted_atanassov_bound(bases: Sequence[int], n: int, s: Optional[float] = None,
                           halved_even: bool = False) -> float:
    """Hammersley bound from the sequence bound: atanassov(N) + 1/N."""
    return atanassov_star_bound(bases, n, s=s, halved_even=halved_even) + 1.0 / n


def proof_bound(d: int, s: Optional[float] = None,
                halved_even: bool = False) -> Callable[[int], float]:
    """The explicit bound used in the small-dimension cases of the proof."""
    if d == 2:
        return d2_proof_bound
    if d == 3:
        return d3_proof_bound
    if d >= 4:
        primes = _first_primes(d - 1)
        return lambda n: lifted_atanassov_bound(primes, n, s=s, halved_even=halved_even)
    raise ValueError("proof bounds start at d = 2")


def _first_primes(k: int) -> tuple[int, ...]:
    out: list[int] = []
    cand = 2
    while len(out) < k:
        if all(cand % p for p in out):
            out.append(cand)
        cand += 1
    return tuple(out)


def crossover_threshold(d: int, bound: Callable[[int], float], c: float,
                        n_cap: int = 10 ** 9, samples: int = 1000) -> int:
    """Smallest N* with bound(N*) >= c sqrt(d/N*) and bound(N) < c sqrt(d/N)
    on a geometric grid of `samples` points over (N*, 10 N*].

    The bound/target ratio is also checked to be decreasing over that grid.
    Raises if no crossover is found below n_cap.
    """
    def ratio(n: int) -> float:
        try:
            return bound(n) / sqrt_bound(c, d, n)
        except ValueError:
            return math.inf  # bound undefined at tiny N: treat as above target

    if ratio(1) < 1.0:
        hi = 1
    else:
        hi = 2
        while ratio(hi) >= 1.0:
            hi *= 2
            if hi > n_cap:
                raise ValueError(f"no crossover below {n_cap}")
        lo = hi // 2  # ratio(lo) >= 1 > ratio(hi)
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if ratio(mid) >= 1.0:
                lo = mid
            else:
                hi = mid
    n_star = max(hi - 1, 1)
    if n_star > 1 and ratio(n_star) < 1.0:
        raise ValueError("bound is not above the target at the candidate threshold")
    prev = math.inf
    for i in range(1, samples + 1):
        n = max(n_star + 1, int(round(n_star * 10.0 ** (i / samples))))
        r = ratio(n)
        if r >= 1.0:
            raise ValueError(f"bound re-crosses the target at N={n}")
        if r > prev + 1e-12:
            raise ValueError(f"bound/target ratio not decreasing at N={n}")
        prev = r
    return n_star


# ---------------------------------------------------------------------------
# Jump planner
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JumpPlan:
    """Skip-ahead plan from the star-discrepancy triangle inequality
    D_{N1} <= D_{N0}/alpha + (alpha-1)/alpha with N1 = floor(alpha N0)."""

    n0: int
    n1: int
    d0: float
    budget: float
    alpha: float
    mode: str  # sequence | pointset
    valid: bool


def jump_plan(n0: int, d0: float, d: int, c: float, mode: str = "sequence") -> JumpPlan:
    """Largest N1 reachable from a known D*_{N0} = d0 without re-checking
    the bound c sqrt(d/N0) in between.

    budget b = c sqrt(d/N0) - d0; alpha = 1/(1-b) for sequences, and
    (1 - 1/N0)/(1 - b) for point sets (which pay an extra 1/N1).  The
    validity flag re-evaluates the triangle inequality at N1 against the
    conservative target c sqrt(d/N0).
    """
    if mode not in ("sequence", "pointset"):
        raise ValueError(f"unknown mode {mode!r}")
    target = sqrt_bound(c, d, n0)
    b = target - d0
    if b <= 0:
        raise ValueError(f"bound already violated at N0: budget {b:.3g} <= 0")
    if b >= 1:
        raise ValueError(f"budget {b:.3g} >= 1 gives no finite jump")
    alpha = 1.0 / (1.0 - b) if mode == "sequence" else (1.0 - 1.0 / n0) / (1.0 - b)
    if alpha <= 1.0:
        raise ValueError(f"alpha {alpha:.6f} <= 1: no forward jump possible")
    n1 = math.floor(alpha * n0)
    reached = d0 / alpha + (alpha - 1.0) / alpha
    if mode == "pointset":
        reached += 1.0 / n1
    return JumpPlan(n0, n1, d0, b, alpha, mode, reached <= target)
