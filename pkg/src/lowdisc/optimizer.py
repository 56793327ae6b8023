"""Greedy coordinate-wise search over shifts and zero-fixing permutations.

The d-dimensional search fixes dimensions one at a time: at stage i every
pair (shift a <= n_shifts[i] coprime to p_i, permutation from m_perms[i]
zero-fixing draws) is scored by the star-discrepancy of the first i+1
coordinates at the target N, and the argmin is frozen.  The candidate
pool of every stage also contains (shift 1, identity), so the plain
Halton configuration is always reachable and the best value can never
exceed the unscrambled one.

Determinism: all randomness flows from splitmix64; stage i draws from
the substream seed XOR (i * odd salt); candidates are scanned in (shift,
draw) order with strict improvement, which realizes the documented
(value, shift, draw-order) tie-breaking.  Shifts sharing a factor with
the prime are skipped without consuming draws.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import _kernels
from .discrepancy import (DiscrepancyResult, TaParams, star_disc_1d, star_disc_exact,
                          star_disc_ta, work_budget, work_estimate)
from .errors import BudgetExceededError, ConfigError
from .rng import SplitMix64, substream_seed
from .sequences import (Permutation, PointSet, ScrambleConfig, generate_point_set,
                        hammersley_lift)

FIRST_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# paper-documented search parametrization for the d=2 point-set search
HAMMERSLEY_PRIMES = FIRST_PRIMES[:9]
HAMMERSLEY_SHIFT_BUDGETS = (1000, 500, 100, 50, 50, 50, 50, 50, 50)
HAMMERSLEY_TOTAL_TRIES = 1000


@dataclass(frozen=True)
class SearchBudget:
    n_shifts: tuple[int, ...]
    m_perms: tuple[int, ...]
    seed: int = 0

    def __post_init__(self):
        if len(self.n_shifts) != len(self.m_perms):
            raise ConfigError("n_shifts and m_perms must have equal length")
        if any(v < 1 for v in self.n_shifts) or any(v < 1 for v in self.m_perms):
            raise ConfigError("budget entries must be >= 1")

    @classmethod
    def appendix(cls, dims: int, seed: int = 0) -> "SearchBudget":
        """The documented parametrization n=(100,100,40,...), m=(1,5,20,80,...)."""
        shifts = tuple([100, 100] + [40] * (dims - 2))[:dims]
        perms = tuple([1, 5, 20] + [80] * (dims - 3))[:dims]
        if dims > 5:
            perms = perms[:5] + (60,) * (dims - 5)
        return cls(shifts, perms, seed)


@dataclass
class StageRecord:
    dim: int
    prime: int
    shift: int
    perm: Permutation
    value: float
    is_exact: bool
    evaluations: int


@dataclass
class SearchResult:
    config: ScrambleConfig
    value: float
    trace: list[StageRecord]
    evaluations: int
    is_exact: bool


def random_permutation_zero_fixed(p: int, stream: SplitMix64) -> Permutation:
    """Fisher-Yates shuffle of 1..p-1 under pi(0)=0.

    Index j = draw mod (i+1); the modulo bias is accepted and documented.
    p=2 consumes no draws (the identity is the only choice).
    """
    if p < 2:
        raise ValueError("p must be >= 2")
    tail = list(range(1, p))
    for i in range(len(tail) - 1, 0, -1):
        j = stream.next_below(i + 1)
        tail[i], tail[j] = tail[j], tail[i]
    return Permutation(p, (0, *tail))


def _digit_matrix(index_values: np.ndarray, base: int) -> np.ndarray:
    width = 1
    vmax = int(index_values.max())
    while base ** width <= vmax:
        width += 1
    out = np.empty((index_values.shape[0], width), dtype=np.int64)
    vals = index_values.copy()
    for j in range(width):
        out[:, j] = vals % base
        vals //= base
    return out


def search_1d(p: int, n: int, n_shifts: int, n_perms: int, seed: int = 0) -> SearchResult:
    """Exhaustive 1-D search: shifts 1..n_shifts (coprime to p) times
    [identity + (n_perms-1) random zero-fixing permutations] per shift,
    scored by the exact closed-form star-discrepancy at N = n."""
    stream = SplitMix64(seed)
    ns = np.arange(1, n + 1, dtype=np.int64)
    best_val = math.inf
    best_shift, best_perm = 1, Permutation.identity(p)
    evaluations = 0
    out = np.empty(n_perms, dtype=np.float64)
    for a in range(1, n_shifts + 1):
        if math.gcd(a, p) != 1:
            continue
        perm_rows = np.empty((n_perms, p), dtype=np.int64)
        perm_rows[0] = np.arange(p)
        for r in range(1, n_perms):
            perm_rows[r] = random_permutation_zero_fixed(p, stream).mapping
        digits = _digit_matrix(a * ns, p)
        _kernels.eval_perm_batch(digits, p, perm_rows, out[:n_perms])
        evaluations += n_perms
        r = int(np.argmin(out[:n_perms]))
        if out[r] < best_val:
            best_val = float(out[r])
            best_shift = a
            best_perm = Permutation(p, tuple(int(v) for v in perm_rows[r]))
    cfg = ScrambleConfig((p,), (best_shift,), (best_perm,))
    record = StageRecord(0, p, best_shift, best_perm, best_val, True, evaluations)
    return SearchResult(cfg, best_val, [record], evaluations, True)


def _stage_discrepancy(pts: np.ndarray, method: str,
                       ta_params: TaParams) -> DiscrepancyResult:
    d = pts.shape[1]
    if d == 1:
        return star_disc_1d(pts)
    if method == "exact":
        return star_disc_exact(pts)
    if method == "ta":
        return star_disc_ta(pts, ta_params)
    # auto: exact when the work estimator allows it
    if work_estimate(pts.shape[0], d) <= work_budget():
        return star_disc_exact(pts)
    return star_disc_ta(pts, ta_params)


def greedy_search(primes: Sequence[int], n: int, budget: SearchBudget,
                  disc_method: str = "auto",
                  ta_params: TaParams = TaParams()) -> SearchResult:
    """Stage-wise argmin over (shift, permutation) per dimension.

    disc_method: "exact", "ta", or "auto" (exact while the work estimator
    stays within budget, threshold accepting beyond).  The final value is
    re-verified by a fresh evaluation of the emitted configuration.
    """
    primes = tuple(int(p) for p in primes)
    d = len(primes)
    if len(budget.n_shifts) != d:
        raise ConfigError(f"budget covers {len(budget.n_shifts)} dims, need {d}")
    if disc_method not in ("exact", "ta", "auto"):
        raise ValueError(f"unknown disc_method {disc_method!r}")
    ns = np.arange(1, n + 1, dtype=np.int64)
    coords = np.empty((n, d), dtype=np.float64)
    chosen_shifts: list[int] = []
    chosen_perms: list[Permutation] = []
    trace: list[StageRecord] = []
    total_evals = 0
    value = math.inf
    exact_all = True
    scratch = np.empty(n, dtype=np.float64)
    for i, p in enumerate(primes):
        stream = SplitMix64(substream_seed(budget.seed, i))
        # identity heads the pool and counts toward m_perms (m=1 means
        # identity only); duplicate draws are dropped but consume stream state
        pool = [Permutation.identity(p)]
        seen = {pool[0].mapping}
        for _ in range(budget.m_perms[i] - 1):
            cand = random_permutation_zero_fixed(p, stream)
            if cand.mapping not in seen:
                pool.append(cand)
                seen.add(cand.mapping)
        best = None  # (value, shift, draw_idx, perm, is_exact)
        stage_evals = 0
        for a in range(1, budget.n_shifts[i] + 1):
            if math.gcd(a, p) != 1:
                continue
            idx_vals = a * ns
            for draw_idx, perm in enumerate(pool):
                _kernels.scrambled_vdc_batch(
                    idx_vals, p, np.asarray(perm.mapping, dtype=np.int64), scratch)
                coords[:, i] = scratch
                res = _stage_discrepancy(coords[:, : i + 1], disc_method, ta_params)
                stage_evals += 1
                if best is None or res.value < best[0]:
                    best = (res.value, a, draw_idx, perm, res.is_exact)
        value, shift, _, perm, stage_exact = best
        exact_all = exact_all and stage_exact
        chosen_shifts.append(shift)
        chosen_perms.append(perm)
        _kernels.scrambled_vdc_batch(shift * ns, p,
                                     np.asarray(perm.mapping, dtype=np.int64), scratch)
        coords[:, i] = scratch
        total_evals += stage_evals
        trace.append(StageRecord(i, p, shift, perm, value, stage_exact, stage_evals))
    cfg = ScrambleConfig(primes, tuple(chosen_shifts), tuple(chosen_perms))
    final = _stage_discrepancy(generate_point_set(cfg, n).points, disc_method, ta_params)
    return SearchResult(cfg, final.value, trace, total_evals,
                        exact_all and final.is_exact)


def inverse_star_search(d: int, target: float, budget: SearchBudget,
                        n_cap: int = 1000,
                        disc_method: str = "auto") -> tuple[int, SearchResult]:
    """Smallest N (by increment from 1) whose greedy search result has
    exact star-discrepancy <= target; raises when n_cap is passed."""
    if not 0 < target <= 1:
        raise ValueError("target must lie in (0, 1]")
    primes = FIRST_PRIMES[:d]
    for n in range(1, n_cap + 1):
        result = greedy_search(primes, n, budget, disc_method=disc_method)
        if result.is_exact and result.value <= target:
            return n, result
    raise BudgetExceededError(f"no configuration with D* <= {target} found up to N={n_cap}")


def hammersley_search(n: int, candidate_primes: Sequence[int] = HAMMERSLEY_PRIMES,
                      shift_budgets: Sequence[int] = HAMMERSLEY_SHIFT_BUDGETS,
                      total_tries: int = HAMMERSLEY_TOTAL_TRIES, seed: int = 0,
                      convention: str = "classic1") -> SearchResult:
    """Best scrambled Hammersley lift over the candidate primes.

    Each prime p_i gets shift_budgets[i] shifts and total_tries // budget
    permutations per shift (identity first), so every prime receives the
    same number of candidate evaluations.
    """
    if len(candidate_primes) != len(shift_budgets):
        raise ConfigError("candidate_primes and shift_budgets must align")
    best = None  # (value, prime_idx, shift, draw, cfg)
    trace = []
    total_evals = 0
    for i, (p, n_shift) in enumerate(zip(candidate_primes, shift_budgets)):
        stream = SplitMix64(substream_seed(seed, i))
        per_shift = max(1, total_tries // n_shift)
        prime_best = None
        evals = 0
        for a in range(1, n_shift + 1):
            if math.gcd(a, p) != 1:
                continue
            pool = [Permutation.identity(p)]
            pool += [random_permutation_zero_fixed(p, stream)
                     for _ in range(per_shift - 1)]
            for draw_idx, perm in enumerate(pool):
                cfg = ScrambleConfig((p,), (a,), (perm,), convention=convention)
                pts = hammersley_lift(cfg, n, convention)
                res = star_disc_exact(pts)
                evals += 1
                cand = (res.value, i, a, draw_idx, cfg)
                if prime_best is None or cand[0] < prime_best[0]:
                    prime_best = cand
                if best is None or cand[0] < best[0]:
                    best = cand
        total_evals += evals
        trace.append(StageRecord(1, p, prime_best[2], prime_best[4].perms[0],
                                 prime_best[0], True, evals))
    value, _, shift, _, cfg = best
    return SearchResult(cfg, value, trace, total_evals, True)
