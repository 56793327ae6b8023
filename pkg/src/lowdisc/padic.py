"""p-adic discrepancy of integer sequences and the counting invariants
behind scrambled subsequence constructions.

A p-adic disc of radius p^-k centered at z is the residue class
z mod p^k; the p-adic discrepancy of x_1..x_N is

    sup over k >= 0 and classes z of | #(class hits) / N  -  p^-k |.

The supremum is over infinitely many levels, but once every residue
class contains only copies of a single value the class counts never
change again, so the remaining levels contribute the analytic tail
max_count / N (the measure p^-k of an occupied disc vanishes).  This
module enumerates to that separation level and adds the tail, all in
exact rational arithmetic.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import BudgetExceededError
from .sequences import Permutation, PermPolynomial, digits_of

CRT_GUARD = 2 ** 24


@dataclass(frozen=True)
class ResidueProfile:
    """Occupancy counts of residue classes mod p^level."""

    p: int
    level: int
    counts: dict  # residue -> count

    @property
    def total(self) -> int:
        return sum(self.counts.values())


@dataclass(frozen=True)
class PadicDiscResult:
    value: Fraction
    attained_level: Optional[int]  # None when the tail dominates
    m_max_tail: int                # max occupancy at the separation level

    @property
    def tail_dominates(self) -> bool:
        return self.attained_level is None


def ceil_log(n: int, p: int) -> int:
    """Smallest k with p^k >= n (exact integer arithmetic)."""
    k, v = 0, 1
    while v < n:
        v *= p
        k += 1
    return k


def residue_profile(values: Sequence[int], p: int, level: int) -> ResidueProfile:
    mod = p ** level
    return ResidueProfile(p, level, dict(Counter(v % mod for v in values)))


def padic_discrepancy(values: Sequence[int], p: int) -> PadicDiscResult:
    """Exact p-adic discrepancy of a finite integer sequence.

    Levels are enumerated until residues mod p^k separate every pair of
    distinct values (equal values never separate); beyond that the class
    counts are frozen and the supremum of the remaining levels is the
    tail limit m_max / N.
    """
    n = len(values)
    if n == 0:
        raise ValueError("empty sequence has no p-adic discrepancy")
    vals = [int(v) for v in values]
    best = Fraction(0)
    best_level: Optional[int] = 0
    level = 0
    while True:
        mod = p ** level
        counts = Counter(v % mod for v in vals)
        level_max = Fraction(0)
        for c in counts.values():
            dev = abs(Fraction(c, n) - Fraction(1, mod))
            if dev > level_max:
                level_max = dev
        if len(counts) < mod:
            empty_dev = Fraction(1, mod)
            if empty_dev > level_max:
                level_max = empty_dev
        if level_max > best:
            best, best_level = level_max, level
        # separated: every class holds copies of one value only
        separated = True
        if level == 0:
            separated = len(set(vals)) <= 1
        else:
            groups: dict[int, int] = {}
            for v in vals:
                r = v % mod
                if r in groups:
                    if groups[r] != v:
                        separated = False
                        break
                else:
                    groups[r] = v
        if separated:
            m_max = max(counts.values())
            tail = Fraction(m_max, n)
            if tail > best:
                return PadicDiscResult(tail, None, m_max)
            return PadicDiscResult(best, best_level, m_max)
        level += 1


def relabel_digits(value: int, p: int, perm: Permutation, depth: int) -> int:
    """Apply perm to the first `depth` base-p digits of value (>= 0)."""
    ds = digits_of(value, p)
    ds += [0] * (depth - len(ds))
    out = 0
    for d in reversed(ds):
        out = out * p + perm.mapping[d]
    return out


def relabel_sequence(values: Sequence[int], p: int, perm: Permutation) -> list[int]:
    """Digitwise relabelling, expansion depth taken from the largest value."""
    vmax = max(values)
    depth = max(1, len(digits_of(vmax, p)))
    return [relabel_digits(v, p, perm, depth) for v in values]


def verify_equidistribution(poly: PermPolynomial, perm: Permutation, p: int,
                            n: int, k_max: int) -> bool:
    """Check the disc-occupancy invariant for pi-relabelled f(1..N).

    True iff for every level k <= k_max, every residue class mod p^k
    holds floor(N p^-k) or floor(N p^-k)+1 of the values.  The check is
    purely counting-based; callers wanting the bijectivity hypothesis
    enforced should run validate_perm_polynomial first.
    """
    raw = [poly(i) for i in range(1, n + 1)]
    vals = relabel_sequence(raw, p, perm)
    for k in range(1, k_max + 1):
        mod = p ** k
        lo = n // mod
        counts = Counter(v % mod for v in vals)
        if any(c not in (lo, lo + 1) for c in counts.values()):
            return False
        if lo >= 1 and len(counts) < mod:
            return False  # an empty class would hold 0 < floor(N p^-k)
    return True


def crt_count_range(shifts: Sequence[int], primes: Sequence[int],
                    levels: Sequence[int], n: int) -> tuple[int, int]:
    """Min and max occupancy of the joint residue boxes
    (a_1 n mod p_1^k_1, ..., a_d n mod p_d^k_d) for n = 1..N."""
    if len(shifts) != len(primes) or len(primes) != len(levels):
        raise ValueError("shifts, primes, and levels must align")
    for a, p in zip(shifts, primes):
        if math.gcd(a, p) != 1:
            raise ValueError(f"shift {a} not coprime to {p}")
    mods = [p ** k for p, k in zip(primes, levels)]
    total = math.prod(mods)
    if total > CRT_GUARD:
        raise BudgetExceededError(f"joint modulus {total} exceeds guard {CRT_GUARD}")
    counts = Counter(
        tuple((a * i) % m for a, m in zip(shifts, mods)) for i in range(1, n + 1)
    )
    max_c = max(counts.values())
    min_c = 0 if len(counts) < total else min(counts.values())
    return min_c, max_c


def meijer_transfer_bound(delta: float, p: int) -> float:
    """Extreme-discrepancy bound delta * (2 + (2(p-1)/log p) * log(1/delta))
    transferred from a p-adic discrepancy delta."""
    if not 0 < delta <= 1:
        raise ValueError("delta must lie in (0, 1]")
    delta = float(delta)
    return delta * (2.0 + (2.0 * (p - 1) / math.log(p)) * math.log(1.0 / delta))
