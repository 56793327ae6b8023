"""Point-set and sequence generators.

Covers (scrambled) van der Corput subsequences, (scrambled) Halton
subsequences, Hammersley lifts, and the two 1-D comparison sequences
(golden-ratio Kronecker, Kritzinger).

Digit conventions: an index n >= 0 has base-b digits e_0, e_1, ... with
n = sum e_j b^j.  The radical inverse reverses them across the radix
point, sum e_j b^(-j-1).  Digit scrambling applies a permutation of
{0,...,b-1} to every digit, including the infinitely many zero digits
above the leading one; when perm(0) != 0 those contribute the geometric
tail perm(0) * b^(-L) / (b - 1) for an L-digit index.

Floating point: digit sums are accumulated Horner-style from the most
significant index digit (the smallest output contribution) downward, so
rounding error stays at a few ulp.  Exact Fraction variants are provided
for 1-D verification work.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import BudgetExceededError, ConfigError

POLY_GUARD = 2 ** 24  # largest modulus we are willing to enumerate


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Permutation:
    """A permutation of {0, ..., base-1} applied digitwise."""

    base: int
    mapping: tuple[int, ...]

    def __post_init__(self):
        if self.base < 2:
            raise ConfigError(f"permutation base must be >= 2, got {self.base}")
        if sorted(self.mapping) != list(range(self.base)):
            raise ConfigError(
                f"mapping {self.mapping} is not a bijection on 0..{self.base - 1}"
            )

    @classmethod
    def identity(cls, base: int) -> "Permutation":
        return cls(base, tuple(range(base)))

    @classmethod
    def of(cls, mapping: Sequence[int]) -> "Permutation":
        return cls(len(mapping), tuple(int(v) for v in mapping))

    @property
    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.mapping))

    def __call__(self, digit: int) -> int:
        return self.mapping[digit]


@dataclass(frozen=True)
class PermPolynomial:
    """Integer polynomial index map f(n) = sum coeffs[i] * n^i (constant first).

    Used to select subsequences; must induce a bijection mod p^2 for the
    base prime p it is paired with (checked by validate_perm_polynomial).
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise ConfigError("polynomial needs at least one coefficient")

    @classmethod
    def affine(cls, shift: int, offset: int = 0) -> "PermPolynomial":
        return cls((int(offset), int(shift)))

    @property
    def is_affine(self) -> bool:
        return len(self.coeffs) <= 2

    @property
    def linear_coeff(self) -> int:
        return self.coeffs[1] if len(self.coeffs) > 1 else 0

    def __call__(self, n: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc


def validate_perm_polynomial(poly: PermPolynomial, p: int, k: int = 2,
                             guard: int = POLY_GUARD) -> bool:
    """True iff f is a bijection on Z / p^k Z, by direct enumeration."""
    if k < 1:
        raise ValueError("level k must be >= 1")
    modulus = p ** k
    if modulus > guard:
        raise BudgetExceededError(
            f"modulus {p}^{k} = {modulus} exceeds enumeration guard {guard}"
        )
    seen = bytearray(modulus)
    for n in range(modulus):
        v = poly(n) % modulus
        if seen[v]:
            return False
        seen[v] = 1
    return True


@dataclass(frozen=True)
class ScrambleConfig:
    """Everything needed to regenerate a scrambled Halton subsequence.

    `shifts[i]` is the linear coefficient of the index map for dimension i;
    `polys`, when given, overrides the affine map n -> shifts[i] * n for
    that dimension (entry None keeps the affine default).
    """

    primes: tuple[int, ...]
    shifts: tuple[int, ...]
    perms: tuple[Permutation, ...]
    polys: Optional[tuple[Optional[PermPolynomial], ...]] = None
    start_index: int = 1
    convention: str = "paper"

    def __post_init__(self):
        d = len(self.primes)
        if d < 1:
            raise ConfigError("need at least one dimension")
        if len(set(self.primes)) != d:
            raise ConfigError(f"primes must be pairwise distinct: {self.primes}")
        if len(self.shifts) != d or len(self.perms) != d:
            raise ConfigError("primes, shifts and perms must have equal length")
        if self.polys is not None and len(self.polys) != d:
            raise ConfigError("polys length must match dimension")
        if self.start_index < 0:
            raise ConfigError("start_index must be >= 0")
        if self.convention not in ("paper", "classic", "classic1"):
            raise ConfigError(f"unknown convention {self.convention!r}")
        for i, (p, perm) in enumerate(zip(self.primes, self.perms)):
            if perm.base != p:
                raise ConfigError(
                    f"dimension {i}: permutation base {perm.base} != prime {p}"
                )
            poly = self.poly(i)
            if poly.is_affine:
                if math.gcd(poly.linear_coeff, p) != 1:
                    raise ConfigError(
                        f"dimension {i}: shift {poly.linear_coeff} shares a factor with {p}"
                    )
            elif not validate_perm_polynomial(poly, p, 2):
                raise ConfigError(
                    f"dimension {i}: polynomial {poly.coeffs} is not a bijection mod {p}^2"
                )

    @classmethod
    def plain(cls, primes: Sequence[int], start_index: int = 1) -> "ScrambleConfig":
        """Unscrambled Halton: shift 1, identity permutations."""
        primes = tuple(int(p) for p in primes)
        return cls(primes, (1,) * len(primes),
                   tuple(Permutation.identity(p) for p in primes),
                   start_index=start_index)

    @classmethod
    def affine(cls, primes: Sequence[int], shifts: Sequence[int],
               perms: Sequence[Sequence[int]], start_index: int = 1,
               convention: str = "paper") -> "ScrambleConfig":
        primes = tuple(int(p) for p in primes)
        return cls(primes, tuple(int(a) for a in shifts),
                   tuple(Permutation.of(m) for m in perms),
                   start_index=start_index, convention=convention)

    @property
    def dims(self) -> int:
        return len(self.primes)

    def poly(self, i: int) -> PermPolynomial:
        if self.polys is not None and self.polys[i] is not None:
            return self.polys[i]
        return PermPolynomial.affine(self.shifts[i])


@dataclass
class PointSet:
    """N points in [0,1)^d plus how they were made."""

    dim: int
    points: np.ndarray  # (n, dim) float64
    config: Optional[ScrambleConfig] = None
    label: str = ""

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        if pts.shape[1] != self.dim:
            raise ConfigError(f"points have dim {pts.shape[1]}, expected {self.dim}")
        if pts.size and (pts.min() < 0.0 or pts.max() > 1.0):
            raise ConfigError("coordinates must lie in [0, 1]")
        self.points = pts

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def has_unit_coordinate(self) -> bool:
        """Degenerate scrambled values can hit exactly 1.0 (warning flag)."""
        return bool(self.points.size and self.points.max() == 1.0)

    @property
    def coords_1d(self) -> np.ndarray:
        if self.dim != 1:
            raise ValueError("coords_1d only defined for 1-D sets")
        return self.points[:, 0]


# ---------------------------------------------------------------------------
# Radical inverses
# ---------------------------------------------------------------------------

def digits_of(n: int, base: int) -> list[int]:
    """Base-b digits of n, least significant first; empty for n = 0."""
    out = []
    while n > 0:
        n, r = divmod(n, base)
        out.append(r)
    return out


def radical_inverse(n: int, base: int) -> float:
    """Digit reversal n = sum e_j b^j  ->  sum e_j b^(-j-1)."""
    if n < 0:
        raise ValueError("index must be non-negative")
    if base < 2:
        raise ValueError("base must be >= 2")
    x = 0.0
    for d in reversed(digits_of(n, base)):
        x = (x + d) / base
    return x


def radical_inverse_exact(n: int, base: int) -> Fraction:
    # digit e_0 becomes the most significant digit of the reversed numeral
    ds = digits_of(n, base)
    acc = 0
    for d in ds:
        acc = acc * base + d
    return Fraction(acc, base ** len(ds))


def scrambled_radical_inverse(n: int, base: int, perm: Permutation) -> float:
    """Radical inverse with digits relabelled by perm, tail included.

    When perm(0) != 0 the zero digits above the leading one contribute
    perm(0) * b^(-L) / (b-1); for n = 0 with perm(0) = b-1 this evaluates
    to exactly 1.0, which is returned unchanged.
    """
    if perm.base != base:
        raise ConfigError(f"permutation base {perm.base} != {base}")
    ds = digits_of(n, base)
    x = 0.0
    for d in reversed(ds):
        x = (x + perm.mapping[d]) / base
    p0 = perm.mapping[0]
    if p0 != 0:
        x += p0 / ((base - 1) * base ** len(ds))
    return x


def scrambled_radical_inverse_exact(n: int, base: int, perm: Permutation) -> Fraction:
    ds = digits_of(n, base)
    acc = 0
    for d in ds:
        acc = acc * base + perm.mapping[d]
    val = Fraction(acc, base ** len(ds))
    p0 = perm.mapping[0]
    if p0 != 0:
        val += Fraction(p0, (base - 1) * base ** len(ds))
    return val


# ---------------------------------------------------------------------------
# Point-set generation
# ---------------------------------------------------------------------------

def _index_values(cfg: ScrambleConfig, dim: int, n_points: int,
                  start: Optional[int] = None) -> list[int]:
    poly = cfg.poly(dim)
    first = cfg.start_index if start is None else start
    vals = [poly(n) for n in range(first, first + n_points)]
    if any(v < 0 for v in vals):
        raise ConfigError(
            f"dimension {dim}: index map produces negative values on the requested range"
        )
    return vals


def generate_point_set(cfg: ScrambleConfig, n_points: int) -> PointSet:
    """Points (phi_{p_1,pi_1}(f_1(n)), ..., phi_{p_d,pi_d}(f_d(n))),
    n = start_index, ..., start_index + N - 1."""
    if n_points < 1:
        raise ValueError("n_points must be >= 1")
    pts = np.empty((n_points, cfg.dims), dtype=np.float64)
    for i in range(cfg.dims):
        p, perm = cfg.primes[i], cfg.perms[i]
        for row, v in enumerate(_index_values(cfg, i, n_points)):
            pts[row, i] = scrambled_radical_inverse(v, p, perm)
    out = PointSet(cfg.dims, pts, config=cfg, label=f"halton d={cfg.dims} n={n_points}")
    if out.has_unit_coordinate:
        warnings.warn("point set contains a coordinate equal to 1.0 "
                      "(index 0 with a permutation not fixing 0)")
    return out


def generate_values_exact(cfg: ScrambleConfig, n_points: int, dim: int = 0) -> list[Fraction]:
    """Exact rationals for a single coordinate of generate_point_set."""
    p, perm = cfg.primes[dim], cfg.perms[dim]
    return [scrambled_radical_inverse_exact(v, p, perm)
            for v in _index_values(cfg, dim, n_points)]


def hammersley_lift(cfg: ScrambleConfig, n_points: int,
                    convention: Optional[str] = None) -> PointSet:
    """Prefix an equispaced coordinate to the sequence from cfg.

    convention "paper":    points (n/N, x_n)     for n = 1, ..., N-1  (N-1 points)
    convention "classic":  points (n/N, x_n)     for n = 0, ..., N-1  (N points)
    convention "classic1": points ((n-1)/N, x_n) for n = 1, ..., N    (N points)

    "classic1" is the classic grid {0, ..., (N-1)/N} paired with the
    one-based sequence; it is the reading that reproduces the published
    2-D comparison tables.  The lift fixes its own index range (x_n
    evaluates the index map at n), overriding cfg.start_index.
    """
    if n_points < 2:
        raise ValueError("need N >= 2 for a Hammersley lift")
    conv = convention or cfg.convention
    if conv == "paper":
        lo, hi, grid0 = 1, n_points, 1
    elif conv == "classic":
        lo, hi, grid0 = 0, n_points, 0
    elif conv == "classic1":
        lo, hi, grid0 = 1, n_points + 1, 0
    else:
        raise ConfigError(f"unknown convention {conv!r}")
    count = hi - lo
    pts = np.empty((count, cfg.dims + 1), dtype=np.float64)
    pts[:, 0] = np.arange(grid0, grid0 + count, dtype=np.float64) / n_points
    for i in range(cfg.dims):
        p, perm = cfg.primes[i], cfg.perms[i]
        for row, v in enumerate(_index_values(cfg, i, count, start=lo)):
            pts[row, i + 1] = scrambled_radical_inverse(v, p, perm)
    return PointSet(cfg.dims + 1, pts, config=cfg,
                    label=f"hammersley {conv} N={n_points}")


# ---------------------------------------------------------------------------
# Comparison sequences
# ---------------------------------------------------------------------------

GOLDEN_RATIO = (1.0 + math.sqrt(5.0)) / 2.0


def kronecker_sequence(alpha: float, n_points: int) -> PointSet:
    """Fractional parts {n * alpha}, n = 1..N.

    Rational alpha is accepted but degenerate (the sequence cycles and is
    not uniformly distributed).
    """
    if n_points < 1:
        raise ValueError("n_points must be >= 1")
    vals = (np.arange(1, n_points + 1, dtype=np.float64) * alpha) % 1.0
    return PointSet(1, vals.reshape(-1, 1), label=f"kronecker alpha={alpha!r}")


def _kritzinger_objective_exact(prefix: Sequence[Fraction], x: Fraction) -> Fraction:
    s = sum((k if k > x else x) for k in prefix)
    return -2 * s + (x + 1) * x * x - x


def kritzinger_sequence_exact(n_points: int) -> list[Fraction]:
    """Greedy 1-D sequence: Kri_1 = 1/2, then each next element is the
    smallest minimizer of

        F(x) = -2 sum_{k<=n} max(Kri_k, x) + (x+1) x^2 - x

    over the candidate grid {(2k-1) / (2(n+1)) : k = 1..n+1}.

    Every produced element is of the form (2k-1)/(2n).  Candidates are
    scored in floating point; near-ties (within 1e-9) are re-scored with
    exact rationals so the smallest true minimizer is returned.
    """
    if n_points < 1:
        raise ValueError("n_points must be >= 1")
    seq: list[Fraction] = [Fraction(1, 2)]
    floats = [0.5]
    while len(seq) < n_points:
        m = len(seq) + 1
        sorted_vals = np.sort(np.asarray(floats))
        suffix = np.concatenate([np.cumsum(sorted_vals[::-1])[::-1], [0.0]])
        ks = np.arange(1, m + 1, dtype=np.float64)
        xs = (2 * ks - 1) / (2 * m)
        # F(x) = -2 * [sum_{v >= x} v + x * #(v < x)] + (x+1)x^2 - x
        idx = np.searchsorted(sorted_vals, xs, side="left")
        fvals = -2.0 * (suffix[idx] + xs * idx) + (xs + 1.0) * xs * xs - xs
        best = float(np.min(fvals))
        near = np.nonzero(fvals <= best + 1e-9)[0]
        if len(near) == 1:
            k = int(near[0]) + 1
            chosen = Fraction(2 * k - 1, 2 * m)
        else:
            # scan in increasing x so a strict improvement keeps the smallest
            chosen_val = None
            for j in near:
                cand = Fraction(2 * (int(j) + 1) - 1, 2 * m)
                val = _kritzinger_objective_exact(seq, cand)
                if chosen_val is None or val < chosen_val:
                    chosen, chosen_val = cand, val
        seq.append(chosen)
        floats.append(float(chosen))
    return seq


def kritzinger_sequence(n_points: int) -> PointSet:
    """Float view of kritzinger_sequence_exact."""
    vals = [float(v) for v in kritzinger_sequence_exact(n_points)]
    return PointSet(1, np.asarray(vals).reshape(-1, 1), label="kritzinger")
