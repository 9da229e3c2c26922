"""Gradings of weighted-homogeneous germs and the symmetric functions built on them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class GradingError(ValueError):
    pass


@dataclass(frozen=True)
class Grading:
    """Weights ``w = (w_1..w_n)`` of the source and degrees ``d = (d_0..d_n)`` of the target."""

    w: tuple[int, ...]
    d: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(self.w))
        object.__setattr__(self, "d", tuple(self.d))
        if not self.w:
            raise GradingError("at least one weight is required")
        if len(self.d) != len(self.w) + 1:
            raise GradingError(
                f"degree list length must be n+1 = {len(self.w) + 1}, got {len(self.d)}"
            )
        for kind, seq in (("weight", self.w), ("degree", self.d)):
            for i, v in enumerate(seq):
                if isinstance(v, bool) or not isinstance(v, int):
                    raise GradingError(f"{kind} at position {i} is not an integer: {v!r}")
                if v < 1:
                    raise GradingError(f"non-positive {kind} {v} at position {i}")

    @property
    def n(self) -> int:
        return len(self.w)

    def __str__(self) -> str:
        return f"(({','.join(map(str, self.w))}),({','.join(map(str, self.d))}))"

    def scaled(self, factor: int) -> Grading:
        return Grading(tuple(factor * x for x in self.w), tuple(factor * x for x in self.d))

    def trailing_pairs(self) -> int:
        """Number of trailing (weight, degree) pairs with ``w_j == d_j``.

        In normal form these are the unfolding parameters passed through
        identically.
        """
        count = 0
        for j in range(self.n, 0, -1):
            if self.w[j - 1] != self.d[j]:
                break
            count += 1
        return count


def new_grading(w: Sequence[int], d: Sequence[int]) -> Grading:
    return Grading(tuple(w), tuple(d))


def elementary(values: Sequence[int], k: int) -> int:
    """Elementary symmetric polynomial e_k of ``values``; e_0 = 1."""
    coeffs = [1] + [0] * len(values)
    for v in values:
        for j in range(len(coeffs) - 1, 0, -1):
            coeffs[j] += v * coeffs[j - 1]
    return coeffs[k] if 0 <= k < len(coeffs) else 0


def complete_h(values: Sequence[int], m: int) -> int:
    """Complete homogeneous sum of all degree-``m`` monomials in ``values``."""
    if m < 0:
        raise GradingError(f"degree must be non-negative, got {m}")
    h = [1] + [0] * m
    for v in values:
        for j in range(1, m + 1):
            h[j] += v * h[j - 1]
    return h[m]


def sigma(g: Grading, k: int) -> int:
    if not 0 <= k <= g.n:
        raise GradingError(f"sigma index {k} out of range 0..{g.n}")
    return elementary(g.w, k)


def delta(g: Grading, k: int) -> int:
    if not 0 <= k <= g.n + 1:
        raise GradingError(f"delta index {k} out of range 0..{g.n + 1}")
    return elementary(g.d, k)


@dataclass(frozen=True)
class ChernData:
    sigma: tuple[int, ...]  # sigma_0..sigma_n
    delta: tuple[int, ...]  # delta_0..delta_{n+1}
    c: tuple[Fraction, ...]  # c_0 = 1, c_1..c_n
    s0: Fraction

    def chern(self, k: int) -> Fraction:
        return self.c[k]


def chern_data(g: Grading) -> ChernData:
    n = g.n
    sig = tuple(elementary(g.w, k) for k in range(n + 1))
    dlt = tuple(elementary(g.d, k) for k in range(n + 2))
    h = [complete_h(g.w, m) for m in range(n + 1)]
    c = tuple(
        Fraction(sum((-1) ** (k - i) * dlt[i] * h[k - i] for i in range(k + 1)))
        for k in range(n + 1)
    )
    return ChernData(sigma=sig, delta=dlt, c=c, s0=Fraction(dlt[n + 1], sig[n]))


def unfold_trivial(g: Grading, r: int) -> Grading:
    """Grading of the trivial r-parameter unfolding: append r pairs (1, 1)."""
    if r < 0:
        raise GradingError(f"number of unfolding parameters must be >= 0, got {r}")
    return Grading(g.w + (1,) * r, g.d + (1,) * r)


def slice_grading(g: Grading, m: int) -> Grading:
    """Drop the last ``m`` (weight, degree) pairs, which must be parameter pairs."""
    if m < 1:
        raise GradingError(f"slice depth must be >= 1, got {m}")
    if m >= g.n:
        raise GradingError(f"cannot slice {m} pairs from a grading with n = {g.n}")
    for j in range(g.n - m + 1, g.n + 1):
        if g.w[j - 1] != g.d[j]:
            raise GradingError(
                f"pair {j} is not a parameter pair: w_{j} = {g.w[j - 1]} != d_{j} = {g.d[j]}"
            )
    return Grading(g.w[: g.n - m], g.d[: g.n - m + 1])


def check_unfolding_recursion(g: Grading) -> bool:
    """Check how c_k and s_0 change when the last pair is appended.

    Compares the data of ``g`` with that of ``g`` minus its last pair via
    c_{k,n} = c_{k,n-1} + (d_n - w_n) * sum_i (-w_n)^i c_{k-i-1,n-1}
    and s_{0,n} = s_{0,n-1} * d_n / w_n.
    """
    if g.n < 2:
        raise GradingError("unfolding recursion needs n >= 2")
    full = chern_data(g)
    base = chern_data(Grading(g.w[:-1], g.d[:-1]))
    wn, dn = g.w[-1], g.d[-1]
    for k in range(1, g.n):
        rhs = base.c[k] + (dn - wn) * sum((-1) ** i * wn ** i * base.c[k - i - 1] for i in range(k))
        if full.c[k] != rhs:
            return False
    return full.s0 == base.s0 * Fraction(dn, wn)
