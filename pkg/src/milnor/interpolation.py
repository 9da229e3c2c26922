"""Interpolation of the universal image-Milnor-number coefficients b_alpha.

For a grading of dimension n the image Milnor number has the form

    mu_I = (-1)^n * sum_{1 <= |alpha| <= n} b_alpha c^alpha sigma_{n-|alpha|} / sigma_n

with ``c^alpha = s0^a0 c1^a1 ... c5^a5`` and weighted degree
``|alpha| = a0 + sum k*ak``.  Every germ with known mu_I and grading gives
one linear equation on the b_alpha.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, lcm
from typing import Iterable, Mapping, Sequence

from .core import InconsistentSystemError, LinearSystem, Polynomial, parse_polynomial
from .formulas import CLASS_VARS, MU_DISPLAYED, SIGMA_VARS
from .grading import ChernData, Grading, chern_data, unfold_trivial

log = logging.getLogger(__name__)

MAX_DEGREE = 5


class InterpolationError(ValueError):
    pass


@dataclass(frozen=True, order=False)
class MultiIndex:
    """Exponents of (s0, c1, ..., c5)."""

    alpha: tuple[int, ...]

    def __post_init__(self):
        a = tuple(self.alpha) + (0,) * (6 - len(self.alpha))
        if len(a) != 6 or any(x < 0 for x in a):
            raise ValueError(f"bad multi-index {self.alpha!r}")
        object.__setattr__(self, "alpha", a)

    @property
    def degree(self) -> int:
        return self.alpha[0] + sum(k * a for k, a in enumerate(self.alpha) if k)

    def sort_key(self) -> tuple:
        return (self.degree, tuple(-a for a in self.alpha))

    def __lt__(self, other: MultiIndex) -> bool:
        return self.sort_key() < other.sort_key()

    def written(self) -> str:
        """Digits up to the last nonzero entry, e.g. ``b_{001}`` -> '001'."""
        a = list(self.alpha)
        while len(a) > 1 and a[-1] == 0:
            a.pop()
        return "".join(str(x) for x in a)

    def monomial(self) -> str:
        parts = []
        for name, e in zip(CLASS_VARS, self.alpha):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) or "1"

    def __str__(self) -> str:
        return f"b{self.written()}"

    def evaluate(self, data: ChernData) -> Fraction:
        value = data.s0 ** self.alpha[0]
        for k in range(1, 6):
            if self.alpha[k]:
                if k >= len(data.c):
                    raise InterpolationError(f"c_{k} is not defined for n = {len(data.c) - 1}")
                value *= data.c[k] ** self.alpha[k]
        return value


@lru_cache(maxsize=None)
def enumerate_multi_indices(max_degree: int) -> tuple[MultiIndex, ...]:
    """All alpha with 1 <= |alpha| <= max_degree, by degree then descending lex."""
    if not 1 <= max_degree <= MAX_DEGREE:
        raise InterpolationError(f"max degree must be in 1..{MAX_DEGREE}, got {max_degree}")
    out = []

    def rec(k: int, remaining: int, prefix: list[int]):
        # k runs 5..1 over c_k, then s0 absorbs the remainder
        if k == 0:
            out.append(MultiIndex((remaining, *reversed(prefix))))
            return
        for e in range(remaining // k + 1):
            rec(k - 1, remaining - k * e, prefix + [e])

    for deg in range(1, max_degree + 1):
        rec(5, deg, [])
    return tuple(sorted(out))


@dataclass(frozen=True)
class CoeffTable:
    """b_alpha values for all |alpha| <= max_degree; absent entries are zero."""

    max_degree: int
    values: Mapping[MultiIndex, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for a, v in self.values.items():
            if a.degree > self.max_degree:
                raise InterpolationError(f"{a} exceeds table degree {self.max_degree}")
            v = Fraction(v)
            if v:
                clean[a] = v
        object.__setattr__(self, "values", clean)

    def __getitem__(self, a: MultiIndex | tuple) -> Fraction:
        if not isinstance(a, MultiIndex):
            a = MultiIndex(tuple(a))
        return self.values.get(a, Fraction(0))

    def restrict(self, max_degree: int) -> CoeffTable:
        return CoeffTable(max_degree, {a: v for a, v in self.values.items() if a.degree <= max_degree})

    def block(self, degree: int) -> dict[MultiIndex, Fraction]:
        return {a: self[a] for a in enumerate_multi_indices(MAX_DEGREE) if a.degree == degree}

    def diff(self, other: CoeffTable) -> list[tuple[MultiIndex, Fraction, Fraction]]:
        deg = max(self.max_degree, other.max_degree)
        return [
            (a, self[a], other[a])
            for a in enumerate_multi_indices(deg)
            if self[a] != other[a]
        ]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoeffTable):
            return NotImplemented
        return self.max_degree == other.max_degree and self.values == other.values

    def __hash__(self):
        return hash((self.max_degree, frozenset(self.values.items())))


@lru_cache(maxsize=1)
def paper_b_table() -> CoeffTable:
    """Coefficients read off the displayed n = 5 image Milnor number formula."""
    numerator = parse_polynomial(MU_DISPLAYED[5], CLASS_VARS + SIGMA_VARS)
    # mu = N / sig5 = (-1)^5 * sum(...) / sig5, so sum(...) = -N
    bracket = -numerator
    values = {}
    for a in enumerate_multi_indices(MAX_DEGREE):
        powers = dict(zip(CLASS_VARS, a.alpha))
        rest = MAX_DEGREE - a.degree
        if rest:
            powers[f"sig{rest}"] = 1
        values[a] = bracket.coefficient(powers)
    table = CoeffTable(MAX_DEGREE, values)
    # every monomial of the display must be accounted for by some b_alpha
    rebuilt = Polynomial((), {})
    for a, v in table.values.items():
        mono = dict(zip(CLASS_VARS, a.alpha))
        if a.degree < MAX_DEGREE:
            mono[f"sig{MAX_DEGREE - a.degree}"] = 1
        rebuilt = rebuilt + Polynomial.monomial(mono, v, CLASS_VARS + SIGMA_VARS)
    assert rebuilt == bracket, "displayed formula has terms outside the universal form"
    return table


def _row_coefficients(data: ChernData, n: int, indices: Sequence[MultiIndex]) -> list[Fraction]:
    sig_n = data.sigma[n]
    return [
        a.evaluate(data) * data.sigma[n - a.degree] / sig_n if a.degree <= n else Fraction(0)
        for a in indices
    ]


def generic_mu(g: Grading, b: CoeffTable) -> Fraction:
    """Evaluate the universal form on ``g`` with coefficient table ``b``."""
    if b.max_degree < g.n:
        raise InterpolationError(f"table covers degree {b.max_degree}, grading needs {g.n}")
    if g.n > MAX_DEGREE:
        raise InterpolationError(f"the universal form is only established for n <= {MAX_DEGREE}")
    data = chern_data(g)
    indices = [a for a in b.values if a.degree <= g.n]
    coeffs = _row_coefficients(data, g.n, indices)
    total = sum((b[a] * c for a, c in zip(indices, coeffs)), Fraction(0))
    return (-1) ** g.n * total


@dataclass(frozen=True)
class EquationRow:
    """One linear constraint ``sum coeff[alpha] * b_alpha = rhs``."""

    coefficients: tuple[Fraction, ...]  # aligned with enumerate_multi_indices(5)
    rhs: Fraction
    source: str
    grading: Grading
    kind: str = "SAMPLE"  # or "STABLE_UNFOLD r"

    def as_dict(self) -> dict[MultiIndex, Fraction]:
        return dict(zip(enumerate_multi_indices(MAX_DEGREE), self.coefficients))

    def coefficient(self, alpha: MultiIndex | tuple) -> Fraction:
        if not isinstance(alpha, MultiIndex):
            alpha = MultiIndex(tuple(alpha))
        return self.as_dict()[alpha]

    @property
    def n(self) -> int:
        return self.grading.n

    @property
    def label(self) -> str:
        return f"{self.source} [{self.kind}]" if self.kind != "SAMPLE" else self.source


def equation_row(g: Grading, mu: Fraction | int, source: str = "", kind: str = "SAMPLE") -> EquationRow:
    if not 1 <= g.n <= MAX_DEGREE:
        raise InterpolationError(f"sample dimension must be in 1..{MAX_DEGREE}, got {g.n}")
    indices = enumerate_multi_indices(MAX_DEGREE)
    data = chern_data(g)
    coeffs = tuple(_row_coefficients(data, g.n, indices))
    return EquationRow(coeffs, (-1) ** g.n * Fraction(mu), source or str(g), g, kind)


def sample_equation(sample) -> EquationRow:
    """Row from a catalog sample; its mu must be a known finite value."""
    if not isinstance(sample.mu, (int, Fraction)):
        raise InterpolationError(f"sample {sample.name} has no finite mu_I ({sample.mu})")
    if not 2 <= sample.grading.n <= MAX_DEGREE:
        raise InterpolationError(f"sample {sample.name} has n = {sample.grading.n}, need 2..5")
    return equation_row(sample.grading, sample.mu, sample.name)


def stable_equations(g: Grading, r_values: Iterable[int], source: str = "") -> list[EquationRow]:
    """Rows for trivial unfoldings of a stable germ, all with mu_I = 0.

    Each row is evaluated directly on the unfolded grading.
    """
    rows = []
    for r in r_values:
        if g.n + r > MAX_DEGREE:
            raise InterpolationError(f"unfolding {source or g} by {r} exceeds n = {MAX_DEGREE}")
        kind = f"STABLE_UNFOLD {r}" if r else "SAMPLE"
        rows.append(equation_row(unfold_trivial(g, r), 0, source or str(g), kind))
    return rows


def new_system(max_degree: int = MAX_DEGREE) -> LinearSystem:
    return LinearSystem(enumerate_multi_indices(max_degree))


def _project(row: EquationRow, max_degree: int) -> list[Fraction]:
    return list(row.coefficients[: len(enumerate_multi_indices(max_degree))])


def is_independent(system: LinearSystem, row: EquationRow) -> bool:
    """Whether ``row`` lies outside the span of the rows accepted by ``system``."""
    return system.is_independent(_project(row, _system_degree(system)))


def _system_degree(system: LinearSystem) -> int:
    return max(a.degree for a in system.labels)


@dataclass
class TraceEntry:
    row: str
    n: int
    independent: bool
    rank_after: int


@dataclass
class SolveResult:
    max_degree: int
    rank: int
    unknowns: tuple[MultiIndex, ...]
    table: CoeffTable | None
    free: tuple[MultiIndex, ...]
    kernel: tuple[dict, ...]
    trace: list[TraceEntry]
    skipped: list[str]

    @property
    def unique(self) -> bool:
        return self.table is not None


def solve_coefficients(
    rows: Sequence[EquationRow],
    max_degree: int = MAX_DEGREE,
    fixed: CoeffTable | None = None,
) -> SolveResult:
    """Solve for the b_alpha with |alpha| <= max_degree.

    Rows of dimension above ``max_degree`` are skipped.  With ``fixed``, the
    coefficients of degree <= fixed.max_degree are taken as known and only the
    remaining ones are unknowns.
    """
    all_indices = enumerate_multi_indices(max_degree)
    low = fixed.max_degree if fixed is not None else 0
    if low >= max_degree:
        raise InterpolationError("fixed table already covers the requested degree")
    unknowns = tuple(a for a in all_indices if a.degree > low)
    system = LinearSystem(unknowns)
    trace, skipped = [], []
    for row in rows:
        if row.n > max_degree:
            skipped.append(row.label)
            continue
        full = dict(zip(all_indices, row.coefficients))
        rhs = row.rhs - sum((fixed[a] * full[a] for a in all_indices if a.degree <= low), Fraction(0)) \
            if fixed is not None else row.rhs
        try:
            independent = system.add([full[a] for a in unknowns], rhs)
        except InconsistentSystemError as exc:
            raise InterpolationError(
                f"row {row.label} with grading {row.grading} contradicts the previous rows"
            ) from exc
        trace.append(TraceEntry(row.label, row.n, independent, system.rank))
    sol = system.solve()
    table = None
    if sol.unique:
        values = dict(fixed.values) if fixed is not None else {}
        values.update(sol.values)
        table = CoeffTable(max_degree, values)
    log.debug("solved degree %d: rank %d of %d", max_degree, sol.rank, len(unknowns))
    return SolveResult(max_degree, sol.rank, unknowns, table, sol.free, sol.kernel, trace, skipped)


def solve_cumulative(rows: Sequence[EquationRow], max_degree: int = MAX_DEGREE) -> list[SolveResult]:
    """Solve degree by degree, fixing each solved block before the next one.

    Samples start at n = 2, so the first step solves degrees 1 and 2 together.
    """
    results = []
    fixed = None
    for deg in range(2, max_degree + 1):
        res = solve_coefficients([r for r in rows if r.n <= deg], deg, fixed)
        results.append(res)
        if not res.unique:
            break
        fixed = res.table
    return results


def _format_block(block: dict[MultiIndex, Fraction], degree: int) -> str:
    items = [(a, v) for a, v in sorted(block.items()) if v]
    if not items:
        return ""
    denom = factorial(degree + 1)
    scale = lcm(denom, *(v.denominator for _, v in items))
    parts = []
    for i, (a, v) in enumerate(items):
        k = v * scale
        sign = "-" if k < 0 else "+"
        mag = abs(k.numerator)
        body = a.monomial() if mag == 1 else f"{mag}*{a.monomial()}"
        parts.append(("-" if sign == "-" else "") + body if i == 0 else f"{sign}{body}")
    prefix = f"1/{degree + 1}!" if scale == denom else f"1/{scale}"
    return f"{prefix}*({''.join(parts)})"


def render_formula(b: CoeffTable, n: int) -> str:
    """Text of the universal form for dimension ``n`` with table ``b``."""
    if b.max_degree < n:
        raise InterpolationError(f"table covers degree {b.max_degree}, need {n}")
    terms = []
    for deg in range(1, n + 1):
        text = _format_block(b.block(deg), deg)
        if not text:
            continue
        rest = n - deg
        terms.append(f"{text}*sigma{rest}" if rest else text)
    if not terms:
        return "0"
    sign = "-" if n % 2 else ""
    return f"mu_I = {sign}1/sigma{n} * ( " + " + ".join(terms) + " )"
