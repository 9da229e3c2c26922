"""Image Milnor numbers and 0-stable invariants evaluated from a grading."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .core import Polynomial, parse_polynomial
from .formulas import CLASS_VARS, MU_DISPLAYED, SIGMA_VARS, ZERO_STABLE
from .grading import Grading, GradingError, chern_data, slice_grading
from .interpolation import generic_mu, paper_b_table


class Special(enum.Enum):
    INFINITE = "inf"
    UNKNOWN = "unknown"
    NOT_APPLICABLE = "n/a"

    def __str__(self) -> str:
        return self.value


INFINITE = Special.INFINITE
UNKNOWN = Special.UNKNOWN
NOT_APPLICABLE = Special.NOT_APPLICABLE

MU_I = "MU_I"


class InvariantError(ValueError):
    pass


@dataclass(frozen=True)
class InvariantLabel:
    name: str
    dimension: int
    prefactor: int
    numerator: Polynomial

    def __str__(self) -> str:
        return self.name


def _build_labels() -> dict[str, InvariantLabel]:
    return {
        name: InvariantLabel(name, dim, pref, parse_polynomial(text, CLASS_VARS))
        for name, (dim, pref, text) in ZERO_STABLE.items()
    }


LABELS: dict[str, InvariantLabel] = _build_labels()
LABEL_NAMES = tuple(LABELS)


def get_label(label: str | InvariantLabel) -> InvariantLabel:
    if isinstance(label, InvariantLabel):
        return label
    try:
        return LABELS[label]
    except KeyError:
        raise InvariantError(f"unknown invariant label {label!r}") from None


def labels_for(n: int) -> list[InvariantLabel]:
    return [lab for lab in LABELS.values() if lab.dimension == n]


def _class_values(g: Grading) -> dict[str, Fraction]:
    data = chern_data(g)
    vals = {"s0": data.s0}
    for k in range(1, 6):
        # c_k with k > n never survives in a formula of dimension n
        vals[f"c{k}"] = data.c[k] if k <= g.n else Fraction(0)
    return vals


def zero_stable(g: Grading, label: str | InvariantLabel) -> Fraction:
    lab = get_label(label)
    if lab.dimension != g.n:
        raise InvariantError(f"#{lab.name} is an invariant for n = {lab.dimension}, grading has n = {g.n}")
    value = lab.numerator.evaluate(_class_values(g))
    return value / (lab.prefactor * chern_data(g).sigma[g.n])


def mu_image(g: Grading) -> Fraction:
    """Image Milnor number from the universal coefficient table."""
    if not 2 <= g.n <= 5:
        raise InvariantError(f"mu_I formulas exist for 2 <= n <= 5, got n = {g.n}")
    return generic_mu(g, paper_b_table())


@lru_cache(maxsize=None)
def _displayed(n: int) -> Polynomial:
    return parse_polynomial(MU_DISPLAYED[n], CLASS_VARS + SIGMA_VARS)


def mu_displayed(g: Grading) -> Fraction:
    """Image Milnor number from the block-by-block displayed formula for n."""
    if g.n not in MU_DISPLAYED:
        raise InvariantError(f"no displayed formula for n = {g.n}")
    vals = _class_values(g)
    data = chern_data(g)
    for k in range(1, 6):
        vals[f"sig{k}"] = Fraction(data.sigma[k]) if k <= g.n else Fraction(0)
    return _displayed(g.n).evaluate(vals) / data.sigma[g.n]


@dataclass
class ReportEntry:
    label: str
    value: object  # Fraction or Special
    via_slice: bool
    caveat: bool = False
    overridden: bool = False
    error: str | None = None

    @property
    def finite(self) -> bool:
        return isinstance(self.value, Fraction)


@dataclass
class InvariantReport:
    grading: Grading
    mu: object  # Fraction or NOT_APPLICABLE
    entries: list[ReportEntry] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)

    def get(self, label: str):
        if label == MU_I:
            return self.mu
        for e in self.entries:
            if e.label == label:
                return e.value
        raise KeyError(label)

    def values(self) -> dict[str, object]:
        out = {MU_I: self.mu}
        out.update({e.label: e.value for e in self.entries})
        return out


def invariant_report(
    g: Grading,
    slices: bool = True,
    overrides: Mapping[str, object] | None = None,
) -> InvariantReport:
    """mu_I and every #eta of dimension <= n.

    Lower-dimensional labels are evaluated on the grading with the last
    parameter pairs removed and always carry a caveat; ``overrides`` (the
    catalog's INFINITE cells) replace computed values.
    """
    overrides = dict(overrides or {})
    mu = mu_image(g) if 2 <= g.n <= 5 else NOT_APPLICABLE
    report = InvariantReport(g, mu)
    for lab in LABELS.values():
        if lab.dimension > g.n:
            continue
        via_slice = lab.dimension < g.n
        if via_slice and not slices:
            continue
        entry = ReportEntry(lab.name, NOT_APPLICABLE, via_slice, caveat=via_slice)
        try:
            target = slice_grading(g, g.n - lab.dimension) if via_slice else g
            entry.value = zero_stable(target, lab)
        except GradingError as exc:
            entry.error = str(exc)
        if lab.name in overrides:
            entry.value = overrides[lab.name]
            entry.overridden = True
        report.entries.append(entry)
    report.flags = integrality_screen(g)
    return report


@dataclass(frozen=True)
class RelationCheck:
    relation: str
    lhs: object
    rhs: object
    holds: object  # True, False or NOT_APPLICABLE


def _a0(k: int, rest: str = "") -> str:
    if k == 0:
        return rest
    head = "A0" if k == 1 else f"A0^{k}"
    return head + rest


def check_corank1_relations(g: Grading, corank: int | None = None) -> list[RelationCheck]:
    """Evaluate the corank-1 relations between #eta(F) and #eta of its slice.

    The slice keeps n-2 of the n-1 parameters (one pair removed).  ``corank``
    defaults to the number of non-parameter source variables of the grading.
    """
    n = g.n
    if not 3 <= n <= 5:
        raise InvariantError(f"relations are stated for 3 <= n <= 5, got n = {n}")
    if corank is None:
        corank = n - g.trailing_pairs()
    s = slice_grading(g, 1)
    w1, wn = g.w[0], g.w[-1]
    d0, d1 = g.d[0], g.d[1]

    def f(name):
        return zero_stable(g, name)

    def fs(name):
        return zero_stable(s, name)

    rels = [
        ("R1", lambda: f(_a0(n + 1)),
         lambda: fs(_a0(n)) * Fraction((d0 - n * w1) * (d1 - n * w1), (n + 1) * w1 * wn)),
        ("R2", lambda: f(_a0(n - 2, "A1")),
         lambda: fs(_a0(n - 3, "A1")) * Fraction((d0 - (n - 1) * w1) * (d1 - (n - 1) * w1), (n - 2) * w1 * wn)),
        ("R3", lambda: f(_a0(n - 2, "A1")),
         lambda: fs(_a0(n)) * Fraction(n * (n - 1) * w1, wn)),
    ]
    if n >= 4:
        rels.append(("R4", lambda: f(_a0(n - 4, "A2")),
                     lambda: fs(_a0(n - 3, "A1")) * Fraction((n - 3) * w1, wn)))
    if n == 5:
        # A1^2 only exists at n = 5, so this one compares two invariants of F
        rels.append(("R5", lambda: f("A0A2"), lambda: 2 * f("A1^2")))
    out = []
    for rid, lhs, rhs in rels:
        if corank != 1:
            out.append(RelationCheck(rid, NOT_APPLICABLE, NOT_APPLICABLE, NOT_APPLICABLE))
            continue
        a, b = lhs(), rhs()
        out.append(RelationCheck(rid, a, b, a == b))
    return out


# (source, target): vanishing of source forces vanishing of target in corank 1
_ONE_WAY = [
    ("A0^2", "A0^3"), ("A0^3", "A0^4"), ("A0^4", "A0^5"), ("A0^5", "A0^6"),
    ("A1", "A0A1"), ("A0A1", "A0^2A1"), ("A0^2A1", "A0^3A1"),
    ("A2", "A0A2"),
]
_TWO_WAY = [
    ("A0^2", "A1"), ("A0^3", "A0A1"), ("A0^4", "A0^2A1"), ("A0^5", "A0^3A1"),
    ("A0^2A1", "A0A2"), ("A2", "A0A1"), ("A1^2", "A0A2"),
]
VANISHING_ARROWS: tuple[tuple[str, str], ...] = tuple(
    _ONE_WAY + _TWO_WAY + [(b, a) for a, b in _TWO_WAY]
)


def check_vanishing_implications(report: InvariantReport | Mapping[str, object]) -> list[tuple[str, str]]:
    """Arrows source -> target with #source = 0 but #target != 0."""
    values = report.values() if isinstance(report, InvariantReport) else dict(report)
    bad = []
    for src, dst in VANISHING_ARROWS:
        a, b = values.get(src), values.get(dst)
        if isinstance(a, Special) or isinstance(b, Special) or a is None or b is None:
            continue
        if a == 0 and b != 0:
            bad.append((src, dst))
    return bad


def integrality_screen(g: Grading) -> list[str]:
    """Flag negative or non-integral mu_I and own-dimension #eta values."""
    flags = []
    values: dict[str, Fraction] = {}
    if 2 <= g.n <= 5:
        values[MU_I] = mu_image(g)
    for lab in labels_for(g.n):
        values[lab.name] = zero_stable(g, lab)
    for name, v in values.items():
        if v.denominator != 1:
            flags.append(f"{name} = {v} is not an integer")
        if v < 0:
            flags.append(f"{name} = {v} is negative")
    return flags
