"""Samples, the sample file format, and the builtin catalog of germs.

File format: records start with a ``[sample]`` line followed by
``key = value`` lines.  Keys: name, n, weights, degrees, mu, stable,
inv.<LABEL>, erratum.<LABEL>, vars, map, note.  Blank lines and ``#``
comments are ignored.  ``erratum.<LABEL>`` records a value printed in the
source tables that disagrees with the stored ``inv.<LABEL>``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator

from .core import PolynomialError
from .germs import GermError, MapGerm, check_weighted_homogeneous, corank_at_zero, split_top_level
from .grading import Grading, GradingError, unfold_trivial
from .interpolation import MAX_DEGREE, EquationRow, sample_equation, stable_equations
from .invariants import (
    INFINITE,
    LABELS,
    MU_I,
    UNKNOWN,
    Special,
    check_corank1_relations,
    check_vanishing_implications,
    invariant_report,
    mu_image,
)

BUILTIN = "catalog.samples"


class SampleFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        where = f"{path or '<input>'}:{line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


class SampleValidationError(ValueError):
    def __init__(self, sample: str, message: str):
        super().__init__(f"sample {sample!r}: {message}")
        self.sample = sample


@dataclass
class Sample:
    name: str
    grading: Grading
    mu: object = UNKNOWN  # Fraction, INFINITE or UNKNOWN
    invariants: dict = field(default_factory=dict)  # label -> Fraction or INFINITE
    errata: dict = field(default_factory=dict)  # label -> printed Fraction
    stable: bool = False
    variables: tuple[str, ...] | None = None
    map_text: tuple[str, ...] | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.grading.n

    @property
    def germ(self) -> MapGerm | None:
        if self.map_text is None:
            return None
        return MapGerm.from_text(self.variables, self.map_text)

    @property
    def corank(self):
        germ = self.germ
        return UNKNOWN if germ is None else corank_at_zero(germ)

    @property
    def overrides(self) -> dict:
        return {k: v for k, v in self.invariants.items() if v is INFINITE}

    def validate(self) -> None:
        if self.stable and self.mu != 0:
            raise SampleValidationError(self.name, f"stable sample must have mu = 0, got {self.mu}")
        for label in list(self.invariants) + list(self.errata):
            if label not in LABELS:
                raise SampleValidationError(self.name, f"unknown invariant label {label!r}")
            if LABELS[label].dimension > self.n:
                raise SampleValidationError(self.name, f"#{label} does not exist for n = {self.n}")
        if (self.variables is None) != (self.map_text is None):
            raise SampleValidationError(self.name, "vars and map must be given together")
        if self.map_text is not None:
            try:
                germ = self.germ
            except (PolynomialError, GermError) as exc:
                raise SampleValidationError(self.name, f"bad map: {exc}") from exc
            result = check_weighted_homogeneous(germ, self.grading)
            if not result:
                raise SampleValidationError(self.name, f"map is not homogeneous for {self.grading}: {result}")


def _fmt_value(v) -> str:
    if isinstance(v, Special):
        return str(v)
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else str(v)


def _parse_value(text: str, allow_unknown: bool, line: int, path) -> object:
    t = text.strip()
    if t == "inf":
        return INFINITE
    if t == "unknown" and allow_unknown:
        return UNKNOWN
    if re.fullmatch(r"-?\d+", t):
        return Fraction(int(t))
    raise SampleFormatError(f"expected an integer{', inf or unknown' if allow_unknown else ' or inf'}, got {t!r}", line, path)


def _parse_ints(text: str, key: str, line: int, path) -> tuple[int, ...]:
    parts = [p.strip() for p in text.split(",")]
    if not all(re.fullmatch(r"\d+", p) for p in parts):
        raise SampleFormatError(f"{key} must be comma-separated positive integers, got {text!r}", line, path)
    return tuple(int(p) for p in parts)


def parse_samples(text: str, path: str | None = None) -> list[Sample]:
    records: list[tuple[int, list[tuple[int, str, str]]]] = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line == "[sample]":
            current = (lineno, [])
            records.append(current)
            continue
        if current is None:
            raise SampleFormatError("content before the first [sample] line", lineno, path)
        if "=" not in line:
            raise SampleFormatError(f"expected 'key = value', got {line!r}", lineno, path)
        key, value = (s.strip() for s in line.split("=", 1))
        current[1].append((lineno, key, value))
    return [_build_sample(start, body, path) for start, body in records]


def _build_sample(start: int, body, path) -> Sample:
    fields: dict[str, object] = {}
    invariants, errata, notes = {}, {}, []
    seen = set()
    for lineno, key, value in body:
        if key != "note":
            if key in seen:
                raise SampleFormatError(f"duplicate key {key!r}", lineno, path)
            seen.add(key)
        if key == "name":
            if not value:
                raise SampleFormatError("empty name", lineno, path)
            fields["name"] = value
        elif key == "n":
            if not re.fullmatch(r"\d+", value):
                raise SampleFormatError(f"n must be a positive integer, got {value!r}", lineno, path)
            fields["n"] = (int(value), lineno)
        elif key in ("weights", "degrees"):
            fields[key] = _parse_ints(value, key, lineno, path)
        elif key == "mu":
            fields["mu"] = _parse_value(value, True, lineno, path)
        elif key == "stable":
            if value not in ("true", "false"):
                raise SampleFormatError(f"stable must be true or false, got {value!r}", lineno, path)
            fields["stable"] = value == "true"
        elif key.startswith("inv."):
            invariants[key[4:]] = _parse_value(value, False, lineno, path)
        elif key.startswith("erratum."):
            v = _parse_value(value, False, lineno, path)
            errata[key[8:]] = v
        elif key == "vars":
            fields["vars"] = tuple(v.strip() for v in value.split(","))
        elif key == "map":
            fields["map"] = tuple(split_top_level(value))
        elif key == "note":
            notes.append(value)
        else:
            raise SampleFormatError(f"unknown key {key!r}", lineno, path)
    for required in ("name", "weights", "degrees"):
        if required not in fields:
            raise SampleFormatError(f"sample is missing {required!r}", start, path)
    name = fields["name"]
    try:
        grading = Grading(fields["weights"], fields["degrees"])
    except GradingError as exc:
        raise SampleValidationError(name, str(exc)) from exc
    if "n" in fields and fields["n"][0] != grading.n:
        raise SampleFormatError(f"n = {fields['n'][0]} does not match {grading.n} weights", fields["n"][1], path)
    sample = Sample(
        name=name,
        grading=grading,
        mu=fields.get("mu", UNKNOWN),
        invariants=invariants,
        errata=errata,
        stable=fields.get("stable", False),
        variables=fields.get("vars"),
        map_text=fields.get("map"),
        notes=notes,
    )
    sample.validate()
    return sample


def format_samples(samples: Iterable[Sample]) -> str:
    blocks = []
    for s in samples:
        lines = [
            "[sample]",
            f"name = {s.name}",
            f"n = {s.n}",
            f"weights = {','.join(map(str, s.grading.w))}",
            f"degrees = {','.join(map(str, s.grading.d))}",
            f"mu = {_fmt_value(s.mu)}",
            f"stable = {'true' if s.stable else 'false'}",
        ]
        for label in LABELS:
            if label in s.invariants:
                lines.append(f"inv.{label} = {_fmt_value(s.invariants[label])}")
        for label in LABELS:
            if label in s.errata:
                lines.append(f"erratum.{label} = {_fmt_value(s.errata[label])}")
        if s.variables is not None:
            lines.append(f"vars = {','.join(s.variables)}")
            lines.append(f"map = {', '.join(s.map_text)}")
        lines += [f"note = {note}" for note in s.notes]
        blocks.append("\n".join(lines) + "\n")
    return "\n".join(blocks)


def load_samples(path: str | Path) -> list[Sample]:
    path = Path(path)
    return parse_samples(path.read_text(encoding="utf-8"), str(path))


def save_samples(path: str | Path, samples: Iterable[Sample]) -> None:
    Path(path).write_text(format_samples(samples), encoding="utf-8", newline="\n")


class Catalog:
    """Samples keyed by name, in file order."""

    def __init__(self, samples: Iterable[Sample]):
        self._samples: dict[str, Sample] = {}
        for s in samples:
            if s.name in self._samples:
                raise SampleValidationError(s.name, "duplicate sample name")
            self._samples[s.name] = s

    def __iter__(self) -> Iterator[Sample]:
        return iter(self._samples.values())

    def __len__(self) -> int:
        return len(self._samples)

    def __contains__(self, name: str) -> bool:
        return name in self._samples

    def __getitem__(self, name: str) -> Sample:
        try:
            return self._samples[name]
        except KeyError:
            raise KeyError(f"no sample named {name!r}") from None

    def names(self) -> list[str]:
        return list(self._samples)

    def germ_sample(self, name: str) -> Sample:
        """Sample by name, or the first sample ``tau_i(name)`` of that germ."""
        if name in self._samples and self._samples[name].map_text is not None:
            return self._samples[name]
        for s in self:
            if re.fullmatch(rf"tau_\d+\({re.escape(name)}\)", s.name) and s.map_text is not None:
                return s
        raise KeyError(f"no germ named {name!r}")

    def without(self, names: Iterable[str]) -> Catalog:
        drop = set(names)
        missing = drop - set(self._samples)
        if missing:
            raise KeyError(f"no sample(s) named {sorted(missing)}")
        return Catalog(s for s in self if s.name not in drop)

    def only(self, names: Iterable[str]) -> Catalog:
        return Catalog(self[n] for n in names)

    def with_sample(self, sample: Sample) -> Catalog:
        return Catalog([replace(sample) if s.name == sample.name else s for s in self])


def builtin_text() -> str:
    return resources.files("milnor.data").joinpath(BUILTIN).read_text(encoding="utf-8")


def builtin_catalog() -> Catalog:
    catalog = Catalog(parse_samples(builtin_text(), BUILTIN))
    problems = consistency_problems(catalog)
    if problems:
        raise SampleValidationError(BUILTIN, "; ".join(problems))
    return catalog


def interpolation_rows(catalog: Iterable[Sample], max_n: int = MAX_DEGREE) -> list[EquationRow]:
    """Equation rows of every sample, plus all trivial unfoldings of stable samples up to ``max_n``."""
    rows = []
    for s in catalog:
        if isinstance(s.mu, Special) or not 2 <= s.n <= max_n:
            continue
        rows.append(sample_equation(s))
        if s.stable:
            rows.extend(stable_equations(s.grading, range(1, max_n - s.n + 1), s.name))
    return rows


@dataclass(frozen=True)
class CellCheck:
    sample: str  # row name; trivial unfoldings are written name+r
    n: int
    label: str
    expected: object
    got: object
    erratum: object = None  # printed value when it disagrees with the stored one

    @property
    def ok(self) -> bool:
        return self.expected == self.got

    def __str__(self) -> str:
        status = "ok" if self.ok else "FAIL"
        line = f"{status:4} {self.sample} n={self.n} {self.label}: expected {_fmt_value(self.expected)}, got {_fmt_value(self.got)}"
        if self.erratum is not None:
            line += f" (printed {_fmt_value(self.erratum)}, recorded as erratum)"
        return line


def _row_checks(row: str, g: Grading, mu, expected: dict, overrides: dict, errata: dict) -> list[CellCheck]:
    checks = []
    if not isinstance(mu, Special) and 2 <= g.n <= 5:
        checks.append(CellCheck(row, g.n, MU_I, mu, mu_image(g)))
    report = invariant_report(g, overrides=overrides)
    for label in LABELS:
        if label in expected:
            got = report.get(label)
            checks.append(CellCheck(row, g.n, label, expected[label], got, errata.get(label)))
    return checks


def verify_catalog(catalog: Iterable[Sample], n: int | None = None) -> list[CellCheck]:
    """Evaluate every stored cell; stable samples are also checked on their trivial unfoldings.

    An unfolding by r parameters has all invariants of dimension above the
    base vanishing and keeps the base values on slices.
    """
    checks = []
    for s in catalog:
        if s.n > MAX_DEGREE:
            continue
        top = MAX_DEGREE if s.stable else s.n
        for m in range(s.n, top + 1):
            if n is not None and m != n:
                continue
            g = unfold_trivial(s.grading, m - s.n)
            expected = dict(s.invariants)
            if m > s.n:
                expected.update({lab.name: Fraction(0) for lab in LABELS.values() if s.n < lab.dimension <= m})
            row = s.name if m == s.n else f"{s.name}+{m - s.n}"
            checks.extend(_row_checks(row, g, s.mu, expected, s.overrides, s.errata))
    return checks


def consistency_problems(catalog: Iterable[Sample]) -> list[str]:
    """Corank-1 relation and vanishing-diagram failures over the parameterised samples."""
    problems = []
    for s in catalog:
        if s.map_text is None or s.corank != 1:
            continue
        if 3 <= s.n <= 5:
            for rel in check_corank1_relations(s.grading, corank=1):
                if rel.holds is False:
                    problems.append(f"{s.name}: relation {rel.relation} fails ({rel.lhs} != {rel.rhs})")
        report = invariant_report(s.grading, overrides=s.overrides)
        for src, dst in check_vanishing_implications(report):
            problems.append(f"{s.name}: #{src} = 0 but #{dst} != 0")
    return problems
