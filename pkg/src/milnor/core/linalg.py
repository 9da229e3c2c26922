"""Exact linear systems kept in incremental reduced row-echelon form."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Sequence


class InconsistentSystemError(ArithmeticError):
    def __init__(self, row_index: int, message: str = ""):
        super().__init__(message or f"row {row_index} is inconsistent with the previous rows")
        self.row_index = row_index


@dataclass(frozen=True)
class Solution:
    unique: bool
    rank: int
    values: dict  # label -> Fraction; particular solution with free unknowns set to 0
    free: tuple  # labels of free unknowns
    kernel: tuple  # basis vectors, each a dict label -> Fraction


@dataclass
class LinearSystem:
    """Rows ``coeffs . x = rhs`` over the rationals.

    The accepted rows are kept as an RREF basis keyed by pivot column, so an
    independence query costs one reduction against the current basis.
    """

    labels: tuple[Hashable, ...]
    rows: list[tuple[tuple[Fraction, ...], Fraction]] = field(default_factory=list)
    _basis: dict[int, list[Fraction]] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        self.labels = tuple(self.labels)
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("unknown labels must be distinct")
        pending, self.rows = self.rows, []
        for coeffs, rhs in pending:
            self.add(coeffs, rhs)

    @property
    def rank(self) -> int:
        return len(self._basis)

    def _coerce(self, coeffs) -> list[Fraction]:
        if isinstance(coeffs, dict):
            unknown = set(coeffs) - set(self.labels)
            if unknown:
                raise KeyError(f"unknown labels {sorted(map(str, unknown))}")
            return [Fraction(coeffs.get(lab, 0)) for lab in self.labels]
        if len(coeffs) != len(self.labels):
            raise ValueError(f"row has {len(coeffs)} entries, expected {len(self.labels)}")
        return [Fraction(c) for c in coeffs]

    def _reduce(self, vec: list[Fraction]) -> list[Fraction]:
        # vec carries the rhs in its last slot
        vec = list(vec)
        for col, brow in self._basis.items():
            f = vec[col]
            if f:
                for j, b in enumerate(brow):
                    if b:
                        vec[j] -= f * b
        return vec

    def residual(self, coeffs, rhs=0) -> list[Fraction]:
        """Row after reduction by the current basis (rhs in the last slot)."""
        return self._reduce(self._coerce(coeffs) + [Fraction(rhs)])

    def is_independent(self, coeffs) -> bool:
        """Whether the homogeneous part of the row lies outside the row span."""
        red = self.residual(coeffs, 0)
        return any(red[:-1])

    def add(self, coeffs, rhs=0) -> bool:
        """Insert a row; return True if it raised the rank.

        Raises InconsistentSystemError if the row reduces to ``0 = nonzero``.
        """
        index = len(self.rows)
        vec = self._coerce(coeffs)
        red = self._reduce(vec + [Fraction(rhs)])
        pivot = next((j for j, v in enumerate(red[:-1]) if v), None)
        if pivot is None:
            if red[-1]:
                raise InconsistentSystemError(index)
            self.rows.append((tuple(vec), Fraction(rhs)))
            return False
        p = red[pivot]
        red = [v / p for v in red]
        for brow in self._basis.values():
            f = brow[pivot]
            if f:
                for j, v in enumerate(red):
                    if v:
                        brow[j] -= f * v
        self._basis[pivot] = red
        self._basis = dict(sorted(self._basis.items()))
        self.rows.append((tuple(vec), Fraction(rhs)))
        return True

    def echelon(self) -> list[tuple[tuple[Fraction, ...], Fraction]]:
        return [(tuple(r[:-1]), r[-1]) for r in self._basis.values()]

    def solve(self) -> Solution:
        n = len(self.labels)
        pivots = list(self._basis)
        free_cols = [j for j in range(n) if j not in self._basis]
        values = {lab: Fraction(0) for lab in self.labels}
        for col, brow in self._basis.items():
            values[self.labels[col]] = brow[-1]
        kernel = []
        for fc in free_cols:
            vec = {lab: Fraction(0) for lab in self.labels}
            vec[self.labels[fc]] = Fraction(1)
            for col in pivots:
                vec[self.labels[col]] = -self._basis[col][fc]
            kernel.append(vec)
        return Solution(
            unique=not free_cols,
            rank=len(pivots),
            values=values,
            free=tuple(self.labels[j] for j in free_cols),
            kernel=tuple(kernel),
        )


def solve_exact(labels: Sequence[Hashable], rows: Sequence[tuple[Sequence, object]]) -> Solution:
    """Solve a system given as (coefficients, rhs) pairs."""
    system = LinearSystem(tuple(labels))
    for coeffs, rhs in rows:
        system.add(coeffs, rhs)
    return system.solve()


def nullspace(labels: Sequence[Hashable], rows: Sequence[Sequence]) -> tuple:
    """Basis of the solution space of the homogeneous system."""
    return solve_exact(labels, [(r, 0) for r in rows]).kernel
