"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

Number = Union[int, Fraction]
Monomial = tuple[int, ...]


class PolynomialError(ValueError):
    pass


class UnknownVariableError(PolynomialError):
    pass


class NotDivisibleError(PolynomialError, ArithmeticError):
    """Raised when an exact division leaves a nonzero remainder."""


def _merge_variables(a: tuple[str, ...], b: tuple[str, ...]) -> tuple[str, ...]:
    if a == b:
        return a
    seen = set(a)
    return a + tuple(v for v in b if v not in seen)


def _grlex_key(exps: Monomial) -> tuple:
    # sorting ascending on this key gives the descending graded-lex order
    return (-sum(exps), tuple(-e for e in exps))


class Polynomial:
    """Immutable polynomial over the rationals in a named variable context.

    Terms map exponent vectors (aligned with ``variables``) to nonzero
    Fractions. Operands with different variable lists are unified by name.
    """

    __slots__ = ("_vars", "_terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[Monomial, Number] | None = None):
        vs = tuple(variables)
        if len(set(vs)) != len(vs):
            raise PolynomialError(f"duplicate variable names in {vs}")
        clean: dict[Monomial, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(vs):
                raise PolynomialError(f"exponent vector {exps} does not match {len(vs)} variables")
            if any(e < 0 for e in exps):
                raise PolynomialError(f"negative exponent in {exps}")
            c = Fraction(coeff)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if not clean[exps]:
                    del clean[exps]
        self._vars = vs
        self._terms = clean

    # construction helpers

    @classmethod
    def constant(cls, value: Number, variables: Iterable[str] = ()) -> Polynomial:
        vs = tuple(variables)
        return cls(vs, {(0,) * len(vs): value})

    @classmethod
    def variable(cls, name: str, variables: Iterable[str] | None = None) -> Polynomial:
        vs = tuple(variables) if variables is not None else (name,)
        if name not in vs:
            raise UnknownVariableError(f"unknown variable {name!r}")
        exps = tuple(1 if v == name else 0 for v in vs)
        return cls(vs, {exps: 1})

    @classmethod
    def monomial(cls, powers: Mapping[str, int], coeff: Number = 1,
                 variables: Iterable[str] | None = None) -> Polynomial:
        vs = tuple(variables) if variables is not None else tuple(powers)
        unknown = set(powers) - set(vs)
        if unknown:
            raise UnknownVariableError(f"unknown variable(s) {sorted(unknown)}")
        return cls(vs, {tuple(powers.get(v, 0) for v in vs): coeff})

    # basic accessors

    @property
    def variables(self) -> tuple[str, ...]:
        return self._vars

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]))

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise PolynomialError(f"{self} is not constant")
        return self._terms.get((0,) * len(self._vars), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def used_variables(self) -> tuple[str, ...]:
        return tuple(v for i, v in enumerate(self._vars) if any(e[i] for e in self._terms))

    def leading_term(self) -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise PolynomialError("zero polynomial has no leading term")
        return self.items()[0]

    # variable context

    def with_variables(self, variables: Iterable[str]) -> Polynomial:
        """Re-express in a new variable list, which must cover all used variables."""
        vs = tuple(variables)
        if vs == self._vars:
            return self
        missing = set(self.used_variables()) - set(vs)
        if missing:
            raise UnknownVariableError(f"variable(s) {sorted(missing)} not in {vs}")
        pos = {v: i for i, v in enumerate(self._vars)}
        new = {}
        for exps, c in self._terms.items():
            new[tuple(exps[pos[v]] if v in pos else 0 for v in vs)] = c
        return Polynomial(vs, new)

    def _unify(self, other: Polynomial | Number) -> tuple[Polynomial, Polynomial]:
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other, self._vars)
        vs = _merge_variables(self._vars, other._vars)
        return self.with_variables(vs), other.with_variables(vs)

    # arithmetic

    def __add__(self, other: Polynomial | Number) -> Polynomial:
        if not isinstance(other, (Polynomial, int, Fraction)):
            return NotImplemented
        a, b = self._unify(other)
        terms = dict(a._terms)
        for exps, c in b._terms.items():
            terms[exps] = terms.get(exps, Fraction(0)) + c
        return Polynomial(a._vars, terms)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(self._vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Polynomial | Number) -> Polynomial:
        if not isinstance(other, (Polynomial, int, Fraction)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Number) -> Polynomial:
        return (-self) + other

    def __mul__(self, other: Polynomial | Number) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            return Polynomial(self._vars, {e: c * other for e, c in self._terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self._unify(other)
        terms: dict[Monomial, Fraction] = {}
        for e1, c1 in a._terms.items():
            for e2, c2 in b._terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return Polynomial(a._vars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        if not isinstance(k, int) or k < 0:
            raise PolynomialError(f"exponent must be a non-negative integer, got {k!r}")
        result = Polynomial.constant(1, self._vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, factor: Number) -> Polynomial:
        return self * Fraction(factor)

    def __truediv__(self, other: Number) -> Polynomial:
        if isinstance(other, Polynomial):
            return exact_divide(self, other)
        other = Fraction(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        return self * (1 / other)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self._unify(other)
        return a._terms == b._terms

    def __hash__(self) -> int:
        named = frozenset(
            (tuple((v, k) for v, k in zip(self._vars, e) if k), c) for e, c in self._terms.items()
        )
        return hash(named)

    # evaluation and calculus

    def subs(self, values: Mapping[str, Polynomial | Number]) -> Polynomial:
        """Substitute numbers or polynomials for variables by name."""
        unknown = set(values) - set(self._vars)
        if unknown:
            raise UnknownVariableError(f"cannot substitute unknown variable(s) {sorted(unknown)}")
        keep = tuple(v for v in self._vars if v not in values)
        ctx = keep
        for val in values.values():
            if isinstance(val, Polynomial):
                ctx = _merge_variables(ctx, val._vars)
        repl = {}
        for v, val in values.items():
            repl[v] = val.with_variables(ctx) if isinstance(val, Polynomial) else Polynomial.constant(val, ctx)
        result = Polynomial((), {}).with_variables(ctx)
        powers_cache: dict[tuple[str, int], Polynomial] = {}
        for exps, c in self._terms.items():
            term = Polynomial.constant(c, ctx)
            mono = {}
            for v, k in zip(self._vars, exps):
                if not k:
                    continue
                if v in repl:
                    key = (v, k)
                    if key not in powers_cache:
                        powers_cache[key] = repl[v] ** k
                    term = term * powers_cache[key]
                else:
                    mono[v] = k
            if mono:
                term = term * Polynomial.monomial(mono, 1, ctx)
            result = result + term
        return result

    def evaluate(self, values: Mapping[str, Number]) -> Fraction:
        """Evaluate at a point covering every used variable."""
        return self.subs({v: values[v] for v in self._vars if v in values}).constant_value()

    def coefficient(self, powers: Mapping[str, int]) -> Fraction:
        unknown = set(powers) - set(self._vars)
        if unknown:
            raise UnknownVariableError(f"unknown variable(s) {sorted(unknown)}")
        exps = tuple(powers.get(v, 0) for v in self._vars)
        return self._terms.get(exps, Fraction(0))

    def diff(self, name: str) -> Polynomial:
        if name not in self._vars:
            raise UnknownVariableError(f"unknown variable {name!r}")
        i = self._vars.index(name)
        terms = {}
        for exps, c in self._terms.items():
            if exps[i]:
                e = list(exps)
                e[i] -= 1
                terms[tuple(e)] = c * exps[i]
        return Polynomial(self._vars, terms)

    def weighted_degrees(self, weights: Mapping[str, int]) -> set[int]:
        """Set of weighted degrees of the monomials present."""
        ws = [weights[v] for v in self._vars]
        return {sum(w * e for w, e in zip(ws, exps)) for exps in self._terms}

    # printing

    def monomial_str(self, exps: Monomial) -> str:
        parts = []
        for v, k in zip(self._vars, exps):
            if k == 1:
                parts.append(v)
            elif k > 1:
                parts.append(f"{v}^{k}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for i, (exps, c) in enumerate(self.items()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = self.monomial_str(exps)
            if not mono:
                body = str(a.numerator)
            elif a.numerator == 1:
                body = mono
            else:
                body = f"{a.numerator}*{mono}"
            if a.denominator != 1:
                body = f"{body}/{a.denominator}"
            if i == 0:
                out.append(body if sign == "+" else "-" + body)
            else:
                out.append(sign + body)
        return "".join(out)

    def __repr__(self) -> str:
        return f"Polynomial({list(self._vars)!r}, {str(self)!r})"


def exact_divide(p: Polynomial, q: Polynomial) -> Polynomial:
    """Return r with r*q == p, or raise NotDivisibleError.

    Long division by leading terms in graded-lex order; if q divides p the
    remainder is zero, so any leftover term proves non-divisibility.
    """
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    p, q = p._unify(q)
    lq_exp, lq_coeff = q.leading_term()
    quotient: dict[Monomial, Fraction] = {}
    rem = p
    while not rem.is_zero():
        lr_exp, lr_coeff = rem.leading_term()
        shift = tuple(a - b for a, b in zip(lr_exp, lq_exp))
        if any(s < 0 for s in shift):
            raise NotDivisibleError(f"({p}) is not divisible by ({q})")
        c = lr_coeff / lq_coeff
        quotient[shift] = quotient.get(shift, Fraction(0)) + c
        rem = rem - Polynomial(p.variables, {shift: c}) * q
    return Polynomial(p.variables, quotient)
