"""Polynomial map-germs: homogeneity, grading inference, corank and multiple-point ideals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .core import LinearSystem, Polynomial, exact_divide, parse_polynomial
from .core.linalg import nullspace
from .grading import Grading


class GermError(ValueError):
    pass


class GradingInferenceError(GermError):
    pass


@dataclass(frozen=True)
class MapGerm:
    """Polynomial map (C^n, 0) -> (C^{n+1}, 0) given by its components."""

    variables: tuple[str, ...]
    components: tuple[Polynomial, ...]

    def __post_init__(self):
        vs = tuple(self.variables)
        object.__setattr__(self, "variables", vs)
        comps = tuple(c.with_variables(vs) for c in self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) != len(vs) + 1:
            raise GermError(f"a germ in {len(vs)} variables needs {len(vs) + 1} components, got {len(comps)}")

    @classmethod
    def from_text(cls, variables: Sequence[str] | str, components: Sequence[str] | str) -> MapGerm:
        if isinstance(variables, str):
            variables = [v.strip() for v in variables.split(",") if v.strip()]
        if isinstance(components, str):
            components = split_top_level(components)
        vs = tuple(variables)
        return cls(vs, tuple(parse_polynomial(c, vs) for c in components))

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def p(self) -> int:
        return len(self.components)

    def is_normal_form(self) -> bool:
        """Corank <= 1 normal form: components 3.. are the variables 2.. in order."""
        tail = self.components[2:]
        return all(c == Polynomial.variable(v, self.variables) for c, v in zip(tail, self.variables[1:]))

    def text_components(self) -> list[str]:
        return [str(c) for c in self.components]

    def __str__(self) -> str:
        return f"({', '.join(self.variables)}) -> ({', '.join(self.text_components())})"


def split_top_level(text: str) -> list[str]:
    """Split on commas that are not inside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur).strip())
    return parts


@dataclass(frozen=True)
class HomogeneityResult:
    ok: bool
    component: int | None = None  # 1-based
    monomial: str | None = None
    weight: int | None = None
    expected: int | None = None

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "weighted homogeneous"
        return (
            f"component {self.component}: monomial {self.monomial} has weight "
            f"{self.weight}, expected degree {self.expected}"
        )


def check_weighted_homogeneous(germ: MapGerm, g: Grading) -> HomogeneityResult:
    if g.n != germ.n:
        raise GermError(f"grading has n = {g.n} but the germ has {germ.n} variables")
    for i, (comp, deg) in enumerate(zip(germ.components, g.d), start=1):
        for exps, _ in comp.items():
            weight = sum(w * e for w, e in zip(g.w, exps))
            if weight != deg:
                return HomogeneityResult(False, i, comp.monomial_str(exps) or "1", weight, deg)
    return HomogeneityResult(True)


@dataclass(frozen=True)
class GradingCone:
    """Solution space of the homogeneity constraints when it is not a single ray."""

    dimension: int
    basis: tuple[tuple[Fraction, ...], ...]  # entries ordered (w_1..w_n, d_0..d_n)


def infer_grading(germ: MapGerm) -> Grading | GradingCone:
    """Primitive positive grading making ``germ`` weighted homogeneous.

    Unknowns are one weight per variable and one degree per component; each
    monomial of component i imposes ``weight(monomial) = d_i``.
    """
    n = germ.n
    labels = [f"w{j}" for j in range(1, n + 1)] + [f"d{i}" for i in range(n + 1)]
    rows = []
    for i, comp in enumerate(germ.components):
        if any(not any(e) for e, _ in comp.items()):
            raise GradingInferenceError(f"component {i + 1} has a constant term; not a germ at 0")
        for exps, _ in comp.items():
            row = [Fraction(e) for e in exps] + [Fraction(0)] * (n + 1)
            row[n + i] = Fraction(-1)
            rows.append(row)
    kernel = nullspace(labels, rows)
    if not kernel:
        raise GradingInferenceError("no nonzero grading satisfies the homogeneity constraints")
    if len(kernel) > 1:
        return GradingCone(len(kernel), tuple(tuple(v[lab] for lab in labels) for v in kernel))
    vec = [kernel[0][lab] for lab in labels]
    den = lcm(*(x.denominator for x in vec))
    ints = [int(x * den) for x in vec]
    g_ = 0
    for x in ints:
        g_ = gcd(g_, x)
    ints = [x // g_ for x in ints]
    if all(x <= 0 for x in ints):
        ints = [-x for x in ints]
    if any(x <= 0 for x in ints):
        raise GradingInferenceError(
            f"the only grading direction {tuple(ints)} is not strictly positive"
        )
    return Grading(tuple(ints[:n]), tuple(ints[n:]))


def linear_part_rank(germ: MapGerm) -> int:
    system = LinearSystem(germ.variables)
    for comp in germ.components:
        row = [comp.coefficient({v: 1}) for v in germ.variables]
        if any(row):
            system.add(row, 0)
    return system.rank


def corank_at_zero(germ: MapGerm) -> int:
    return germ.n - linear_part_rank(germ)


def _rename(f: Polynomial, old: str, new: str, ambient: Sequence[str]) -> Polynomial:
    return f.subs({old: Polynomial.variable(new, ambient)}).with_variables(ambient)


def divided_difference_tower(f: Polynomial, z: str, k: int,
                             point_names: Sequence[str] | None = None) -> list[Polynomial]:
    """Iterated divided differences f[z1,z2], ..., f[z1..zk] of f in the variable z.

    Each level follows
    f[z1..z_{j-2}, z_j] - f[z1..z_{j-1}] divided by z_j - z_{j-1}.
    """
    if k < 2:
        raise GermError(f"divided differences need k >= 2, got {k}")
    if z not in f.variables:
        raise GermError(f"variable {z!r} not in {f.variables}")
    names = tuple(point_names) if point_names else tuple(f"{z}{i}" for i in range(1, k + 1))
    if len(names) < k:
        raise GermError("not enough point names")
    names = names[:k]
    params = tuple(v for v in f.variables if v != z)
    clash = set(names) & set(params)
    if clash:
        raise GermError(f"point names {sorted(clash)} clash with parameters")
    ambient = names + params
    memo: dict[tuple[str, ...], Polynomial] = {}

    def dd(points: tuple[str, ...]) -> Polynomial:
        if points in memo:
            return memo[points]
        if len(points) == 1:
            out = _rename(f, z, points[0], ambient)
        else:
            a = dd(points[:-2] + points[-1:])
            b = dd(points[:-1])
            step = Polynomial.variable(points[-1], ambient) - Polynomial.variable(points[-2], ambient)
            out = exact_divide(a - b, step)
        memo[points] = out
        return out

    return [dd(names[:j]) for j in range(2, k + 1)]


@dataclass(frozen=True)
class IdealPresentation:
    variables: tuple[str, ...]
    generators: tuple[Polynomial, ...]
    expected_dimension: int
    k: int


def multiple_point_ideal(germ: MapGerm, k: int) -> IdealPresentation:
    """Generators of the k-th multiple point space of a corank-1 normal form germ."""
    if not germ.is_normal_form():
        raise GermError("multiple point spaces need a germ in normal form (f1, f2, y1, ..., y_{n-1})")
    if k < 2:
        raise GermError(f"k must be >= 2, got {k}")
    z = germ.variables[0]
    names = tuple(f"{z}{i}" for i in range(1, k + 1))
    gens = []
    for f in germ.components[:2]:
        gens.extend(divided_difference_tower(f, z, k, names))
    params = germ.variables[1:]
    ambient = names + params
    gens = tuple(gp.with_variables(ambient) for gp in gens)
    n, p = germ.n, germ.p
    return IdealPresentation(ambient, gens, k * n - (k - 1) * p, k)


def emit_ideal(ip: IdealPresentation, style: str = "plain") -> str:
    if not ip.generators:
        raise GermError("ideal presentation has no generators")
    gens = [str(gp) for gp in ip.generators]
    if style == "plain":
        return "\n".join([f"vars: {', '.join(ip.variables)}", *gens]) + "\n"
    if style == "cas":
        lines = [
            f"// multiple point space D^{ip.k}, expected dimension {ip.expected_dimension}",
            f"ring r = 0, ({', '.join(ip.variables)}), dp;",
            "ideal I =",
        ]
        lines += [f"  {gtxt}{',' if i < len(gens) - 1 else ';'}" for i, gtxt in enumerate(gens)]
        return "\n".join(lines) + "\n"
    raise GermError(f"unknown export style {style!r}")
