"""Acceptance criteria C1 to C7.

Each test prints one ``Cn PASS|FAIL: ...`` line; the lines are repeated in
the terminal summary.  Run with ``pytest tests/test_acceptance.py -v``.
"""

import random
from fractions import Fraction
from itertools import permutations
from math import gcd

import pytest

from milnor import cli
from milnor.catalog import builtin_text, format_samples, interpolation_rows, parse_samples
from milnor.core import Polynomial, parse_polynomial
from milnor.germs import (
    GradingCone,
    GradingInferenceError,
    MapGerm,
    check_weighted_homogeneous,
    divided_difference_tower,
    infer_grading,
    multiple_point_ideal,
)
from milnor.grading import Grading, check_unfolding_recursion, chern_data, unfold_trivial
from milnor.interpolation import MultiIndex, paper_b_table, sample_equation, solve_coefficients
from milnor.invariants import (
    INFINITE,
    MU_I,
    check_corank1_relations,
    invariant_report,
    labels_for,
    mu_image,
    zero_stable,
)
from oracles import series_quotient

INF = INFINITE

MU_PRINTED = {
    "S_1": 1, "H_2": 2, "P_1": 1, "P_2": 2, "Bhat_3": 33, "F": 52,
    "L_1": 39, "L_2": 87, "L_3": 178, "Dhat_1": 27,
    "Ltilde_1": 149, "Ltilde_2": 321, "Q_1": 711, "Q_2": 144, "Q_3": 654, "Q_4": 862,
    "Mhat_11": 13, "Phat_1": 24, "Nhat_1": 1400,
}

# Frozen copy of the printed invariant tables.  A row is
# (base sample, number of trivial unfolding parameters, {label: value}).
PRINTED_TABLES = {
    2: [
        ("tau_1(R)", 0, {"A0^2": 0, "A1": 0, "A0^3": 0}),
        ("tau_2(R)", 0, {"A0^2": 0, "A1": 0, "A0^3": 0}),
        ("tau_1(A_1)", 0, {"A0^2": INF, "A1": 1, "A0^3": 0}),
        ("tau_2(A_1)", 0, {"A0^2": INF, "A1": 1, "A0^3": 0}),
        ("S_1", 0, {"A0^2": 1, "A1": 2, "A0^3": 0}),
        ("H_2", 0, {"A0^2": 4, "A1": 2, "A0^3": 1}),
    ],
    3: [
        ("tau_1(R)", 1, {"A1": 0, "A0A1": 0, "A0^4": 0}),
        *[(f"tau_{i}(A_1)", 1, {"A1": 1, "A0A1": 0, "A0^4": 0}) for i in (1, 2, 3)],
        ("P_1", 0, {"A1": 3, "A0A1": 2, "A0^4": 0}),
        ("P_2", 0, {"A1": 2, "A0A1": 3, "A0^4": 0}),
        ("Bhat_3", 0, {"A1": 5, "A0A1": 16, "A0^4": 1}),
    ],
    4: [
        ("tau_1(R)", 2, {"A1": 0, "A2": 0, "A0^2A1": 0, "A0^5": 0}),
        *[(f"tau_{i}(A_1)", 2, {"A1": 1, "A2": 0, "A0^2A1": 0, "A0^5": 0}) for i in (1, 2, 3, 4)],
        *[(f"tau_{i}(A_2)", 0, {"A1": INF, "A2": 1, "A0^2A1": 0, "A0^5": 0}) for i in (1, 2, 3)],
        ("L_1", 0, {"A1": 15, "A2": 8, "A0^2A1": 12, "A0^5": 0}),
        ("L_2", 0, {"A1": 12, "A2": 12, "A0^2A1": 12, "A0^5": 0}),
        ("L_3", 0, {"A1": 24, "A2": 15, "A0^2A1": 60, "A0^5": 3}),
        ("Dhat_1", 0, {"A1": INF, "A2": 9, "A0^2A1": 0, "A0^5": 0}),
    ],
    5: [
        ("tau_1(R)", 3, {"A1": 0, "A2": 0, "A0A2": 0, "A0^3A1": 0, "A0^6": 0}),
        *[(f"tau_{i}(A_1)", 3, {"A1": 1, "A2": 0, "A0A2": 0, "A0^3A1": 0, "A0^6": 0}) for i in range(1, 6)],
        *[(f"tau_{i}(A_2)", 1, {"A1": INF, "A2": 1, "A0A2": 0, "A0^3A1": 0, "A0^6": 0}) for i in range(1, 5)],
        ("Ltilde_2", 0, {"A1": 12, "A2": 12, "A0A2": 0, "A0^3A1": 0, "A0^6": 0}),
        ("Ltilde_1", 0, {"A1": 15, "A2": 8, "A0A2": 24, "A0^3A1": 0, "A0^6": 0}),
        ("Q_1", 0, {"A1": 18, "A2": 15, "A0A2": 60, "A0^3A1": 0, "A0^6": 0}),
        ("Q_2", 0, {"A1": 16, "A2": 12, "A0A2": 24, "A0^3A1": 4, "A0^6": 0}),
        ("Q_3", 0, {"A1": 20, "A2": 30, "A0A2": 60, "A0^3A1": 20, "A0^6": 0}),
        ("Q_4", 0, {"A1": 35, "A2": 24, "A0A2": 90, "A0^3A1": 120, "A0^6": 3}),
        ("Mhat_11", 0, {"A1": 3, "A2": 6, "A0A2": 0, "A0^3A1": 0, "A0^6": 0}),
        ("Phat_1", 0, {"A1": 5, "A2": 6, "A0A2": 6, "A0^3A1": 0, "A0^6": 0, "A1^2": 2}),
        ("Nhat_1", 0, {"A1": 5, "A2": 33, "A0A2": 84, "A0^3A1": 0, "A0^6": 0, "A1^2": 40}),
    ],
}

# Printed cells contradicted by the formulas: (sample, label) -> computed value.
# Ltilde_2 has the grading of L_2 plus one pair (1, 1); its printed #A0A2 = 0
# conflicts with the corank-1 relation #A0A2 = 2 * #A0^2A1(L_2) = 24.
PRINTED_ERRATA = {("Ltilde_2", "A0A2"): 24}


def _grading(catalog, name, r):
    g = catalog[name].grading
    return unfold_trivial(g, r) if r else g


def _primitive(g):
    k = 0
    for x in g.w + g.d:
        k = gcd(k, x)
    return Grading(tuple(x // k for x in g.w), tuple(x // k for x in g.d))


# C1

def test_c1_mu_reproduction(catalog, criterion):
    wrong = [(name, mu_image(catalog[name].grading), mu) for name, mu in MU_PRINTED.items()
             if mu_image(catalog[name].grading) != mu]
    stable = [s for s in catalog if s.stable]
    for s in stable:
        for r in range(0, 6 - s.n):
            if mu_image(unfold_trivial(s.grading, r)) != 0:
                wrong.append((f"{s.name}+{r}", mu_image(unfold_trivial(s.grading, r)), 0))
    criterion("C1", not wrong,
              f"{len(MU_PRINTED)} printed mu_I values and {len(stable)} stable samples (all unfoldings to n=5)"
              + (f"; wrong: {wrong}" if wrong else ""))


# C2

def _table_cells(catalog):
    for n, rows in PRINTED_TABLES.items():
        for name, r, cells in rows:
            g = _grading(catalog, name, r)
            assert g.n == n
            overrides = {k: v for k, v in cells.items() if v is INF}
            report = invariant_report(g, overrides=overrides)
            for label, printed in cells.items():
                yield n, name, label, printed, report.get(label)


def test_c2_table_reproduction(catalog, criterion):
    total, bad = 0, []
    for n, name, label, printed, got in _table_cells(catalog):
        total += 1
        expected = PRINTED_ERRATA.get((name, label), printed)
        if got != expected:
            bad.append(f"n={n} {name} #{label}: printed {printed}, got {got}")
    anchors = {
        "H_2": ("A0^2", "A1", "A0^3"),
        "L_3": ("A1", "A2", "A0^2A1", "A0^5"),
        "Q_4": ("A1", "A2", "A0A2", "A0^3A1", "A0^6"),
        "Phat_1": ("A1", "A2", "A0A2", "A0^3A1", "A0^6"),
    }
    spot = {name: tuple(invariant_report(catalog[name].grading).get(lab) for lab in labs)
            for name, labs in anchors.items()}
    spot_ok = spot == {"H_2": (4, 2, 1), "L_3": (24, 15, 60, 3),
                       "Q_4": (35, 24, 90, 120, 3), "Phat_1": (5, 6, 6, 0, 0)}
    criterion("C2", not bad and spot_ok,
              f"{total - len(bad)}/{total} printed cells reproduced, "
              f"{len(PRINTED_ERRATA)} documented erratum (Ltilde_2 #A0A2 printed 0, computed 24)"
              + (f"; failures: {bad}" if bad else "") + ("" if spot_ok else f"; anchors {spot}"))


def test_c2_erratum_follows_from_relation(catalog):
    ltilde2 = catalog["Ltilde_2"].grading
    assert unfold_trivial(catalog["L_2"].grading, 1) == ltilde2
    r4 = next(c for c in check_corank1_relations(ltilde2) if c.relation == "R4")
    assert r4.holds is True and r4.lhs == 24
    assert r4.rhs == 2 * zero_stable(catalog["L_2"].grading, "A0^2A1") == 2 * 12


@pytest.mark.xfail(strict=True, reason="printed Ltilde_2 #A0A2 = 0 contradicts the corank-1 relations")
def test_c2_printed_erratum_cell_as_is(catalog):
    assert zero_stable(catalog["Ltilde_2"].grading, "A0A2") == 0


# C3

def test_c3_interpolation_round_trip(catalog, criterion):
    res = solve_coefficients(interpolation_rows(catalog), 5)
    b = res.table
    table_ok = res.rank == 44 and b == paper_b_table()
    deg2 = [MultiIndex(a) for a in ((1,), (0, 1), (2,), (1, 1), (0, 2), (0, 0, 1))]
    r1 = sample_equation(catalog["tau_1(A_1)"])
    r2 = sample_equation(catalog["tau_2(A_1)"])
    eq_ok = ([r1.coefficient(a) for a in deg2] == [8, 6, 16, 12, 9, 1] and r1.rhs == 0
             and [r2.coefficient(a) for a in deg2] == [9, 6, 18, 12, 8, 1] and r2.rhs == 0)
    sums_ok = (b is not None
               and b[(0, 2)] + b[(1, 1)] + b[(2,)] == 0
               and b[(0, 1)] + b[(1,)] == 0)
    criterion("C3", table_ok and eq_ok and sums_ok,
              f"rank {res.rank}/44, table equals reference: {table_ok}, "
              f"printed cross-cap equations: {eq_ok}, degree-2 sums vanish: {sums_ok}")


# C4

def test_c4_necessity(catalog, criterion):
    no_q4 = solve_coefficients(interpolation_rows(catalog.without(["Q_4"])), 5)
    q4_ok = (not no_q4.unique and all(a.degree == 5 for a in no_q4.free)
             and all(a.degree == 5 for vec in no_q4.kernel for a, v in vec.items() if v))
    no_l3 = solve_coefficients(interpolation_rows(catalog.without(["L_3"]), max_n=4), 4)
    l3_ok = (not no_l3.unique and all(a.degree == 4 for a in no_l3.free)
             and all(a.degree == 4 for vec in no_l3.kernel for a, v in vec.items() if v))
    control = solve_coefficients(interpolation_rows(catalog, max_n=4), 4).unique
    criterion("C4", q4_ok and l3_ok and control,
              f"without Q_4: rank {no_q4.rank}, free {[str(a) for a in no_q4.free]} (degree 5); "
              f"without L_3: rank {no_l3.rank}/25, free {[str(a) for a in no_l3.free]} (degree 4)")


# C5

def _random_grading(rnd, n, top=12):
    return Grading([rnd.randint(1, top) for _ in range(n)], [rnd.randint(1, top) for _ in range(n + 1)])


def _own_values(g):
    out = {lab.name: zero_stable(g, lab) for lab in labels_for(g.n)}
    out[MU_I] = mu_image(g)
    return out


def _rename(f, new, ambient):
    return f.subs({"z": Polynomial.variable(new, ambient)}).with_variables(ambient)


def _random_zy_poly(rnd):
    terms = []
    for _ in range(rnd.randint(1, 4)):
        c = rnd.choice([-5, -3, -2, -1, 1, 2, 4, 7])
        terms.append(f"{'-' if c < 0 else '+'}{abs(c)}*z^{rnd.randint(0, 6)}*y^{rnd.randint(0, 3)}")
    return parse_polynomial("".join(terms).lstrip("+"), ("z", "y"))


def test_c5_property_suites(catalog, criterion):
    rnd = random.Random(2024)
    cases = 120
    counts = {}

    counts["unfolding recursion"] = sum(
        check_unfolding_recursion(_random_grading(rnd, rnd.randint(2, 5))) for _ in range(cases))

    ok = 0
    for _ in range(cases):
        g = _random_grading(rnd, rnd.randint(2, 5))
        base = _own_values(g)
        w, d = list(g.w), list(g.d)
        rnd.shuffle(w)
        rnd.shuffle(d)
        ok += _own_values(g.scaled(rnd.randint(2, 7))) == base and _own_values(Grading(w, d)) == base
    counts["scale/permutation invariance"] = ok

    ok = 0
    for _ in range(cases):
        n = rnd.randint(2, 5)
        w = [rnd.randint(1, 12) for _ in range(n)]
        g = Grading(w, [rnd.randint(1, 20)] + w)
        ok += all(v == 0 for v in _own_values(g).values())
    counts["corank-0 vanishing"] = ok

    ok = 0
    amb = ("z1", "z2", "y")
    z1, z2 = Polynomial.variable("z1", amb), Polynomial.variable("z2", amb)
    for _ in range(cases):
        f = _random_zy_poly(rnd)
        (d2,) = divided_difference_tower(f, "z", 2)
        recon = _rename(f, "z2", amb) == _rename(f, "z1", amb) + (z2 - z1) * d2
        diag = d2.subs({"z1": Polynomial.variable("z", ("z", "y")),
                        "z2": Polynomial.variable("z", ("z", "y"))}) == f.diff("z")
        k = rnd.randint(2, 4)
        top = divided_difference_tower(f, "z", k)[-1]
        names = [f"z{i}" for i in range(1, k + 1)]
        sym = all(top.subs({a: Polynomial.variable(b, names + ["y"]) for a, b in zip(names, p)}) == top
                  for p in permutations(names))
        ok += recon and diag and sym
    counts["divided differences"] = ok

    ok = 0
    for _ in range(cases):
        g = _random_grading(rnd, rnd.randint(1, 5), top=20)
        ok += list(chern_data(g).c) == series_quotient(g.d, g.w, g.n)
    counts["c_k vs series division"] = ok

    rel_samples = [s for s in catalog if s.n >= 3 and s.corank == 1]
    rel_ok = all(c.holds is True for s in rel_samples for c in check_corank1_relations(s.grading))

    passed = all(v == cases for v in counts.values()) and rel_ok and len(rel_samples) >= 10
    detail = ", ".join(f"{k} {v}/{cases}" for k, v in counts.items())
    criterion("C5", passed, f"{detail}, relations on {len(rel_samples)} corank-1 samples: {rel_ok}")


# C6

def test_c6_germ_checks(catalog, criterion):
    mismatches = []
    checked = 0
    for s in catalog:
        if s.map_text is None:
            continue
        checked += 1
        inferred = infer_grading(s.germ)
        if s.stable:
            # the germ of a stable sample has a whole cone of gradings
            if not (isinstance(inferred, GradingCone) and check_weighted_homogeneous(s.germ, s.grading)):
                mismatches.append(s.name)
        elif inferred != _primitive(s.grading):
            mismatches.append(s.name)

    nhat = catalog["Nhat_1"]
    first = nhat.map_text[0]
    assert "(x^4+t)*y" in first
    printed_variant = MapGerm.from_text(nhat.variables, (first.replace("x^4", "x^2"),) + tuple(nhat.map_text[1:]))
    homog = check_weighted_homogeneous(printed_variant, nhat.grading)
    try:
        variant_inferred = infer_grading(printed_variant)
    except GradingInferenceError:
        variant_inferred = None
    nhat_ok = not homog and variant_inferred != nhat.grading

    ideal = multiple_point_ideal(catalog.germ_sample("A_1").germ, 2)
    ambient = ideal.variables
    expected = (parse_polynomial("z1+z2", ambient), parse_polynomial("y", ambient))
    ideal_ok = ideal.generators == expected and ideal.expected_dimension == 1

    criterion("C6", not mismatches and nhat_ok and ideal_ok,
              f"gradings inferred for {checked - len(mismatches)}/{checked} parameterised samples; "
              f"Nhat_1 with x^2*y fails homogeneity ({homog}); "
              f"D^2(A_1) = {{{', '.join(map(str, ideal.generators))}}}, dimension {ideal.expected_dimension}")


# C7

def test_c7_cli_contract(tmp_path, capsys, criterion):
    pristine = cli.main(["verify-paper"])
    text = builtin_text()
    rnd = random.Random(11)
    samples = parse_samples(text)
    perturbed_codes = []
    cells = [(i, lab) for i, s in enumerate(samples) for lab, v in s.invariants.items()
             if isinstance(v, Fraction) or isinstance(v, int)]
    for i, lab in rnd.sample(cells, 4):
        bad = parse_samples(text)
        bad[i].invariants[lab] = bad[i].invariants[lab] + 1
        path = tmp_path / f"bad_{i}.samples"
        path.write_text(format_samples(bad))
        perturbed_codes.append(cli.main(["verify-paper", "--samples", str(path)]))
    canon = tmp_path / "canon.samples"
    canon.write_text(text)
    round_trip = format_samples(parse_samples(canon.read_text())) == text
    capsys.readouterr()
    ok = pristine == 0 and perturbed_codes == [2] * len(perturbed_codes) and round_trip
    criterion("C7", ok,
              f"verify-paper exit {pristine} on pristine catalog, exits {sorted(set(perturbed_codes))} "
              f"on {len(perturbed_codes)} single-cell perturbations, byte-identical round trip: {round_trip}")
