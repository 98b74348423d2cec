"""Acceptance gate: eleven criteria, one test and one verdict line each.

Every test times its own work, prints

    criterion NN: PASS|FAIL (T s) -- detail

and then asserts. Matching a printed entry of a reference expectation
table means agreeing within one unit in the last printed digit. Entries
recorded as discrepant in the fixtures must be missed at printed precision
and hit at the independently recorded value instead.

Two criteria encode claims this implementation genuinely cannot reproduce
(three last-digit entries of the uniform reference table, and maximality
of the fully chaotic logistic orbit at order 0.3). They are implemented
faithfully and left to fail; their verdict lines and assertion messages
carry the measured evidence.
"""

import json
import math
import sys
import time
from importlib import resources
from pathlib import Path

from test_multivariate import mirrored_triangle_law

from fracpast.chaos import efcpe_vs_s
from fracpast.coherent import (
    distortion,
    omega_bounds,
    parallel_uniform_closed_form,
    sandwich_check,
    system_efcpe,
)
from fracpast.distributions import (
    Beta,
    LogUniform,
    ParetoType,
    TriangularSum,
    Uniform,
    UniformSum,
    Weibull,
    affine,
    independent_sum,
    prhr,
)
from fracpast.empirical import (
    convergence_study,
    empirical_efcpe,
    exp_spacing_moments,
    load_sample_csv,
    unif_spacing_moments,
)
from fracpast.entropy import (
    classic_fractional,
    dynamic_efcpe,
    efcpe,
    efcpe_closed_form,
    efcre,
    gini_lower_bound_check,
    modified_efcpe,
)
from fracpast.fraclog import LogMode, frac_log, frac_log_power, mlf
from fracpast.multivariate import (
    decomposition_theorem_check,
    fcpmi,
    fgm_law,
    independent_law,
    triangle_law,
)

DATA_FILE = str(Path(__file__).resolve().parent.parent / "data" / "odisha_covid_weekly.csv")


def _load_fixture(name: str) -> dict:
    path = resources.files("fracpast").joinpath(f"fixtures/{name}.json")
    with path.open("r") as fh:
        return json.load(fh)


def _cells_by_id(fixture: dict) -> dict:
    return {cell["id"]: cell for cell in fixture["cells"]}


def _ulp(printed: str) -> float:
    """One unit in the last printed digit, e.g. '0.19635' -> 1e-5."""
    text = printed.strip().lower()
    mantissa, exponent = text.split("e") if "e" in text else (text, "0")
    decimals = len(mantissa.split(".")[1]) if "." in mantissa else 0
    return 10.0 ** (int(exponent) - decimals) * (1.0 + 1e-9)


def _matches(value: float, cell: dict) -> bool:
    return abs(value - float(cell["printed"])) <= _ulp(cell["printed"])


def _finish(num: int, started: float, budget: float, problems: list, ok_detail: str) -> None:
    elapsed = time.perf_counter() - started
    if elapsed > budget:
        problems.append(f"runtime {elapsed:.2f}s exceeded the {budget:.0f}s budget")
    verdict = "PASS" if not problems else "FAIL"
    detail = ok_detail if not problems else "; ".join(problems)
    line = f"criterion {num:02d}: {verdict} ({elapsed:.2f}s) -- {detail}"
    # Bypass capture so the verdict line reaches the terminal for passing
    # tests too, not only inside failure reports.
    print(line, file=sys.__stdout__)
    assert not problems, detail


def test_criterion_01_uniform_reference_table():
    started = time.perf_counter()
    cells = _cells_by_id(_load_fixture("table1"))
    X = Uniform(1.0)
    problems = []
    for k in range(1, 10):
        alpha = round(0.1 * k, 1)
        cell = cells[f"modified:alpha={alpha}"]
        got = modified_efcpe(X, alpha).value
        closed = math.gamma(1.0 + alpha) / 4.0
        if abs(got - closed) > 1e-9:
            problems.append(f"modified alpha={alpha}: quadrature {got:.10f} != closed {closed:.10f}")
        if not _matches(got, cell):
            problems.append(
                f"modified alpha={alpha}: computed {got:.6f} vs printed {cell['printed']}"
            )
    for alpha in (0.1, 0.2, 0.3, 0.4, 0.6, 0.7, 0.8, 0.9):
        cell = cells[f"efcpe:alpha={alpha}"]
        got = efcpe_closed_form(X, alpha)
        if not _matches(got, cell):
            diff = abs(got - float(cell["printed"]))
            problems.append(
                f"efcpe alpha={alpha}: computed {got:.9f} vs printed {cell['printed']}"
                f" (off by {diff:.2e}, tolerance {_ulp(cell['printed']):.0e})"
            )
    half = cells["efcpe:alpha=0.5"]
    got_half = efcpe_closed_form(X, 0.5)
    if _matches(got_half, half):
        problems.append("alpha=0.5 unexpectedly matched the entry recorded as discrepant")
    if abs(got_half - half["reference"]) > 1e-4:
        problems.append(
            f"alpha=0.5 missed the recorded cross-value {half['reference']}: got {got_half:.6f}"
        )
    if any("alpha=0.7" in p for p in problems):
        problems.append(
            "cross-evidence: the parallel-system table prints the same component"
            " measure as 0.2050 at alpha=0.7, agreeing with the computed"
            " 0.205050 rather than with 0.20388; the alpha=0.3 and alpha=0.6"
            " entries are off by ~1.2e-5, one count in the final printed digit"
        )
    _finish(
        1,
        started,
        1.0,
        problems,
        "18 cells at printed precision; alpha=0.5 entry confirmed discrepant against 0.19635",
    )


def test_criterion_02_exponential_spacing_moment_table():
    started = time.perf_counter()
    fixture = _load_fixture("table4")
    problems = []
    for cell in fixture["cells"]:
        op = cell["op"]
        pair = exp_spacing_moments(op["n"], op["rate"], op["alpha"])
        got = pair.mean if op["kind"] == "exp_mean" else pair.variance
        if not _matches(got, cell):
            problems.append(f"{cell['id']}: computed {got:.6g} vs printed {cell['printed']}")
    _finish(
        2,
        started,
        1.0,
        problems,
        f"{len(fixture['cells'])} mean/variance cells reproduced at printed precision",
    )


def test_criterion_03_uniform_spacing_moment_table():
    started = time.perf_counter()
    fixture = _load_fixture("table5")
    problems = []
    smallest = math.inf
    for cell in fixture["cells"]:
        op = cell["op"]
        pair = unif_spacing_moments(op["n"], op["alpha"])
        got = pair.mean if op["kind"] == "unif_mean" else pair.variance
        if op["kind"] == "unif_var":
            smallest = min(smallest, got)
        if not _matches(got, cell):
            problems.append(f"{cell['id']}: computed {got:.6g} vs printed {cell['printed']}")
    if smallest > 1e-5:
        problems.append(f"no variance entry reached the 1e-6 scale (smallest {smallest:.2e})")
    _finish(
        3,
        started,
        1.0,
        problems,
        f"{len(fixture['cells'])} cells reproduced, variances down to {smallest:.1e}",
    )


def test_criterion_04_weekly_case_series():
    started = time.perf_counter()
    sample = load_sample_csv(DATA_FILE)
    expected = {0.2: 424.411, 0.4: 123.741, 0.8: 125.559, 1.0: 140.116}
    problems = []
    for alpha, want in expected.items():
        got = empirical_efcpe(sample, alpha)
        if abs(got - want) > 1e-3 * want:
            problems.append(f"alpha={alpha}: computed {got:.4f} vs recorded {want}")
    grid = [round(0.05 * k, 2) for k in range(1, 21)]
    profile = {alpha: empirical_efcpe(sample, alpha) for alpha in grid}
    argmin = min(profile, key=profile.get)
    if not 0.3 < argmin < 0.8:
        problems.append(f"profile minimum at alpha={argmin}, outside (0.3, 0.8)")
    _finish(
        4,
        started,
        1.0,
        problems,
        f"four empirical values within 0.1%; profile minimum at alpha={argmin}",
    )


def test_criterion_05_parallel_system_table():
    started = time.perf_counter()
    cells = _cells_by_id(_load_fixture("table6"))
    q = distortion("parallel", n=2)
    X = Uniform(1.0)
    problems = []
    for alpha in (0.1, 0.3, 0.5, 0.7):
        printed_cell = cells[f"system_closed:alpha={alpha}"]
        printed = float(printed_cell["printed"])
        closed = parallel_uniform_closed_form(2, alpha)
        quad = system_efcpe(q, X, alpha).value
        for route, got in (("closed form", closed), ("quadrature", quad)):
            if abs(got - printed) > 5e-4 * abs(printed):
                problems.append(
                    f"system value alpha={alpha} via {route}: {got:.6g} vs printed {printed}"
                )
        if abs(closed - quad) > 5e-4 * abs(closed):
            problems.append(f"routes disagree at alpha={alpha}: {closed:.6g} vs {quad:.6g}")
        omega1, omega2 = omega_bounds(q, alpha)
        if not 0.0 <= omega1 < 1e-4:
            problems.append(f"omega1 at alpha={alpha} is {omega1:.3g}, expected 0")
        if alpha == 0.1:
            recorded = float(cells["omega2:alpha=0.1"]["printed"])
            derived = cells["omega2:alpha=0.1"]["reference"]
            if abs(omega2 - recorded) <= 1e-3 * recorded:
                problems.append("omega2 at alpha=0.1 matched the entry recorded as discrepant")
            if abs(omega2 - derived) > 1e-3 * derived:
                problems.append(
                    f"omega2 at alpha=0.1: grid supremum {omega2:.4f} missed the derived {derived}"
                )
        else:
            recorded = float(cells[f"omega2:alpha={alpha}"]["printed"])
            if abs(omega2 - recorded) > 1e-3 * recorded:
                problems.append(f"omega2 at alpha={alpha}: {omega2:.6g} vs printed {recorded}")
        report = sandwich_check(q, X, alpha)
        if not report.holds:
            problems.append(
                f"sandwich failed at alpha={alpha}:"
                f" {report.lower:.3g} <= {report.omega2 * efcpe_closed_form(X, alpha):.3g}"
            )
    _finish(
        5,
        started,
        10.0,
        problems,
        "system measure to 4 significant figures by both routes; omega2 at"
        " alpha=0.1 reported as the grid supremum 1024.0000; sandwich holds on all rows",
    )


def test_criterion_06_sum_inequality_table():
    started = time.perf_counter()
    cells = _cells_by_id(_load_fixture("table3"))
    Z = independent_sum(Uniform(1.0), Uniform(1.0))
    component = Uniform(1.0)
    problems = []
    for alpha in (0.2, 0.3, 0.4, 0.5, 0.6, 0.8, 0.9, 1.0):
        total = efcpe(Z, alpha).value
        part = efcpe(component, alpha).value
        if not _matches(total, cells[f"sum:alpha={alpha}"]):
            problems.append(
                f"sum alpha={alpha}: computed {total:.4f}"
                f" vs printed {cells[f'sum:alpha={alpha}']['printed']}"
            )
        if not _matches(part, cells[f"max_component:alpha={alpha}"]):
            problems.append(
                f"component alpha={alpha}: computed {part:.4f}"
                f" vs printed {cells[f'max_component:alpha={alpha}']['printed']}"
            )
        if total < part - 1e-9:
            problems.append(f"sum inequality failed at alpha={alpha}: {total:.4f} < {part:.4f}")
    _finish(
        6,
        started,
        5.0,
        problems,
        "16 cells at printed precision; the sum dominates the larger component at all eight orders",
    )


def test_criterion_07_heavy_tail_ordering_table():
    started = time.perf_counter()
    fixture = _load_fixture("table2")
    problems = []
    for cell in fixture["cells"]:
        alpha = cell["op"]["alpha"]
        if cell.get("status") == "diverged" or alpha not in (0.2, 0.3, 0.4):
            continue
        shape = 0.5 if "k=0.5" in cell["id"] else 0.7
        got = efcpe(ParetoType(shape), alpha).value
        printed = float(cell["printed"])
        if abs(got - printed) > 0.02 * printed:
            problems.append(f"{cell['id']}: computed {got:.4f} vs printed {printed} beyond 2%")
    for alpha in (0.5, 0.6, 0.8, 1.0):
        res = efcpe(ParetoType(0.5), alpha)
        if not res.diverged:
            problems.append(f"shape 0.5 at alpha={alpha} was not flagged diverged")
        elif res.diagnostics.tail_exponent < -1.05:
            problems.append(
                f"shape 0.5 at alpha={alpha}: fitted tail exponent"
                f" {res.diagnostics.tail_exponent:.3f} below -1.05"
            )
    for alpha in (0.2, 0.3, 0.4):
        lower = efcpe(ParetoType(0.7), alpha).value
        higher = efcpe(ParetoType(0.5), alpha).value
        if lower > higher + 1e-9:
            problems.append(
                f"dispersive consequence failed at alpha={alpha}: {lower:.4f} > {higher:.4f}"
            )
    _finish(
        7,
        started,
        10.0,
        problems,
        "six convergent cells within 2%; four shape-0.5 cells flagged diverged"
        " with tail exponents above -1.05; ordering holds at all convergent orders",
    )


def _prop_scale_shift():
    X = Beta(2.0, 2.0)
    base = efcpe(X, 0.6).value
    for scale in (0.5, 2.0, 7.0):
        for shift in (0.0, 3.0):
            got = efcpe(affine(X, scale, shift), 0.6).value
            assert abs(got - scale * base) <= 1e-7 * scale * base, (scale, shift)
    for alpha in (0.4, 0.9):
        want = 3.0 * efcpe(Uniform(1.0), alpha).value
        got = efcpe(affine(Uniform(1.0), 3.0, 1.5), alpha).value
        assert abs(got - want) <= 1e-7 * want, alpha


def _prop_jensen():
    catalog = [Uniform(1.0), Beta(2.0, 2.0), LogUniform(1.0, 2.0), TriangularSum()]
    for X in catalog:
        for alpha in (0.3, 0.5, 0.7, 0.9):
            lhs = efcpe(X, alpha).value
            rhs = modified_efcpe(X, alpha).value ** (1.0 / alpha)
            assert lhs >= rhs - 1e-9, (repr(X), alpha)


def _prop_prhr():
    for delta in (1.0, 2.0, 4.0):
        for alpha in (0.3, 0.5, 0.8):
            base = efcpe(Uniform(1.0), alpha).value
            tilted = efcpe(prhr(Uniform(1.0), delta), alpha).value
            assert tilted <= delta * base + 1e-9, (delta, alpha)


def _prop_gini():
    for X in (Uniform(1.0), Beta(2.0, 2.0), TriangularSum(), LogUniform(1.0, 2.0)):
        for alpha in (0.3, 0.5, 0.8, 1.0):
            bound, holds = gini_lower_bound_check(X, alpha)
            assert holds, (repr(X), alpha, bound)


def _prop_symmetry():
    for X in (Uniform(1.0), Uniform(3.0), Beta(2.0, 2.0), TriangularSum()):
        for alpha in (0.4, 0.7, 1.0):
            past = efcpe(X, alpha).value
            residual = efcre(X, alpha).value
            assert abs(past - residual) <= 1e-7 * past, (repr(X), alpha)


def _prop_dynamic_limit():
    for X in (Uniform(1.0), Beta(2.0, 2.0)):
        full = efcpe(X, 0.5).value
        at_upper = dynamic_efcpe(X, 0.5, X.upper).value
        assert abs(at_upper - full) <= 1e-8 * full, repr(X)
    X = Beta(2.0, 2.0)
    values = [dynamic_efcpe(X, 0.5, t).value for t in (0.9, 0.925, 0.95, 0.975, 1.0)]
    assert all(a <= b + 1e-12 for a, b in zip(values, values[1:])), values


def _prop_decomposition():
    lhs, rhs = decomposition_theorem_check(triangle_law(), 0.5)
    assert abs(lhs - rhs) <= 2e-4 * abs(rhs), (lhs, rhs)
    lhs, rhs = decomposition_theorem_check(independent_law(Uniform(1.0), Uniform(1.0)), 0.75)
    assert abs(lhs - rhs) <= 2e-4 * abs(rhs), (lhs, rhs)


def _prop_fcpmi():
    for alpha in (0.5, 1.0):
        assert fcpmi(independent_law(Uniform(1.0), Uniform(1.0)), alpha) == 0.0, alpha
        assert fcpmi(fgm_law(-0.5), alpha) >= 0.0, alpha
    direct = fcpmi(triangle_law(), 1.0)
    swapped = fcpmi(mirrored_triangle_law(), 1.0)
    assert abs(direct - swapped) <= 1e-6, (direct, swapped)


def _prop_power_form():
    for alpha in (0.25, 0.5, 0.75, 1.0):
        root = 1.0 / alpha
        for u in (0.1, 0.5, 0.9):
            for v in (0.1, 0.5, 0.9):
                lhs = (-frac_log_power(alpha, u * v)) ** root
                rhs = (-frac_log_power(alpha, u)) ** root + (-frac_log_power(alpha, v)) ** root
                assert abs(lhs - rhs) <= 1e-10 * abs(rhs), (alpha, u, v)
            for b in (0.5, 2.0, 4.0):
                lhs = frac_log_power(alpha, u**b)
                rhs = (b**alpha) * frac_log_power(alpha, u)
                assert abs(lhs - rhs) <= 1e-9 * abs(rhs), (alpha, u, b)


def _prop_round_trip():
    for alpha in (0.3, 0.5, 0.7, 0.9, 0.99):
        for p in (0.05, 0.2, 0.5, 0.8, 0.99):
            back = mlf(alpha, frac_log(alpha, p, LogMode.EXACT))
            assert abs(back - p) <= 1e-8, (alpha, p)


def test_criterion_08_property_suites():
    started = time.perf_counter()
    suites = [
        ("scale-shift", _prop_scale_shift),
        ("jensen-bound", _prop_jensen),
        ("reversed-hazard-tilt", _prop_prhr),
        ("gini-lower-bound", _prop_gini),
        ("symmetry", _prop_symmetry),
        ("dynamic-limit", _prop_dynamic_limit),
        ("bivariate-decomposition", _prop_decomposition),
        ("mutual-information", _prop_fcpmi),
        ("power-form-laws", _prop_power_form),
        ("inverse-round-trip", _prop_round_trip),
    ]
    problems = []
    for name, suite in suites:
        try:
            suite()
        except AssertionError as exc:
            problems.append(f"{name}: {exc}")
    _finish(8, started, 60.0, problems, f"all {len(suites)} property suites green")


def test_criterion_09_logistic_attractor_ordering():
    started = time.perf_counter()
    s_values = [3.58, 3.6, 3.7, 3.8, 4.0]
    rows = efcpe_vs_s(s_values, [0.3, 0.5, 0.7, 0.9])
    table = {}
    for row in rows:
        table.setdefault(row["alpha"], {})[row["s"]] = row["value"]
    problems = []
    for alpha in (0.3, 0.5, 0.7, 0.9):
        values = table[alpha]
        top = values[4.0]
        runner_up = max(values[s] for s in s_values if s != 4.0)
        if top + 1e-12 < runner_up:
            best = max((s for s in s_values if s != 4.0), key=lambda s: values[s])
            problems.append(
                f"alpha={alpha}: s=4.0 scores {top:.5f}, below s={best} at {values[best]:.5f}"
            )
        if min(values[3.8], values[4.0]) <= max(values[3.58], values[3.6]):
            problems.append(f"alpha={alpha}: chaotic band does not dominate the onset band")
    if problems:
        problems.append(
            "analysis: from x0=0.1 the s=4.0 orbit fills (0,1) almost uniformly"
            " while the s=3.8 attractor stays banded; at order 0.3 banded"
            " spacings score higher (0.31198 at s=3.8 and 0.30769 at s=3.7"
            " versus 0.23042 at s=4.0), so the maximality clause fails at that"
            " order even though the band inequality {3.8,4.0} > {3.58,3.6}"
            " holds at every order tested"
        )
    _finish(
        9,
        started,
        30.0,
        problems,
        "s=4.0 maximal and the chaotic band dominates the onset band at all four orders",
    )


def test_criterion_10_low_order_dominance():
    started = time.perf_counter()
    X = Weibull(1.0, 5.0)
    ce = classic_fractional(X, 1.0, past=True).value
    problems = []
    for alpha in (0.15, 0.20, 0.23, 0.30, 0.35, 0.40):
        value = efcpe(X, alpha).value
        if value <= ce:
            problems.append(f"alpha={alpha}: measure {value:.5f} does not exceed CE {ce:.5f}")
    for alpha in (0.97, 0.98, 0.99):
        value = efcpe(X, alpha).value
        if abs(value - ce) >= 0.05 * ce:
            problems.append(
                f"alpha={alpha}: |{value:.5f} - {ce:.5f}| not within 5% of CE"
            )
    _finish(
        10,
        started,
        10.0,
        problems,
        f"measure exceeds CE={ce:.5f} at six low orders and rejoins it within 5% near order 1",
    )


def test_criterion_11_estimator_convergence():
    started = time.perf_counter()
    rows = convergence_study(Uniform(1.0), 0.5, [10, 100, 1000], 200, seed=20260814)
    errors = [row["mean_abs_error"] for row in rows]
    problems = []
    if not all(a > b for a, b in zip(errors, errors[1:])):
        problems.append(f"mean absolute error not strictly decreasing: {errors}")
    _finish(
        11,
        started,
        60.0,
        problems,
        "mean absolute error {:.5f} -> {:.5f} -> {:.5f} over n = 10, 100, 1000".format(*errors),
    )
