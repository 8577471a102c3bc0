"""Acceptance suite.

Every check is exact rational arithmetic with zero tolerance; each test
prints one ACCEPTANCE line so the criteria can be read off a verbose run.

One check is expected to fail and is left failing on purpose:
criterion 1.V-agreement (the two Case V placements giving the same
boundary modulo the fibre class).  In this package's component-lattice
model the two boundaries provably differ by a tent-shaped vector on the
loop chain; the asserted equality holds only after pushing forward to the
degenerate Jacobian surface, which this model intentionally does not
carry.  See README, "Known failing check".
"""

import itertools
from fractions import Fraction

from g2chow.boundary_engine import certify, solve_vertical
from g2chow.consani_complex import StratifiedComplex, check_identities, pch_rank
from g2chow.fibre_model import HorizontalDivisor, validate
from g2chow.parshin_catalog import build_case, build_kulikov_complex, param_names

from support import (
    SWEEPS,
    boundary,
    default_specs,
    graph_of,
    oracle_vertical,
    slot_components,
    vertical,
)


def report(criterion: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {criterion}: {status}{suffix}")


def failing(failures, limit: int = 4) -> str:
    return "" if not failures else str(failures[:limit])


# criterion 1: closed-form conformance sweeps, exact equality


def test_criterion1_case_ii_closed_form():
    failures = []
    for params in SWEEPS["II"]:
        n = params["n"]
        for gauge in (Fraction(0), Fraction(5)):
            v = vertical("II", params, "E", f"X{n}", ("E", gauge))
            ok = v["E"] == gauge
            ok = ok and all(v[f"X{k}"] == gauge - k for k in range(1, n + 1))
            ok = ok and all(v[f"X{2 * n - k}"] == v[f"X{k}"] for k in range(1, n))
            if not ok:
                failures.append((params, gauge))
    report("1.II (b_k = a-k, b_{2n-k} = b_k; n = 2..8)", not failures, failing(failures))
    assert not failures


def test_criterion1_case_iv_closed_form():
    failures = []
    for params in SWEEPS["IV"]:
        r = params["r"]
        for gauge in (Fraction(0), Fraction(r + 1)):
            v = vertical("IV", params, "E1", "E2", ("E1", gauge))
            coeffs = [v["E1"]] + [v[f"X{i}"] for i in range(1, r + 1)] + [v["E2"]]
            if not all(coeffs[i] == gauge - 2 * i for i in range(r + 2)):
                failures.append((params, gauge))
    report("1.IV (b_i = b_0 - 2i; r = 1..8)", not failures, failing(failures))
    assert not failures


def test_criterion1_case_v_closed_form():
    failures = []
    for params in SWEEPS["V"]:
        r, m = params["r"], params["m"]
        v = vertical("V", params, "E", "B", ("E", 0))
        ok = all(v[f"X{i}"] == -2 * i for i in range(1, r + 1))
        ok = ok and v["B"] == -2 * (r + 1)
        ok = ok and all(v[f"Y{j}"] == -2 * (r + 1) for j in range(1, 2 * m))
        if not ok:
            failures.append(params)
    report("1.V (c = d_j = a-2(r+1); r, m = 1..5)", not failures, failing(failures))
    assert not failures


def test_criterion1_case_v_placement_agreement():
    """Exactly as stated: boundaries for Q on B and Q on Y_m agree mod fibre.

    This fails, and the failure is genuine: with P on E the solved
    coefficients differ by the tent vector sum_j min(j, 2m-j) Y_j, which is
    not a multiple of the fibre class for any m >= 1.  The identification
    that would kill the tent lives on the degenerate Jacobian surface, not
    in the fibre component lattice this model computes in.
    """
    disagreements = []
    for params in SWEEPS["V"]:
        first = boundary("V", params, "E", "B")
        second = boundary("V", params, "E", f"Y{params['m']}")
        if first != second:
            disagreements.append(params)
    report(
        "1.V-agreement (Q on B vs Q on Y_m agree mod fibre)",
        not disagreements,
        f"{len(disagreements)}/{len(SWEEPS['V'])} parameter tuples disagree",
    )
    assert not disagreements, (
        "the two Case V placements differ by a tent vector on the Y-loop in "
        "the component-lattice model; see README, 'Known failing check'"
    )


def test_criterion1_case_vi_closed_forms():
    failures = []
    for params in SWEEPS["VI"]:
        s, n, m = params["s"], params["n"], params["m"]
        v = vertical("VI", params, "B1", "B2", ("B1", 0))
        ok = all(v[f"X{i}"] == -2 * i for i in range(1, s + 1))
        ok = ok and v["B2"] == -2 * (s + 1)
        ok = ok and all(v[f"Z{k}"] == -2 * (s + 1) for k in range(1, 2 * m))
        ok = ok and all(v[f"Y{j}"] == 0 for j in range(1, 2 * n))
        w = vertical("VI", params, "B1", f"Z{m}", ("B1", 0))
        ok = ok and all(w[f"Z{k}"] == -2 * (s + 1) - k for k in range(1, m + 1))
        ok = ok and all(w[f"Z{m - k}"] == w[f"Z{m + k}"] for k in range(1, m))
        if not ok:
            failures.append(params)
    report("1.VI (c_i = -2i, b_2 = e_k = -2(s+1); tent for B1:Zm; s, n, m = 1..4)", not failures, failing(failures))
    assert not failures


def test_criterion1_case_vii_closed_form():
    failures = []
    for params in SWEEPS["VII"]:
        r, s = params["r"], params["s"]
        v = vertical("VII", params, f"X{r}", f"Y{s}", ("B1", 0))
        ok = v["X1"] == 1 and v["Y1"] == -1 and v["B2"] == 0 and v["Z1"] == 0
        ok = ok and all(v[f"X{i}"] == i for i in range(1, r + 1))
        ok = ok and all(v[f"Y{j}"] == -j for j in range(1, s + 1))
        if not ok:
            failures.append(params)
    report("1.VII (a_1 = 1, c_1 = -1, b_2 = d_1 = 0; r, s, t = 1..4)", not failures, failing(failures))
    assert not failures


# criterion 2: rank certificates


def test_criterion2_rank_certificates():
    failures = []
    expectations = {
        "I": (1, "bound-only"),
        "II": (2, "pass"),
        "III": (3, "pass"),
        "IV": (2, "bound-only"),
        "V": (2, "pass"),
        "VI": (3, "pass"),
        "VII": (3, "pass"),
    }
    for case_id, (want_rank, want_verdict) in expectations.items():
        for params in SWEEPS[case_id]:
            cert = certify(case_id, params, default_specs(case_id, params))
            if cert.achieved_rank != want_rank or cert.verdict != want_verdict:
                failures.append((case_id, params, cert.achieved_rank, cert.verdict))
            if case_id == "I" and any(c != 0 for c in cert.boundaries[0].vector()):
                failures.append((case_id, params, "nonzero boundary"))
    report("2 (ranks: I=1, II=V=2, III=VI=VII=3, IV=2 bound-only)", not failures, failing(failures))
    assert not failures


# criterion 3: property suites across all catalog sweeps


def test_criterion3_antisymmetry():
    failures = []
    for case_id, sweeps in SWEEPS.items():
        for params in sweeps:
            comps = slot_components(case_id, params)
            for p, q in itertools.combinations(comps, 2):
                if boundary(case_id, params, p, q) != -boundary(case_id, params, q, p):
                    failures.append((case_id, params, p, q))
    report("3.antisymmetry (swap P,Q negates mod fibre)", not failures, failing(failures))
    assert not failures


def test_criterion3_additivity():
    failures = []
    for case_id, sweeps in SWEEPS.items():
        for params in sweeps:
            comps = slot_components(case_id, params)
            for p, q, r in itertools.permutations(comps, 3):
                total = boundary(case_id, params, p, q) + boundary(case_id, params, q, r)
                if boundary(case_id, params, p, r) != total:
                    failures.append((case_id, params, p, q, r))
    report("3.additivity (d(P,R) = d(P,Q) + d(Q,R) mod fibre)", not failures, failing(failures))
    assert not failures


def test_criterion3_same_component_zero():
    failures = []
    for case_id, sweeps in SWEEPS.items():
        for params in sweeps:
            for comp in slot_components(case_id, params):
                if not boundary(case_id, params, comp, comp).is_zero_mod_fibre():
                    failures.append((case_id, params, comp))
    report("3.same-component placements bound zero", not failures, failing(failures))
    assert not failures


def test_criterion3_normalization_independence():
    failures = []
    for case_id, sweeps in SWEEPS.items():
        for params in sweeps:
            graph = graph_of(case_id, params)
            p, q = default_specs(case_id, params)[0]
            h = HorizontalDivisor({} if p == q else {p: 2, q: -2})
            first = solve_vertical(graph, h, (graph.names[0], 0))
            second = solve_vertical(graph, h, (graph.names[-1], Fraction(7, 3)))
            diffs = {first[name] - second[name] for name in graph.names}
            if len(diffs) != 1:
                failures.append((case_id, params))
    report("3.normalization independence (gauges differ by a constant)", not failures, failing(failures))
    assert not failures


def test_criterion3_rank_method_agreement():
    failures = []
    for case_id, sweeps in SWEEPS.items():
        for params in sweeps:
            # certify raises MethodDisagreement on mismatch; also check the fields
            cert = certify(case_id, params, default_specs(case_id, params))
            if cert.rank_mod_fibre != cert.gram_rank:
                failures.append((case_id, params))
    report("3.rank-method agreement (coefficient vs gram)", not failures, failing(failures))
    assert not failures


# criterion 4: fibre validity for every swept parameter tuple


def test_criterion4_catalog_validity():
    failures = []
    count = 0
    for case_id in SWEEPS:
        names = param_names(case_id)
        low = 2 if case_id == "II" else 1
        tuples = set(itertools.product(range(low, 7), repeat=len(names)))
        tuples.update(tuple(p[k] for k in names) for p in SWEEPS[case_id])
        for combo in sorted(tuples):
            params = dict(zip(names, combo))
            reportcard = validate(build_case(case_id, **params).graph)
            count += 1
            if not reportcard.passed:
                failures.append((case_id, params, [c.name for c in reportcard.failures()]))
    report("4 (validity of every swept catalogue fibre)", not failures, f"{count} graphs")
    assert not failures


# criterion 5: double-complex identities and subquotient ranks


def test_criterion5_structural_identities():
    failures = []
    complexes = [("type 2", build_kulikov_complex(2, n)) for n in range(3, 9)]
    complexes += [
        ("type 3", build_kulikov_complex(3, n1, n2)) for n1, n2 in ((3, 3), (3, 4), (4, 4))
    ]
    anticommutator_notes = []
    for label, cx in complexes:
        identity_report = check_identities(cx)
        if not identity_report.holds("gamma_squared"):
            failures.append((label, "gamma_squared"))
        if not identity_report.holds("rho_squared"):
            failures.append((label, "rho_squared"))
        for convention in ("as-written", "alternating"):
            holds = identity_report.holds("anticommutator", convention)
            anticommutator_notes.append(f"{label}[{convention}]={'0' if holds else 'nonzero'}")
    report("5 (gamma^2 = rho^2 = 0 on types 2 and 3)", not failures, failing(failures))
    print("ACCEPTANCE 5 note: anticommutator evaluated, not asserted: " + "; ".join(sorted(set(anticommutator_notes))))
    assert not failures


def test_criterion5_smooth_fibre_quotient():
    smooth = StratifiedComplex({1: [(0,)]})
    ok = True
    for q, a in ((4, 1), (5, 1), (6, 2)):
        ok = ok and pch_rank(smooth, q, a).quotient_dim == 0
    report("5 (smooth depth-1 fibre has quotient 0 for q-2a > 1)", ok)
    assert ok


# criterion 6: independent brute-force oracle


def test_criterion6_oracle_cross_check():
    failures = []
    checks = [
        ("II", {"n": 2}, "E", "X2"),
        ("IV", {"r": 1}, "E1", "E2"),
        ("VII", {"r": 1, "s": 1, "t": 1}, "X1", "Y1"),
    ]
    for case_id, params, p, q in checks:
        graph = graph_of(case_id, params)
        h = HorizontalDivisor({p: 2, q: -2})
        solved = solve_vertical(graph, h, (p, 0))
        expected = oracle_vertical(graph, h, p, Fraction(0))
        if {n: solved[n] for n in graph.names} != expected:
            failures.append((case_id, params))
    report("6 (naive Cramer oracle reproduces the solver exactly)", not failures, failing(failures))
    assert not failures
