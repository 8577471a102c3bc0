"""Vertical divisors, cycle boundaries, and rank certificates.

Given a horizontal divisor H (the closure of a degree-zero divisor on the
generic fibre), the vertical coefficients a of div(f) = H + sum a_i X_i
solve (H.X_j) + sum_i a_i (X_i.X_j) = 0 for every component X_j.  On a
connected semistable fibre the solution space is a line (the kernel of the
intersection matrix is spanned by the fibre class), so pinning one
coefficient determines the rest.

A Collino datum places the two Weierstrass points P, Q of a function with
div(f) = 2P - 2Q on components of the fibre; its boundary is the vector
2a, taken modulo the fibre class, with the P-component coefficient pinned
to 0 (any other gauge differs by a decomposable boundary).

``certify`` spans the decomposable fibre class together with a family of
such boundaries and computes the rank two independent ways: as the rank
of the stacked coefficient vectors minus the fibre direction, and as the
rank of their Gram matrix under the intersection pairing (which kills the
fibre class and nothing else).  The two must agree; a disagreement is a
bug, never an input problem.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import exactlin
from .exactlin import InconsistentSystem, RatMatrix, format_rat, rat
from .fibre_model import (
    BoundaryCycle,
    FibreGraph,
    HorizontalDivisor,
    VerticalDivisor,
    intersection_matrix,
)
from .parshin_catalog import ExpectedRank, build_case


class RadicalTooLarge(ValueError):
    """The fibre radical is not a line (disconnected graph)."""


class MethodDisagreement(RuntimeError):
    """The two rank computations disagree; always an internal bug."""


@dataclass(frozen=True)
class CollinoDatum:
    """Placement of the points P and Q of a function with div(f) = 2P - 2Q."""

    graph: FibreGraph
    p_component: str
    q_component: str

    def __post_init__(self):
        self.graph.index(self.p_component)
        self.graph.index(self.q_component)


def solve_vertical(
    graph: FibreGraph,
    horizontal: HorizontalDivisor,
    normalization: tuple[str, int | str | Fraction],
) -> VerticalDivisor:
    """Solve M a = -H with one coefficient pinned.

    Raises :class:`InconsistentSystem` when the horizontal multiplicities
    do not sum to zero (H is then not the closure of a degree-zero
    divisor) and :class:`RadicalTooLarge` when the kernel of the
    intersection matrix is not one dimensional.
    """
    norm_name, norm_value = normalization
    norm_index = graph.index(norm_name)
    value = rat(norm_value)
    degree = horizontal.degree()
    if degree != 0:
        raise InconsistentSystem(f"horizontal multiplicities sum to {degree}, expected 0 (degree-zero condition)")
    m = intersection_matrix(graph)
    rhs = tuple(-h for h in horizontal.vector(graph))
    solution = exactlin.solve_affine(m, rhs)
    if len(solution.kernel_basis) != 1:
        raise RadicalTooLarge(
            f"fibre radical has dimension {len(solution.kernel_basis)}, expected 1 (disconnected fibre?)"
        )
    kernel = solution.kernel_basis[0]
    if kernel[norm_index] == 0:
        raise RadicalTooLarge(f"kernel vanishes at {norm_name}; cannot normalize there")
    shift = (value - solution.particular[norm_index]) / kernel[norm_index]
    coeffs = {
        name: solution.particular[i] + shift * kernel[i] for i, name in enumerate(graph.names)
    }
    return VerticalDivisor(graph, coeffs)


def collino_boundary(datum: CollinoDatum) -> BoundaryCycle:
    """Boundary vector 2a of the cycle attached to the placement (P, Q).

    H puts +2 on the P-component and -2 on the Q-component; the solution
    is gauged by a zero coefficient on the P-component, which is
    immaterial modulo the fibre class.
    """
    mult: dict[str, int] = {}
    if datum.p_component == datum.q_component:
        pass
    else:
        mult[datum.p_component] = 2
        mult[datum.q_component] = -2
    vertical = solve_vertical(datum.graph, HorizontalDivisor(mult), (datum.p_component, 0))
    return BoundaryCycle(datum.graph, {name: 2 * c for name, c in vertical.coefficients.items()})


def decomposable_boundary(graph: FibreGraph, k: int) -> BoundaryCycle:
    """k times the fibre class (the boundary of a constant-function pair)."""
    return BoundaryCycle(graph, {name: Fraction(k) for name in graph.names})


def closed_form_vertical(
    case_id: str, params: dict[str, int], p_component: str, q_component: str
) -> dict[str, Fraction] | None:
    """Catalogued closed-form solution for the standard placements.

    Returned in the gauge where the case's base component (C, E, B, E1 or
    B1) has coefficient 0; compare against solver output modulo a constant
    shift.  None when no closed form is recorded for the placement.
    """
    key = (p_component, q_component)

    def tent(index: int, length: int) -> int:
        return min(index, length + 1 - index)

    if case_id == "I" and key == ("C", "C"):
        return {"C": Fraction(0)}
    if case_id == "II":
        n = params["n"]
        if key == ("E", f"X{n}"):
            out = {"E": Fraction(0)}
            out.update({f"X{k}": Fraction(-tent(k, 2 * n - 1)) for k in range(1, 2 * n)})
            return out
    if case_id == "III":
        n, m = params["n"], params["m"]
        if key == ("B", f"X{n}"):
            out = {"B": Fraction(0)}
            out.update({f"X{i}": Fraction(-tent(i, 2 * n - 1)) for i in range(1, 2 * n)})
            out.update({f"Y{j}": Fraction(0) for j in range(1, 2 * m)})
            return out
        if key == ("B", f"Y{m}"):
            out = {"B": Fraction(0)}
            out.update({f"X{i}": Fraction(0) for i in range(1, 2 * n)})
            out.update({f"Y{j}": Fraction(-tent(j, 2 * m - 1)) for j in range(1, 2 * m)})
            return out
    if case_id == "IV":
        r = params["r"]
        if key == ("E1", "E2"):
            out = {"E1": Fraction(0), "E2": Fraction(-2 * (r + 1))}
            out.update({f"X{i}": Fraction(-2 * i) for i in range(1, r + 1)})
            return out
    if case_id == "V":
        r, m = params["r"], params["m"]
        if key == ("E", "B"):
            out = {"E": Fraction(0), "B": Fraction(-2 * (r + 1))}
            out.update({f"X{i}": Fraction(-2 * i) for i in range(1, r + 1)})
            out.update({f"Y{j}": Fraction(-2 * (r + 1)) for j in range(1, 2 * m)})
            return out
    if case_id == "VI":
        s, n, m = params["s"], params["n"], params["m"]
        base = {
            "B1": Fraction(0),
            "B2": Fraction(-2 * (s + 1)),
            **{f"X{i}": Fraction(-2 * i) for i in range(1, s + 1)},
            **{f"Y{j}": Fraction(0) for j in range(1, 2 * n)},
        }
        if key == ("B1", "B2"):
            base.update({f"Z{k}": Fraction(-2 * (s + 1)) for k in range(1, 2 * m)})
            return base
        if key == ("B1", f"Z{m}"):
            base.update(
                {f"Z{k}": Fraction(-2 * (s + 1) - tent(k, 2 * m - 1)) for k in range(1, 2 * m)}
            )
            return base
    if case_id == "VII":
        r, s, t = params["r"], params["s"], params["t"]

        def vii(plus: tuple[str, int] | None, minus: tuple[str, int] | None) -> dict[str, Fraction]:
            out = {"B1": Fraction(0), "B2": Fraction(0)}
            for prefix, half in (("X", r), ("Y", s), ("Z", t)):
                sign = 0
                if plus and plus[0] == prefix:
                    sign = 1
                elif minus and minus[0] == prefix:
                    sign = -1
                out.update(
                    {f"{prefix}{i}": Fraction(sign * tent(i, 2 * half - 1)) for i in range(1, 2 * half)}
                )
            return out

        if key == (f"X{r}", f"Y{s}"):
            return vii(("X", r), ("Y", s))
        if key == (f"Y{s}", f"Z{t}"):
            return vii(("Y", s), ("Z", t))
        if key == (f"X{r}", f"Z{t}"):
            return vii(("X", r), ("Z", t))
    return None


def matches_mod_constant(vertical: VerticalDivisor, reference: dict[str, Fraction]) -> bool:
    """True when the solved coefficients equal the reference up to adding a
    constant vector (a gauge change)."""
    if set(reference) != set(vertical.graph.names):
        return False
    diffs = {vertical[name] - reference[name] for name in reference}
    return len(diffs) == 1


@dataclass(frozen=True)
class SurjectivityCertificate:
    """Exact rank computation for {fibre class} + {cycle boundaries}."""

    case_id: str
    params: dict[str, int]
    cycle_specs: tuple[tuple[str, str], ...]
    boundaries: tuple[BoundaryCycle, ...]
    pairing: RatMatrix
    gram: RatMatrix
    rank_mod_fibre: int
    gram_rank: int
    achieved_rank: int
    expected: ExpectedRank
    verdict: str
    probes: tuple[dict[str, Fraction], ...]

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


def certify(
    case_id: str, params: dict[str, int], cycle_specs: list[tuple[str, str]] | tuple[tuple[str, str], ...]
) -> SurjectivityCertificate:
    """Certify the rank spanned by the given placements against the
    expected dimension.

    The rank modulo the fibre class is computed both from the stacked
    coefficient vectors (with the all-ones row adjoined, minus one) and as
    the rank of the Gram matrix under the intersection pairing; the two
    must agree.  The achieved rank counts the fibre class itself.  The
    smooth-Jacobian cases I and IV carry only a lower bound, so their
    verdict is "bound-only" rather than a pass claim.
    """
    build = build_case(case_id, **params)
    graph, placement = build.graph, build.placement
    slot_components = set(placement.weierstrass_slots.values())
    specs = tuple((p, q) for p, q in cycle_specs)
    for p, q in specs:
        for name in (p, q):
            if name not in slot_components:
                raise ValueError(
                    f"component {name!r} carries no Weierstrass point in case {case_id} "
                    f"(slots: {', '.join(sorted(slot_components))})"
                )
    boundaries = tuple(collino_boundary(CollinoDatum(graph, p, q)) for p, q in specs)
    fibre = tuple(Fraction(1) for _ in graph.names)
    vectors = [fibre] + [b.vector() for b in boundaries]
    stacked = RatMatrix(vectors, ncols=len(graph))
    coefficient_rank = exactlin.rank(stacked)
    rank_mod_fibre = coefficient_rank - 1
    pairing = intersection_matrix(graph)
    gram = exactlin.gram(vectors, pairing)
    gram_rank = exactlin.rank(gram)
    if rank_mod_fibre != gram_rank:
        raise MethodDisagreement(
            f"coefficient rank mod fibre is {rank_mod_fibre} but gram rank is {gram_rank}"
        )
    achieved = coefficient_rank
    expected = placement.expected_rank
    if placement.jacobian_type == 1:
        verdict = "bound-only"
    else:
        verdict = "pass" if achieved >= expected.value else "fail"
    # intersections of each boundary against the slot components, the probe
    # the independence arguments use ("intersect with the middle component")
    probe_names = sorted(slot_components)
    probes = []
    for boundary in boundaries:
        image = pairing.matvec(boundary.vector())
        probes.append({name: image[graph.index(name)] for name in probe_names})
    return SurjectivityCertificate(
        case_id=case_id,
        params=dict(params),
        cycle_specs=specs,
        boundaries=boundaries,
        pairing=pairing,
        gram=gram,
        rank_mod_fibre=rank_mod_fibre,
        gram_rank=gram_rank,
        achieved_rank=achieved,
        expected=expected,
        verdict=verdict,
        probes=tuple(probes),
    )


def certificate_to_json(cert: SurjectivityCertificate) -> dict:
    return {
        "case": cert.case_id,
        "params": {k: cert.params[k] for k in sorted(cert.params)},
        "cycles": [f"{p}:{q}" for p, q in cert.cycle_specs],
        "vectors": [
            {name: format_rat(b.coefficients[name]) for name in sorted(b.coefficients)}
            for b in cert.boundaries
        ],
        "probes": [{name: format_rat(v) for name, v in probe.items()} for probe in cert.probes],
        "pairing_rank": cert.gram_rank,
        "coefficient_rank": cert.rank_mod_fibre,
        "achieved": cert.achieved_rank,
        "expected": cert.expected.to_json(),
        "verdict": cert.verdict,
    }
