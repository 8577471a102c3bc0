"""The seven standard families of genus-2 minimal regular models.

Each family is parameterized by chain lengths and produces a fibre graph
in the conventional component naming (E, B, B1, B2, X1.., Y1.., Z1..),
together with the placement of the six Weierstrass points, the Kulikov
type of the degenerating Jacobian, and the expected rank of the group the
cycle boundaries are meant to span.  The Type 2 and Type 3 dual complexes
(a cycle, and a triangulated torus) are produced here as well.

Configurations:

  I    one smooth genus-2 component C, self-intersection 0
  II   genus-1 curve E with a loop of 2n-1 rational curves (n >= 2)
  III  rational B (B^2 = -4) with two loops of 2n-1 and 2m-1 curves
  IV   elliptic E1, E2 (E^2 = -1) joined by a chain of r curves
  V    elliptic E chained to B (B^2 = -3) which carries a loop of 2m-1
  VI   B1, B2 (B^2 = -3) joined by a chain of s curves, with loops of
       2n-1 on B1 and 2m-1 on B2
  VII  B1, B2 joined by three chains of lengths 2r-1, 2s-1, 2t-1

All chain curves are rational with self-intersection -2.  A loop of
length 1 is a single curve meeting its base component twice.
"""

from __future__ import annotations

from dataclasses import dataclass

from .consani_complex import StratifiedComplex
from .fibre_model import Component, FibreGraph

CASE_IDS = ("I", "II", "III", "IV", "V", "VI", "VII")


class UnknownCase(ValueError):
    pass


class ParamOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class ExpectedRank:
    """Exact expected rank, or a lower bound for the smooth-Jacobian cases."""

    value: int
    exact: bool = True

    def __str__(self) -> str:
        return str(self.value) if self.exact else f">={self.value}"

    def to_json(self) -> int | str:
        return self.value if self.exact else f">={self.value}"


@dataclass(frozen=True)
class ParshinCase:
    case_id: str
    params: dict[str, int]
    weierstrass_slots: dict[str, str]
    jacobian_type: int
    expected_rank: ExpectedRank

    def __post_init__(self):
        if sorted(self.weierstrass_slots) != [f"w{i}" for i in range(1, 7)]:
            raise ValueError("weierstrass_slots must place exactly the six points w1..w6")


@dataclass(frozen=True)
class CaseBuild:
    graph: FibreGraph
    placement: ParshinCase


_PARAM_NAMES = {
    "I": (),
    "II": ("n",),
    "III": ("n", "m"),
    "IV": ("r",),
    "V": ("r", "m"),
    "VI": ("s", "n", "m"),
    "VII": ("r", "s", "t"),
}

_JACOBIAN_TYPE = {"I": 1, "II": 2, "III": 3, "IV": 1, "V": 2, "VI": 3, "VII": 3}

_EXPECTED = {
    "I": ExpectedRank(2, exact=False),
    "II": ExpectedRank(2),
    "III": ExpectedRank(3),
    "IV": ExpectedRank(3, exact=False),
    "V": ExpectedRank(2),
    "VI": ExpectedRank(3),
    "VII": ExpectedRank(3),
}


def param_names(case_id: str) -> tuple[str, ...]:
    _check_case(case_id)
    return _PARAM_NAMES[case_id]


def expected_dimension(case_id: str) -> ExpectedRank:
    _check_case(case_id)
    return _EXPECTED[case_id]


def jacobian_type(case_id: str) -> int:
    _check_case(case_id)
    return _JACOBIAN_TYPE[case_id]


def _check_case(case_id: str) -> None:
    if case_id not in CASE_IDS:
        raise UnknownCase(f"unknown case {case_id!r}; expected one of {', '.join(CASE_IDS)}")


def _check_params(case_id: str, params: dict[str, int]) -> None:
    expected = _PARAM_NAMES[case_id]
    if tuple(sorted(params)) != tuple(sorted(expected)):
        wanted = ", ".join(expected) if expected else "none"
        raise ParamOutOfRange(f"case {case_id} takes parameters: {wanted} (got {sorted(params) or 'none'})")
    for name, value in params.items():
        if not isinstance(value, int) or value < 1:
            raise ParamOutOfRange(f"case {case_id} parameter {name} must be a positive integer (got {value!r})")
    if case_id == "II" and params["n"] < 2:
        raise ParamOutOfRange(f"case II requires n >= 2 (got {params['n']})")


def _rational(name: str, self_int: int = -2) -> Component:
    return Component(name, genus=0, self_intersection=self_int)


def _chain(prefix: str, count: int) -> list[Component]:
    return [_rational(f"{prefix}{i}") for i in range(1, count + 1)]


def _chain_edges(prefix: str, count: int) -> list[tuple[str, str, int]]:
    return [(f"{prefix}{i}", f"{prefix}{i + 1}", 1) for i in range(1, count)]


def _loop(base: str, prefix: str, count: int) -> list[tuple[str, str, int]]:
    """A chain of `count` curves whose two ends meet `base`; for count 1
    the single curve meets `base` in two points."""
    if count == 1:
        return [(base, f"{prefix}1", 2)]
    return [(base, f"{prefix}1", 1)] + _chain_edges(prefix, count) + [(f"{prefix}{count}", base, 1)]


def _link(a: str, b: str, prefix: str, count: int) -> list[tuple[str, str, int]]:
    """A chain of `count` curves joining the distinct components a and b."""
    return [(a, f"{prefix}1", 1)] + _chain_edges(prefix, count) + [(f"{prefix}{count}", b, 1)]


def _slots(*placements: str) -> dict[str, str]:
    return {f"w{i + 1}": comp for i, comp in enumerate(placements)}


def _build_i(params):
    comps = [Component("C", genus=2, self_intersection=0)]
    return comps, [], _slots(*["C"] * 6)


def _build_ii(params):
    n = params["n"]
    comps = [Component("E", genus=1, self_intersection=-2)] + _chain("X", 2 * n - 1)
    edges = _loop("E", "X", 2 * n - 1)
    return comps, edges, _slots("E", "E", "E", "E", f"X{n}", f"X{n}")


def _build_iii(params):
    n, m = params["n"], params["m"]
    comps = [_rational("B", -4)] + _chain("X", 2 * n - 1) + _chain("Y", 2 * m - 1)
    edges = _loop("B", "X", 2 * n - 1) + _loop("B", "Y", 2 * m - 1)
    return comps, edges, _slots("B", "B", f"X{n}", f"X{n}", f"Y{m}", f"Y{m}")


def _build_iv(params):
    r = params["r"]
    comps = [Component("E1", genus=1, self_intersection=-1)] + _chain("X", r)
    comps += [Component("E2", genus=1, self_intersection=-1)]
    edges = _link("E1", "E2", "X", r)
    return comps, edges, _slots("E1", "E1", "E1", "E2", "E2", "E2")


def _build_v(params):
    r, m = params["r"], params["m"]
    s = 2 * m - 1
    comps = [Component("E", genus=1, self_intersection=-1)] + _chain("X", r)
    comps += [_rational("B", -3)] + _chain("Y", s)
    edges = _link("E", "B", "X", r) + _loop("B", "Y", s)
    return comps, edges, _slots("E", "E", "E", "B", f"Y{m}", f"Y{m}")


def _build_vi(params):
    s, n, m = params["s"], params["n"], params["m"]
    comps = [_rational("B1", -3), _rational("B2", -3)]
    comps += _chain("X", s) + _chain("Y", 2 * n - 1) + _chain("Z", 2 * m - 1)
    edges = _link("B1", "B2", "X", s) + _loop("B1", "Y", 2 * n - 1) + _loop("B2", "Z", 2 * m - 1)
    return comps, edges, _slots(f"Y{n}", f"Y{n}", f"Z{m}", f"Z{m}", "B1", "B2")


def _build_vii(params):
    r, s, t = params["r"], params["s"], params["t"]
    comps = [_rational("B1", -3), _rational("B2", -3)]
    comps += _chain("X", 2 * r - 1) + _chain("Y", 2 * s - 1) + _chain("Z", 2 * t - 1)
    edges = (
        _link("B1", "B2", "X", 2 * r - 1)
        + _link("B1", "B2", "Y", 2 * s - 1)
        + _link("B1", "B2", "Z", 2 * t - 1)
    )
    return comps, edges, _slots(f"X{r}", f"X{r}", f"Y{s}", f"Y{s}", f"Z{t}", f"Z{t}")


_BUILDERS = {
    "I": _build_i,
    "II": _build_ii,
    "III": _build_iii,
    "IV": _build_iv,
    "V": _build_v,
    "VI": _build_vi,
    "VII": _build_vii,
}


def build_case(case_id: str, **params: int) -> CaseBuild:
    """Build the fibre graph and Weierstrass placement of one configuration."""
    _check_case(case_id)
    _check_params(case_id, params)
    comps, edges, slots = _BUILDERS[case_id](params)
    graph = FibreGraph(comps, edges)
    placement = ParshinCase(
        case_id=case_id,
        params=dict(params),
        weierstrass_slots=slots,
        jacobian_type=_JACOBIAN_TYPE[case_id],
        expected_rank=_EXPECTED[case_id],
    )
    return CaseBuild(graph=graph, placement=placement)


def middle_aliases(case_id: str, params: dict[str, int]) -> dict[str, str]:
    """Symbolic names for the middle chain components, e.g. "Xn" -> "X2"."""
    _check_case(case_id)
    _check_params(case_id, dict(params))
    if case_id == "II":
        return {"Xn": f"X{params['n']}"}
    if case_id == "III":
        return {"Xn": f"X{params['n']}", "Ym": f"Y{params['m']}"}
    if case_id == "V":
        return {"Ym": f"Y{params['m']}"}
    if case_id == "VI":
        return {"Yn": f"Y{params['n']}", "Zm": f"Z{params['m']}"}
    if case_id == "VII":
        return {"Xr": f"X{params['r']}", "Ys": f"Y{params['s']}", "Zt": f"Z{params['t']}"}
    return {}


def default_cycle_specs(case_id: str, params: dict[str, int]) -> tuple[tuple[str, str], ...]:
    """The canonical Weierstrass placements certified for each case."""
    alias = middle_aliases(case_id, params)
    if case_id == "I":
        return (("C", "C"),)
    if case_id == "II":
        return (("E", alias["Xn"]),)
    if case_id == "III":
        return (("B", alias["Xn"]), ("B", alias["Ym"]))
    if case_id == "IV":
        return (("E1", "E2"),)
    if case_id == "V":
        return (("E", "B"),)
    if case_id == "VI":
        return (("B1", "B2"), ("B1", alias["Zm"]))
    if case_id == "VII":
        return ((alias["Xr"], alias["Ys"]), (alias["Ys"], alias["Zt"]))
    raise UnknownCase(case_id)


def build_kulikov_complex(kulikov_type: int, *size_params: int) -> StratifiedComplex:
    """Dual complex of a Type 2 or Type 3 degeneration.

    Type 2 is a cycle of N surfaces meeting along N double curves (N >= 3).
    Type 3 is the standard N1 x N2 triangulation of the torus (N1, N2 >= 3),
    with a vertex per surface, an edge per double curve and a triangle per
    triple point; every vertex has six neighbours.
    """
    if kulikov_type == 2:
        if len(size_params) != 1:
            raise ParamOutOfRange("type 2 takes a single cycle length N")
        (n,) = size_params
        if n < 3:
            raise ParamOutOfRange(f"type 2 cycle length must be >= 3 (got {n})")
        strata = {
            1: [(i,) for i in range(n)],
            2: sorted(tuple(sorted((i, (i + 1) % n))) for i in range(n)),
        }
        return StratifiedComplex(strata)
    if kulikov_type == 3:
        if len(size_params) != 2:
            raise ParamOutOfRange("type 3 takes two grid sizes N1, N2")
        n1, n2 = size_params
        if n1 < 3 or n2 < 3:
            raise ParamOutOfRange(f"type 3 grid sizes must be >= 3 (got {n1}x{n2})")

        def vid(i: int, j: int) -> int:
            return (i % n1) * n2 + (j % n2)

        edges: set[tuple[int, int]] = set()
        triangles: set[tuple[int, int, int]] = set()
        for i in range(n1):
            for j in range(n2):
                v = vid(i, j)
                right, up, diag = vid(i + 1, j), vid(i, j + 1), vid(i + 1, j + 1)
                edges.add(tuple(sorted((v, right))))
                edges.add(tuple(sorted((v, up))))
                edges.add(tuple(sorted((v, diag))))
                triangles.add(tuple(sorted((v, right, diag))))
                triangles.add(tuple(sorted((v, up, diag))))
        strata = {
            1: [(k,) for k in range(n1 * n2)],
            2: sorted(edges),
            3: sorted(triangles),
        }
        return StratifiedComplex(strata)
    raise ParamOutOfRange(f"kulikov type must be 2 or 3 (got {kulikov_type})")
