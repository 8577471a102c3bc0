"""Command-line front end.

Subcommands: catalog, solve, boundary, certify, complex, sweep.  Output is
text or JSON on stdout (or a file); every error path prints a single
"error: ..." line to stderr.  Exit codes: 0 success / certificate pass,
1 certificate fail or bound-only (and sweep rows failing), 2 malformed
input, 3 internal rank-method disagreement.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from fractions import Fraction

from . import consani_complex, fibre_model
from .boundary_engine import (
    CollinoDatum,
    MethodDisagreement,
    certificate_to_json,
    certify,
    closed_form_vertical,
    collino_boundary,
    matches_mod_constant,
    solve_vertical,
)
from .consani_complex import check_identities, complex_from_json, pch_rank
from .exactlin import RatMatrix, format_rat, rat
from .fibre_model import HorizontalDivisor, graph_from_json, graph_to_json
from .parshin_catalog import (
    CASE_IDS,
    build_case,
    build_kulikov_complex,
    default_cycle_specs,
    middle_aliases,
    param_names,
)

_PARAM_FLAGS = ("n", "m", "r", "s", "t")


class _CliError(Exception):
    def __init__(self, message: str, code: int = 2):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise _CliError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="g2chow", description="exact calculus on degenerating genus-2 fibres")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, default_format):
        p.add_argument("--format", choices=("text", "json"), default=default_format)
        p.add_argument("--output", default=None, help="write to a file instead of stdout")

    def add_case(p, required=False):
        p.add_argument("--case", choices=CASE_IDS, required=required)
        for flag in _PARAM_FLAGS:
            p.add_argument(f"--{flag}", default=None, help=f"case parameter {flag}")

    p = sub.add_parser("catalog", help="emit a catalogue fibre as JSON")
    add_case(p, required=True)
    add_common(p, "json")
    p.set_defaults(func=_cmd_catalog)

    p = sub.add_parser("solve", help="solve for the vertical divisor of a horizontal divisor")
    add_case(p)
    p.add_argument("--input", default=None, help="fibre JSON file carrying a 'horizontal' map")
    p.add_argument("--cycle", default=None, help="placement P:Q (catalogue mode)")
    p.add_argument("--normalize", default=None, help="gauge COMPONENT=VALUE (default: first component = 0)")
    add_common(p, "json")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("boundary", help="boundary vector of a cycle placement")
    add_case(p)
    p.add_argument("--input", default=None, help="fibre JSON file")
    p.add_argument("--cycle", required=True, help="placement P:Q")
    add_common(p, "json")
    p.set_defaults(func=_cmd_boundary)

    p = sub.add_parser("certify", help="rank certificate for cycle boundaries")
    add_case(p, required=True)
    p.add_argument("--cycles", default=None, help="comma-separated placements P:Q (default: the case's standard ones)")
    add_common(p, "text")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("complex", help="double-complex identity report and subquotient ranks")
    p.add_argument("--type", type=int, default=None, help="kulikov type (2 or 3)")
    p.add_argument("--N", type=int, default=None, help="cycle length for type 2")
    p.add_argument("--n1", type=int, default=None, help="torus grid rows for type 3")
    p.add_argument("--n2", type=int, default=None, help="torus grid columns for type 3")
    p.add_argument("--input", default=None, help="complex JSON file")
    p.add_argument("--from-case", dest="from_case", choices=CASE_IDS, default=None,
                   help="use the dual complex of a catalogue fibre")
    for flag in _PARAM_FLAGS:
        p.add_argument(f"--{flag}", default=None, help=f"case parameter {flag}")
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--a", type=int, default=None)
    p.add_argument("--iistar", default=None, help="JSON file with the Y^(1) self-map matrix")
    add_common(p, "text")
    p.set_defaults(func=_cmd_complex)

    p = sub.add_parser("sweep", help="closed-form conformance and certificates over parameter ranges")
    p.add_argument("--case", choices=CASE_IDS, required=True)
    for flag in _PARAM_FLAGS:
        p.add_argument(f"--{flag}", default=None, help=f"range for {flag}: A or A..B")
    add_common(p, "text")
    p.set_defaults(func=_cmd_sweep)

    return parser


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _collect_params(args, case_id: str) -> dict[str, int]:
    wanted = param_names(case_id)
    params: dict[str, int] = {}
    for flag in _PARAM_FLAGS:
        value = getattr(args, flag, None)
        if value is None:
            continue
        if flag not in wanted:
            raise _CliError(f"case {case_id} does not take --{flag}")
        try:
            params[flag] = int(value)
        except ValueError:
            raise _CliError(f"--{flag} must be an integer (got {value!r})") from None
    for flag in wanted:
        if flag not in params:
            raise _CliError(f"case {case_id} requires --{flag}")
    return params


def _resolve_cycle(raw: str, aliases: dict[str, str]) -> tuple[str, str]:
    parts = raw.split(":")
    if len(parts) != 2 or not parts[0] or not parts[1]:
        raise _CliError(f"malformed placement {raw!r} (use P_component:Q_component)")
    return aliases.get(parts[0], parts[0]), aliases.get(parts[1], parts[1])


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise _CliError(f"cannot read {path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise _CliError(f"invalid JSON in {path}: {exc}") from None


def _load_fibre(path: str):
    graph, horizontal = graph_from_json(_load_json(path))
    report = fibre_model.validate(graph)
    if not report.passed:
        first = report.failures()[0]
        raise _CliError(f"invalid fibre in {path}: {first.name} ({first.witness})")
    return graph, horizontal


def format_vector(graph, coefficients) -> str:
    terms = []
    for comp in graph.components:
        c = coefficients.get(comp.name, Fraction(0))
        if c == 0:
            continue
        magnitude = format_rat(abs(c))
        if not terms:
            terms.append(f"{'-' if c < 0 else ''}{magnitude}·{comp.name}")
        else:
            terms.append(f"{'-' if c < 0 else '+'} {magnitude}·{comp.name}")
    return " ".join(terms) if terms else "0"


def _case_label(case_id: str, params: dict[str, int]) -> str:
    if not params:
        return f"case {case_id}"
    inner = ", ".join(f"{k}={params[k]}" for k in param_names(case_id))
    return f"case {case_id} ({inner})"


def _cmd_catalog(args) -> int:
    params = _collect_params(args, args.case)
    build = build_case(args.case, **params)
    doc = graph_to_json(build.graph)
    doc["weierstrass"] = {w: build.placement.weierstrass_slots[w] for w in sorted(build.placement.weierstrass_slots)}
    doc["expected_rank"] = build.placement.expected_rank.to_json()
    if args.format == "json":
        _emit(args, json.dumps(doc, indent=2))
    else:
        lines = [f"{_case_label(args.case, params)}: jacobian type {build.placement.jacobian_type}, "
                 f"expected rank {build.placement.expected_rank}"]
        for comp in build.graph.components:
            lines.append(f"  {comp.name}: genus {comp.genus}, self-intersection {comp.self_intersection}")
        for a, b, k in build.graph.edges:
            lines.append(f"  {a}·{b} = {k}")
        for w in sorted(build.placement.weierstrass_slots):
            lines.append(f"  {w} -> {build.placement.weierstrass_slots[w]}")
        _emit(args, "\n".join(lines))
    return 0


def _solve_inputs(args):
    if (args.input is None) == (args.case is None):
        raise _CliError("exactly one input source: --input FILE or --case CASE")
    if args.input is not None:
        graph, horizontal = _load_fibre(args.input)
        if args.cycle is not None:
            p, q = _resolve_cycle(args.cycle, {})
            graph.index(p)
            graph.index(q)
            horizontal = HorizontalDivisor({} if p == q else {p: 2, q: -2})
        if horizontal is None:
            raise _CliError(f"{args.input} has no 'horizontal' map and no --cycle was given")
        return graph, horizontal
    params = _collect_params(args, args.case)
    build = build_case(args.case, **params)
    if args.cycle is None:
        raise _CliError("catalogue mode needs --cycle P:Q")
    p, q = _resolve_cycle(args.cycle, middle_aliases(args.case, params))
    build.graph.index(p)
    build.graph.index(q)
    horizontal = HorizontalDivisor({} if p == q else {p: 2, q: -2})
    return build.graph, horizontal


def _cmd_solve(args) -> int:
    graph, horizontal = _solve_inputs(args)
    if args.normalize:
        name, _, value = args.normalize.partition("=")
        if not _ or name not in graph.names:
            raise _CliError(f"malformed --normalize {args.normalize!r} (use COMPONENT=VALUE)")
        normalization = (name, rat(value))
    else:
        normalization = (graph.names[0], Fraction(0))
    vertical = solve_vertical(graph, horizontal, normalization)
    if args.format == "json":
        doc = {
            "normalization": {normalization[0]: format_rat(rat(normalization[1]))},
            "coefficients": {name: format_rat(vertical[name]) for name in sorted(graph.names)},
        }
        _emit(args, json.dumps(doc, indent=2))
    else:
        _emit(args, f"vertical divisor: {format_vector(graph, vertical.coefficients)}")
    return 0


def _cmd_boundary(args) -> int:
    if (args.input is None) == (args.case is None):
        raise _CliError("exactly one input source: --input FILE or --case CASE")
    if args.input is not None:
        graph, _ = _load_fibre(args.input)
        p, q = _resolve_cycle(args.cycle, {})
    else:
        params = _collect_params(args, args.case)
        graph = build_case(args.case, **params).graph
        p, q = _resolve_cycle(args.cycle, middle_aliases(args.case, params))
    boundary = collino_boundary(CollinoDatum(graph, p, q))
    if args.format == "json":
        doc = {
            "cycle": f"{p}:{q}",
            "coefficients": {name: format_rat(boundary[name]) for name in sorted(graph.names)},
            "mod_fibre": True,
        }
        _emit(args, json.dumps(doc, indent=2))
    else:
        _emit(args, f"∂Ξ({p},{q}) = {format_vector(graph, boundary.coefficients)} (mod fibre)")
    return 0


def _certificate_text(cert) -> str:
    lines = [_case_label(cert.case_id, cert.params)]
    for (p, q), boundary in zip(cert.cycle_specs, cert.boundaries):
        lines.append(f"∂Ξ({p},{q}) = {format_vector(boundary.graph, boundary.coefficients)} (mod fibre)")
    for (p, q), probe in zip(cert.cycle_specs, cert.probes):
        rendered = ", ".join(f"{name}: {format_rat(v)}" for name, v in probe.items())
        lines.append(f"  pairings of ∂Ξ({p},{q}) with slot components: {rendered}")
    lines.append(f"coefficient rank (mod fibre): {cert.rank_mod_fibre}")
    lines.append(f"gram rank: {cert.gram_rank}")
    lines.append(f"achieved rank: {cert.achieved_rank}")
    lines.append(f"expected rank: {cert.expected}")
    lines.append(f"verdict: {cert.verdict}")
    return "\n".join(lines)


def _cmd_certify(args) -> int:
    params = _collect_params(args, args.case)
    aliases = middle_aliases(args.case, params)
    if args.cycles:
        specs = [_resolve_cycle(part, aliases) for part in args.cycles.split(",") if part]
        if not specs:
            raise _CliError("--cycles is empty")
    else:
        specs = list(default_cycle_specs(args.case, params))
    cert = certify(args.case, params, specs)
    if args.format == "json":
        _emit(args, json.dumps(certificate_to_json(cert), indent=2))
    else:
        _emit(args, _certificate_text(cert))
    return 0 if cert.verdict == "pass" else 1


def _identity_lines(report) -> list[str]:
    lines = []
    by_kind = {"gamma_squared": "γ² = 0", "rho_squared": "ρ² = 0"}
    for kind, label in by_kind.items():
        entries = report.entries(kind)
        conventions = sorted({e.convention for e in entries if e.convention}) or [None]
        for conv in conventions:
            subset = [e for e in entries if e.convention == conv]
            if not subset:
                continue
            tag = f" [{conv}]" if conv else ""
            bad = [e for e in subset if not e.holds]
            if bad:
                lines.append(f"{label}{tag}: FAIL (degree {bad[0].degree}: {bad[0].witness})")
            else:
                lines.append(f"{label}{tag}: pass")
    for conv in sorted({e.convention for e in report.entries("anticommutator")}):
        subset = [e for e in report.entries("anticommutator") if e.convention == conv]
        bad = [e for e in subset if not e.holds]
        if bad:
            lines.append(f"γ·ρ + ρ·γ = 0 [{conv}]: does not hold (degree {bad[0].degree}: {bad[0].witness})")
        else:
            lines.append(f"γ·ρ + ρ·γ = 0 [{conv}]: holds")
    return lines


def _cmd_complex(args) -> int:
    sources = [args.type is not None, args.input is not None, args.from_case is not None]
    if sum(sources) != 1:
        raise _CliError("exactly one input source: --type, --input or --from-case")
    iistar = None
    if args.type is not None:
        if args.type == 2:
            if args.N is None:
                raise _CliError("type 2 needs --N")
            cx = build_kulikov_complex(2, args.N)
            label = f"type 2 cycle, N={args.N}"
        elif args.type == 3:
            if args.n1 is None or args.n2 is None:
                raise _CliError("type 3 needs --n1 and --n2")
            cx = build_kulikov_complex(3, args.n1, args.n2)
            label = f"type 3 torus, {args.n1}x{args.n2}"
        else:
            raise _CliError(f"--type must be 2 or 3 (got {args.type})")
    elif args.input is not None:
        cx = complex_from_json(_load_json(args.input))
        label = args.input
    else:
        params = _collect_params(args, args.from_case)
        build = build_case(args.from_case, **params)
        cx = consani_complex.complex_from_fibre_graph(build.graph)
        iistar = fibre_model.intersection_matrix(build.graph)
        label = _case_label(args.from_case, params)
    if args.iistar is not None:
        iistar = RatMatrix([[rat(x) for x in row] for row in _load_json(args.iistar)])
    report = check_identities(cx)
    pch = None
    if (args.q is None) != (args.a is None):
        raise _CliError("--q and --a must be given together")
    if args.q is not None:
        pch = pch_rank(cx, args.q, args.a, iistar)
    strata_sizes = [len(cx.strata(r)) for r in range(1, cx.depth + 1)]
    if args.format == "json":
        doc = {
            "complex": label,
            "depth": cx.depth,
            "strata_sizes": strata_sizes,
            "identities": [
                {
                    "identity": c.identity,
                    "degree": c.degree,
                    "convention": c.convention,
                    "holds": c.holds,
                    "witness": c.witness,
                }
                for c in report.checks
            ],
        }
        if pch is not None:
            doc["pch"] = pch.to_json()
        _emit(args, json.dumps(doc, indent=2))
    else:
        lines = [f"complex: {label} (depth {cx.depth}, strata sizes {strata_sizes})"]
        lines.extend(_identity_lines(report))
        if pch is not None:
            lines.append(
                f"pch rank (q={pch.q}, a={pch.a}): numerator {pch.numerator_dim}, "
                f"denominator {pch.denominator_dim}, quotient {pch.quotient_dim}"
            )
        _emit(args, "\n".join(lines))
    structural = report.holds("gamma_squared") and report.holds("rho_squared")
    return 0 if structural else 1


def _parse_range(text: str, flag: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(text)]
    except ValueError:
        raise _CliError(f"malformed range {text!r} for --{flag} (use A or A..B)") from None


def _sweep_row(case_id: str, params: dict[str, int]) -> dict:
    graph = build_case(case_id, **params).graph
    specs = default_cycle_specs(case_id, params)
    flags: dict[str, bool] = {}
    closed_ok = True
    for p, q in specs:
        reference = closed_form_vertical(case_id, params, p, q)
        if reference is None:
            continue
        mult = {} if p == q else {p: 2, q: -2}
        vertical = solve_vertical(graph, HorizontalDivisor(mult), (p, 0))
        closed_ok = closed_ok and matches_mod_constant(vertical, reference)
    flags["closed_form"] = closed_ok
    if case_id == "V":
        alias = middle_aliases(case_id, params)
        first = collino_boundary(CollinoDatum(graph, "E", "B"))
        second = collino_boundary(CollinoDatum(graph, "E", alias["Ym"]))
        flags["placement_agreement"] = first == second
    cert = certify(case_id, params, specs)
    ok = all(flags.values()) and cert.verdict != "fail"
    return {
        "params": dict(params),
        "flags": flags,
        "achieved": cert.achieved_rank,
        "expected": cert.expected.to_json(),
        "verdict": cert.verdict,
        "ok": ok,
    }


def _cmd_sweep(args) -> int:
    wanted = param_names(args.case)
    ranges = []
    for flag in wanted:
        value = getattr(args, flag, None)
        if value is None:
            raise _CliError(f"case {args.case} requires a range for --{flag}")
        ranges.append(_parse_range(value, flag))
    for flag in _PARAM_FLAGS:
        if flag not in wanted and getattr(args, flag, None) is not None:
            raise _CliError(f"case {args.case} does not take --{flag}")
    rows = []
    for combo in itertools.product(*ranges) if wanted else [()]:
        params = dict(zip(wanted, combo))
        rows.append(_sweep_row(args.case, params))
    failures = sum(1 for row in rows if not row["ok"])
    if args.format == "json":
        _emit(args, json.dumps({"case": args.case, "rows": rows, "failures": failures}, indent=2))
    else:
        lines = [f"sweep case {args.case}"]
        for row in rows:
            rendered_params = ", ".join(f"{k}={row['params'][k]}" for k in wanted) or "-"
            rendered_flags = " ".join(
                f"{name}={'ok' if value else 'FAIL'}" for name, value in row["flags"].items()
            )
            lines.append(
                f"{rendered_params}: {rendered_flags} rank={row['achieved']} "
                f"expected={row['expected']} verdict={row['verdict']}"
            )
        lines.append(f"{len(rows)} rows, {failures} failures")
        _emit(args, "\n".join(lines))
    return 1 if failures else 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except MethodDisagreement as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except KeyError as exc:
        print(f"error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return 2
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
