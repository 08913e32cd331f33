"""Command line front end.

Every subcommand reads graphs from JSON documents (see `graphs`), prints a
human-readable report by default, and with --json prints a single machine
document: {command, inputs, options, result, diagnostics}.  Exit codes:
0 success, 1 invalid input, 2 computation failure or failed check, 3 I/O.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import cycles as cyc
from . import graphs, ihara, lfunc, spectral
from . import zeta as zt
from .exact import PadeError

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_COMPUTATION = 2
EXIT_IO = 3


class UsageError(Exception):
    """Unknown command, unknown flag, or a flag value that does not parse."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class CommandPlan:
    """A parsed invocation: the subcommand, its input file paths, and the
    remaining flags, plus the bound handler that executes it."""

    command: str
    inputs: dict
    options: dict
    _args: argparse.Namespace = field(repr=False, default=None)

    def run(self):
        return self._args.func(self._args)


def parse_command(argv) -> CommandPlan:
    """Validate an argument vector into an executable plan; unknown flags
    are rejected here, before any computation starts."""
    args = build_parser().parse_args(argv)
    data = {k: v for k, v in vars(args).items() if k != "func"}
    command = data.pop("command")
    inputs = {k: data.pop(k) for k in ("graph", "blocks") if data.get(k)}
    return CommandPlan(command=command, inputs=inputs, options=data, _args=args)


def _load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_graph(path):
    return graphs.graph_from_document(_load_json(path))


def _emit(args, doc, human_lines):
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


def _write_or_print(args, text):
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _ratfunc_lines(label, r):
    return [f"{label} = {r}"]


def cmd_validate(args):
    g = _load_graph(args.graph)
    doc = {
        "command": "validate",
        "inputs": {"graph": args.graph},
        "options": {},
        "result": {
            "ok": True,
            "vertices": len(g.vertices),
            "edge_pairs": len(g.edges) // 2,
            "cusps": len(g.cusps),
        },
        "diagnostics": [],
    }
    _emit(args, doc, [
        f"ok: {len(g.vertices)} vertices, {len(g.edges) // 2} edge pairs, "
        f"{len(g.cusps)} cusps",
    ])
    return EXIT_OK


def cmd_nagao(args):
    qs = [int(x) for x in args.qs.split(",") if x.strip()]
    extra = [int(x) for x in args.extra.split(",") if x.strip()] if args.extra else None
    g = graphs.build_nagao(qs, extra)
    text = json.dumps(graphs.graph_to_document(g), indent=2, sort_keys=True) + "\n"
    if args.json and not args.output:
        doc = {
            "command": "nagao",
            "inputs": {"qs": qs, "extra": extra},
            "options": {},
            "result": graphs.graph_to_document(g),
            "diagnostics": [],
        }
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        _write_or_print(args, text)
    return EXIT_OK


def cmd_traces(args):
    g = _load_graph(args.graph)
    ts = zt.traces(g, args.order)
    doc = {
        "command": "traces",
        "inputs": {"graph": args.graph},
        "options": {"order": args.order},
        "result": {"counts": [str(n) for n in ts.counts]},
        "diagnostics": [],
    }
    _emit(args, doc, [f"N_{m} = {n}" for m, n in enumerate(ts.counts, start=1)])
    return EXIT_OK


def _zeta_methods(g, args):
    """(method name, ZetaResult) pairs for the requested method set."""
    closable = g.is_finite or all(c.limit_valency() is not None for c in g.cusps)
    chosen = args.method
    out = []
    notes = []
    if chosen == "pade" or (chosen == "all" and not g.is_finite):
        out.append(zt.zeta_via_pade(g, args.order))
    elif chosen == "all" and g.is_finite:
        notes.append("approximant route skipped: the determinant is already exact "
                     "on a finite graph (request it with --method pade)")
    if chosen in ("closure", "all"):
        if closable:
            out.append(zt.zeta_via_closure(g, depth=args.depth))
        elif chosen == "closure":
            raise ValueError("closure needs eventually constant rays on every cusp")
        else:
            notes.append("closure skipped: some cusp has no eventually constant ray")
    if chosen in ("finite", "all"):
        if g.is_finite:
            r = zt.zeta_finite(graphs.truncate(g, 0))
            out.append(zt.ZetaResult(r, "finite_det", 0, {}))
        elif chosen == "finite":
            raise ValueError("finite determinant route applies only to graphs without cusps")
    return out, notes


def cmd_zeta(args):
    g = _load_graph(args.graph)
    results, notes = _zeta_methods(g, args)
    comparison = zt.compare_methods(results)
    lines = []
    for res in results:
        lines.extend(_ratfunc_lines(f"1/Z [{res.method}]", res.inverse_zeta))
    lines.extend(notes)
    doc = {
        "command": "zeta",
        "inputs": {"graph": args.graph},
        "options": {"method": args.method, "order": args.order, "depth": args.depth},
        "result": {
            "methods": [
                {
                    "method": res.method,
                    "inverse_zeta": res.inverse_zeta.to_dict(),
                    "validated_order": res.validated_order,
                    "diagnostics": {k: str(v) for k, v in res.diagnostics.items()},
                }
                for res in results
            ],
            "agree": comparison["agree"],
        },
        "diagnostics": notes,
    }
    if len(results) > 1:
        lines.append(f"methods agree: {'yes' if comparison['agree'] else 'NO'}")
    _emit(args, doc, lines)
    if not comparison["agree"]:
        print("method disagreement", file=sys.stderr)
        return EXIT_COMPUTATION
    return EXIT_OK


def cmd_cycles(args):
    g = _load_graph(args.graph)
    census = cyc.cycle_census(g, args.max_len)
    text = cyc.census_text(census)
    doc = {
        "command": "cycles",
        "inputs": {"graph": args.graph},
        "options": {"max_len": args.max_len},
        "result": {
            "rows": [
                {"length": length, "weight": weight, "count": count,
                 "is_prime": is_prime}
                for length, weight, count, is_prime in cyc.census_rows(census)
            ],
            "prime_count": len(census.primes),
        },
        "diagnostics": [],
    }
    if args.json:
        _emit(args, doc, [])
        if args.output:
            _write_or_print(args, text)
    else:
        _write_or_print(args, text)
    return EXIT_OK


def cmd_euler_check(args):
    g = _load_graph(args.graph)
    census = cyc.cycle_census(g, args.degree)
    product = cyc.euler_product_series(census, args.degree)
    ts = zt.traces(g, args.degree)
    series = zt.inverse_zeta_series(ts)
    agree = product.agrees_with(series, args.degree)
    first_diff = None
    for k in range(args.degree + 1):
        if product.coeffs[k] != series.coeffs[k]:
            first_diff = k
            break
    doc = {
        "command": "euler-check",
        "inputs": {"graph": args.graph},
        "options": {"degree": args.degree},
        "result": {
            "agree": agree,
            "euler_series": product.to_strings(),
            "trace_series": series.to_strings(),
            "first_difference": first_diff,
        },
        "diagnostics": [],
    }
    lines = [f"euler product:  {product}",
             f"trace series:   {series}",
             f"agree through degree {args.degree}: {'yes' if agree else 'NO'}"]
    if first_diff is not None:
        lines.append(f"first difference at degree {first_diff}")
    _emit(args, doc, lines)
    return EXIT_OK if agree else EXIT_COMPUTATION


def cmd_ihara_check(args):
    g = _load_graph(args.graph)
    depths = [0] if g.is_finite else list(range(args.max_depth + 1))
    rows = []
    all_ok = True
    for depth in depths:
        report = ihara.bass_identity_check(graphs.truncate(g, depth))
        rows.append((depth, report))
        all_ok = all_ok and report.ok
    doc = {
        "command": "ihara-check",
        "inputs": {"graph": args.graph},
        "options": {"max_depth": args.max_depth},
        "result": {
            "ok": all_ok,
            "rows": [
                {"depth": depth, "ok": rep.ok,
                 "euler_characteristic": rep.euler_characteristic}
                for depth, rep in rows
            ],
        },
        "diagnostics": [],
    }
    lines = [
        f"depth {depth}: chi = {rep.euler_characteristic}, "
        f"identity {'holds' if rep.ok else 'FAILS'}"
        for depth, rep in rows
    ]
    _emit(args, doc, lines)
    return EXIT_OK if all_ok else EXIT_COMPUTATION


def _q_max(g):
    """Largest branching parameter in sight: max tree valency minus one
    over core vertices, and every ray parameter."""
    qmax = 1
    for v in g.vertices:
        qmax = max(qmax, g.tree_valency[v] - 1)
    for c in g.cusps:
        qmax = max(qmax, *(c.period + c.preperiod + (1,)))
    return qmax


def cmd_minor_net(args):
    g = _load_graph(args.graph)
    u = Fraction(args.u)
    qmax = _q_max(g)
    if abs(u) * (qmax + 1) >= 1:
        print(f"warning: |u| = {abs(u)} is outside the guaranteed radius "
              f"1/{qmax + 1}; refusing to evaluate there", file=sys.stderr)
        return EXIT_INVALID
    schedule = "adversarial" if args.adversarial else "connected"
    samples = ihara.minor_net(g, u, mode=args.mode, schedule=schedule,
                              max_depth=args.max_depth)
    connected = [s for s in samples if s.connected]
    deltas = [abs(a.value - b.value)
              for a, b in zip(connected, connected[1:])]
    doc = {
        "command": "minor-net",
        "inputs": {"graph": args.graph},
        "options": {"u": str(u), "mode": args.mode, "schedule": schedule,
                    "max_depth": args.max_depth},
        "result": {
            "samples": [
                {"depth": s.depth, "connected": s.connected, "size": s.size,
                 "value": str(s.value)}
                for s in samples
            ],
            "last_connected_value": str(connected[-1].value),
            "last_connected_delta": str(deltas[-1]) if deltas else None,
        },
        "diagnostics": [],
    }
    lines = ["depth connected value"]
    lines += [
        f"{s.depth} {str(s.connected).lower()} "
        f"{s.value.numerator}/{s.value.denominator}"
        for s in samples
    ]
    if deltas:
        lines.append(f"last connected-to-connected step: {deltas[-1]}")
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_lfunction(args):
    g = _load_graph(args.graph)
    b = lfunc.blocks_from_document(_load_json(args.blocks)) if args.blocks \
        else lfunc.BlockAssignment()
    res = lfunc.lfunction(g, b, args.order)
    lines = _ratfunc_lines("1/L", res.inverse_zeta)
    agree = None
    if args.euler_degree:
        census = cyc.cycle_census(g, args.euler_degree)
        product = lfunc.l_euler_series(census, b, args.euler_degree)
        series = res.inverse_zeta.series(args.euler_degree)
        agree = product.agrees_with(series, args.euler_degree)
        lines.append(f"euler product agrees through degree {args.euler_degree}: "
                     f"{'yes' if agree else 'NO'}")
    doc = {
        "command": "lfunction",
        "inputs": {"graph": args.graph, "blocks": args.blocks},
        "options": {"order": args.order, "euler_degree": args.euler_degree},
        "result": {
            "inverse_l": res.inverse_zeta.to_dict(),
            "validated_order": res.validated_order,
            "euler_agree": agree,
            "diagnostics": {k: str(v) for k, v in res.diagnostics.items()},
        },
        "diagnostics": [],
    }
    _emit(args, doc, lines)
    if agree is False:
        return EXIT_COMPUTATION
    return EXIT_OK


def _auto_zeta(g, args):
    closable = g.is_finite or all(c.limit_valency() is not None for c in g.cusps)
    if closable:
        return zt.zeta_via_closure(g)
    return zt.zeta_via_pade(g, args.order)


def _root_strings(roots):
    out = []
    for z in roots:
        if z.imag == 0:
            out.append(f"{z.real:.12g}")
        else:
            out.append(f"{z.real:.12g}{z.imag:+.12g}i")
    return out


def cmd_spectrum(args):
    g = _load_graph(args.graph)
    res = _auto_zeta(g, args)
    ts = zt.traces(g, args.order)
    report = spectral.spectral_report(res, g, trace_check=ts)
    doc = {
        "command": "spectrum",
        "inputs": {"graph": args.graph},
        "options": {"order": args.order},
        "result": {
            "inverse_zeta": res.inverse_zeta.to_dict(),
            "a_roots": _root_strings(report.a_roots),
            "root_error_bound": "1e-9",
            "numerator_moduli": report.numerator_moduli,
            "denominator_moduli": report.denominator_moduli,
            "dominant_modulus": report.dominant_modulus,
            "delta": report.delta,
            "delta_certified": report.delta_certified,
            "certified_power": str(report.certified_power)
            if report.certified_power is not None else None,
            "second_modulus": report.second_modulus,
            "q": report.q,
            "epsilon": report.epsilon,
            "cusp_count": report.cusp_count,
            "reconstruction": report.reconstruction,
        },
        "diagnostics": report.notes,
    }
    lines = _ratfunc_lines("1/Z", res.inverse_zeta) + [
        f"dominant modulus: {report.dominant_modulus:.9g} "
        f"(multiplicity {report.delta}, "
        f"{'certified' if report.delta_certified else 'uncertified'})",
        f"second modulus:   {report.second_modulus:.9g}"
        if report.second_modulus is not None else "second modulus:   none",
        f"regular q: {report.q}, spectral gap: {report.epsilon}"
        if report.q is not None else "graph is not regular",
        f"count reconstruction: {report.reconstruction}",
    ]
    lines.extend(report.notes)
    _emit(args, doc, lines)
    if report.reconstruction == "failed":
        return EXIT_COMPUTATION
    return EXIT_OK


def cmd_pgt(args):
    g = _load_graph(args.graph)
    res = _auto_zeta(g, args)
    ts = zt.traces(g, args.order)
    report = spectral.spectral_report(res.inverse_zeta, g, trace_check=ts)
    pgt = spectral.pgt_check(ts, report)
    doc = {
        "command": "pgt",
        "inputs": {"graph": args.graph},
        "options": {"order": args.order},
        "result": {
            "rows": [
                {"length": row.length, "count": str(row.count),
                 "main": str(row.main), "residual": str(row.residual),
                 "rate": row.rate}
                for row in pgt.rows
            ],
            "verdict": pgt.verdict,
            "eps_prime": pgt.eps_prime,
            "tail_start": pgt.tail_start,
        },
        "diagnostics": pgt.notes + report.notes,
    }
    lines = ["m N_m main_term residual"]
    for row in pgt.rows:
        lines.append(f"{row.length} {row.count} {row.main} {row.residual}")
    eps_text = f"{pgt.eps_prime:.6f}" if pgt.eps_prime is not None else "n/a"
    lines.append(f"verdict: {'PASS' if pgt.verdict else 'FAIL'} "
                 f"(tail from m = {pgt.tail_start}, eps' = {eps_text})")
    _emit(args, doc, lines)
    return EXIT_OK if pgt.verdict else EXIT_COMPUTATION


def build_parser():
    parser = _Parser(
        prog="cuspzeta",
        description="Exact zeta functions and twisted L-functions of "
                    "edge-weighted graphs with cusp rays.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--json", action="store_true",
                       help="machine readable output")
        return p

    p = add("validate", cmd_validate, "check a graph document")
    p.add_argument("graph")

    p = add("nagao", cmd_nagao, "emit a one-cusp lattice quotient document")
    p.add_argument("--qs", required=True,
                   help="comma separated ray parameters, e.g. 2 or 2,3")
    p.add_argument("--extra", default=None,
                   help="comma separated parameters preceding the cycle")
    p.add_argument("-o", "--output", help="write the document to a file")

    p = add("traces", cmd_traces, "weighted closed path counts")
    p.add_argument("graph")
    p.add_argument("-M", "--order", type=int, default=16)

    p = add("zeta", cmd_zeta, "inverse zeta by one or all methods")
    p.add_argument("graph")
    p.add_argument("--method", choices=["pade", "closure", "finite", "all"],
                   default="all")
    p.add_argument("-M", "--traces", "--order", type=int, default=16,
                   dest="order", help="trace order for the approximant route")
    p.add_argument("--depth", type=int, default=None,
                   help="closure depth (default: shortest legal)")

    p = add("cycles", cmd_cycles, "cycle census up to a length bound")
    p.add_argument("graph")
    p.add_argument("-L", "--max-len", type=int, default=8)
    p.add_argument("-o", "--output", help="write the census table to a file")

    p = add("euler-check", cmd_euler_check,
            "compare the prime product against the trace series")
    p.add_argument("graph")
    p.add_argument("-D", "--degree", type=int, default=8)

    p = add("ihara-check", cmd_ihara_check,
            "edge vs vertex determinant identity on truncations")
    p.add_argument("graph")
    p.add_argument("--max-depth", type=int, default=6)

    p = add("minor-net", cmd_minor_net, "determinant minors along exhaustions")
    p.add_argument("graph")
    p.add_argument("--u", default="1/10", help="rational evaluation point")
    p.add_argument("--mode", choices=["transfer", "vertex"], default="transfer")
    p.add_argument("--adversarial", action="store_true",
                   help="interleave detached far ray segments")
    p.add_argument("--max-depth", type=int, default=8)

    p = add("lfunction", cmd_lfunction, "twisted L-function from block data")
    p.add_argument("graph")
    p.add_argument("--blocks", help="JSON block assignment (default: trivial)")
    p.add_argument("-M", "--order", type=int, default=16)
    p.add_argument("--euler-degree", type=int, default=None,
                   help="also cross-check against the prime product")

    p = add("spectrum", cmd_spectrum, "dominant spectrum of the inverse zeta")
    p.add_argument("graph")
    p.add_argument("-M", "--order", type=int, default=12)

    p = add("pgt", cmd_pgt, "growth of counts against the dominant term")
    p.add_argument("graph")
    p.add_argument("-M", "--order", type=int, default=12)

    return parser


def main(argv=None):
    try:
        plan = parse_command(argv)
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return EXIT_INVALID
    try:
        return plan.run()
    except graphs.ValidationError as err:
        for violation in err.violations:
            print(f"invalid: {violation}", file=sys.stderr)
        return EXIT_INVALID
    except (OSError, json.JSONDecodeError) as err:
        print(f"io error: {err}", file=sys.stderr)
        return EXIT_IO
    except (PadeError, ValueError, ArithmeticError, ZeroDivisionError) as err:
        print(f"computation failed: {err}", file=sys.stderr)
        return EXIT_COMPUTATION


if __name__ == "__main__":
    sys.exit(main())
