"""Command-line surface: every capability behind stable, scriptable output.

Human-readable text by default, one JSON object with --json.  Integers
appear in full decimal; inside JSON anything potentially huge is a
string.  Exit codes: 0 success, 2 domain error, 3 resource guard, 64
usage problems.
"""

from __future__ import annotations

import argparse
import json
import sys

from .automaton import automaton
from .counting import (count_cycles, count_series, gf_count, gf_weighted,
                       monomial_coefficient, weight_enumerator)
from .errors import DomainError, ResourceLimitError
from .geometry import RenderOptions, cycle_to_matrix, render_ascii, render_svg
from .oracle import enumerate_cycles_bruteforce
from .sampling import SampleConfig, sample_many
from .stats import asymptotic_moments, correlation, moments


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; the contract wants 64
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(64)


def _rows_arg(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad row list {text!r}")


def _exps_arg(text: str) -> tuple:
    out = []
    for p in text.split(","):
        p = p.strip()
        if p == "*":
            out.append(None)
        else:
            try:
                out.append(int(p))
            except ValueError:
                raise argparse.ArgumentTypeError(f"bad exponent {p!r}")
    return tuple(out)


def _weight_spec(text: str | None, m: int):
    if text is None or text == "all":
        return None
    rows = set(_rows_arg(text))
    return [r in rows for r in range(1, m)]


def _matrix_lines(matrix) -> list[str]:
    return ["".join(str(b) for b in row) for row in matrix]


def _edge_list(edges) -> list:
    return sorted([list(u), list(v)] for u, v in edges)


# -- subcommand handlers (return text, json payload) -------------------

def _cmd_alphabet(args):
    aut = automaton(args.width)
    ns = sum(1 for _ in aut.starter_idx)
    ne = sum(1 for e in aut.ender_flags if e)
    lines = [f"width {args.width}: {aut.state_count} states, "
             f"{ns} starters, {ne} enders"]
    starters = set(aut.starter_idx)
    states = []
    for i, s in enumerate(aut.states):
        tag = ("S" if i in starters else "-") + \
            ("E" if aut.ender_flags[i] else "-")
        succ = ",".join(str(j) for j in aut.succ[i])
        lines.append(f"  {i:3d} {s!r} {tag} -> {succ}")
        states.append({
            "index": i,
            "column": "".join(str(b) for b in s.column),
            "blocks": [list(b) for b in s.blocks],
            "starter": i in starters,
            "ender": bool(aut.ender_flags[i]),
            "successors": list(aut.succ[i]),
        })
    payload = {"width": args.width, "state_count": aut.state_count,
               "states": states}
    return "\n".join(lines), payload


def _cmd_count(args):
    v = count_cycles(args.m, args.n, cache_dir=args.cache_dir)
    return str(v), {"m": args.m, "n": args.n, "count": str(v)}


def _cmd_series(args):
    vals = count_series(args.m, args.terms)
    text = "\n".join(f"{n} {v}" for n, v in enumerate(vals))
    return text, {"m": args.m, "series": [str(v) for v in vals]}


def _cmd_gf(args):
    if args.weights is None:
        f = gf_count(args.m, cache_dir=args.cache_dir,
                     no_cache=args.no_cache)
        text = f"numerator: {f.num.pretty()}\ndenominator: {f.den.pretty()}"
        payload = {"m": args.m,
                   "num": [str(f.num.coeff(k)) for k in range(f.num.degree + 1)],
                   "den": [str(f.den.coeff(k)) for k in range(f.den.degree + 1)]}
        return text, payload
    spec = _weight_spec(args.weights, args.m)
    num, den = gf_weighted(args.m, spec)
    names = ["z"] + [f"w{i}" for i in range(1, args.m)]
    text = (f"numerator: {num.pretty(names)}\n"
            f"denominator: {den.pretty(names)}")

    def enc(p):
        return [{"exps": list(e), "coeff": str(c)}
                for e, c in sorted(p.terms.items())]

    return text, {"m": args.m, "variables": names,
                  "num_terms": enc(num), "den_terms": enc(den)}


def _cmd_enumerator(args):
    spec = _weight_spec(args.weights, args.m)
    poly = weight_enumerator(args.m, args.n, spec)
    names = [f"w{i}" for i in range(1, args.m)]
    total = sum(poly.terms.values())
    text = (f"{poly.pretty(names)}\n"
            f"terms: {len(poly.terms)}  total: {total}")
    payload = {"m": args.m, "n": args.n,
               "terms": [{"exps": list(e), "coeff": str(c)}
                         for e, c in sorted(poly.terms.items())],
               "total": str(total)}
    return text, payload


def _cmd_coeff(args):
    v = monomial_coefficient(args.m, args.n, args.exps)
    payload = {"m": args.m, "n": args.n,
               "exps": [e if e is not None else None for e in args.exps],
               "coeff": str(v)}
    return str(v), payload


def _cmd_stats(args):
    if args.asymptotic:
        if args.rows2:
            rep = correlation(args.m, "asymptotic", args.rows, args.rows2,
                              precision=args.precision)
        else:
            rep = asymptotic_moments(args.m, args.rows, args.precision)
    else:
        if args.rows2:
            rep = correlation(args.m, args.n, args.rows, args.rows2,
                              precision=args.precision)
        else:
            rep = moments(args.m, args.n, args.rows)
    return rep.render(), rep.to_json()


def _cmd_sample(args):
    if args.svg and args.count != 1:
        raise DomainError("--svg writes a single drawing, use --count 1")
    cfg = SampleConfig(args.m, args.n, seed=args.seed, count=args.count)
    results = sample_many(cfg)
    blocks = []
    samples = []
    for r in results:
        lines = _matrix_lines(r.matrix)
        edges = r.edges
        lines.append("probability: " + str(r.probability))
        if args.ascii:
            lines.append(render_ascii(edges))
        blocks.append("\n".join(lines))
        samples.append({"matrix": _matrix_lines(r.matrix),
                        "edges": _edge_list(edges),
                        "probability": str(r.probability)})
    if args.svg:
        data = render_svg(results[0].edges, RenderOptions())
        with open(args.svg, "wb") as fh:
            fh.write(data)
        blocks.append(f"svg written to {args.svg}")
    payload = {"m": args.m, "n": args.n, "seed": args.seed,
               "samples": samples}
    if args.svg:
        payload["svg"] = args.svg
    return "\n\n".join(blocks), payload


def _cmd_oracle(args):
    cycles = enumerate_cycles_bruteforce(args.m, args.n)
    text = str(len(cycles))
    payload = {"m": args.m, "n": args.n, "count": len(cycles)}
    if args.list:
        mats = sorted(_matrix_lines(cycle_to_matrix(c)) for c in cycles)
        text += "\n\n" + "\n\n".join("\n".join(ls) for ls in mats)
        payload["matrices"] = mats
    return text, payload


def _build_parser() -> _Parser:
    p = _Parser(prog="gridham",
                description="Hamiltonian cycles of rectangular grids: "
                            "exact counts, generating functions, weight "
                            "enumerators, statistics, uniform samples.")
    p.add_argument("--json", action="store_true",
                   help="emit one JSON object instead of text")
    p.add_argument("--cache-dir", default=None,
                   help="directory for generating-function cache files")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def grid(sp, n_required=True):
        sp.add_argument("-m", type=int, required=True, help="grid height")
        if n_required:
            sp.add_argument("-n", type=int, required=True, help="grid width")

    sp = sub.add_parser("alphabet", help="automaton states and transitions")
    sp.add_argument("--width", type=int, required=True,
                    help="matrix height (grid height minus one)")
    sp.set_defaults(handler=_cmd_alphabet)

    sp = sub.add_parser("count", help="number of Hamiltonian cycles")
    grid(sp)
    sp.set_defaults(handler=_cmd_count)

    sp = sub.add_parser("series", help="counts for n = 0..TERMS")
    sp.add_argument("-m", type=int, required=True)
    sp.add_argument("--terms", type=int, required=True)
    sp.set_defaults(handler=_cmd_series)

    sp = sub.add_parser("gf", help="rational generating function in z")
    sp.add_argument("-m", type=int, required=True)
    sp.add_argument("--no-cache", action="store_true",
                    help="recompute even if a cache file exists")
    sp.add_argument("--weights", default=None, metavar="all|ROWS",
                    help="marker rows for the weighted GF")
    sp.set_defaults(handler=_cmd_gf)

    sp = sub.add_parser("enumerator", help="weight enumerator polynomial")
    grid(sp)
    sp.add_argument("--weights", default=None, metavar="all|ROWS")
    sp.set_defaults(handler=_cmd_enumerator)

    sp = sub.add_parser("coeff", help="one enumerator coefficient")
    grid(sp)
    sp.add_argument("--exps", type=_exps_arg, required=True,
                    help="comma list of exponents, * for a wildcard")
    sp.set_defaults(handler=_cmd_coeff)

    sp = sub.add_parser("stats", help="moments of row one-count statistics")
    sp.add_argument("-m", type=int, required=True)
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("-n", type=int)
    group.add_argument("--asymptotic", action="store_true")
    sp.add_argument("--rows", type=_rows_arg, required=True)
    sp.add_argument("--rows2", type=_rows_arg, default=None,
                    help="second row set, for correlation")
    sp.add_argument("--precision", type=int, default=12)
    sp.set_defaults(handler=_cmd_stats)

    sp = sub.add_parser("sample", help="uniform random cycles")
    grid(sp)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--ascii", action="store_true",
                    help="draw each cycle as ASCII art")
    sp.add_argument("--svg", default=None, metavar="FILE",
                    help="write an SVG drawing (count must be 1)")
    sp.set_defaults(handler=_cmd_sample)

    sp = sub.add_parser("oracle", help="brute-force reference enumeration")
    grid(sp)
    sp.add_argument("--list", action="store_true",
                    help="also print every cycle's matrix")
    sp.set_defaults(handler=_cmd_oracle)

    return p


def main(argv=None) -> int:
    # counts grow to thousands of digits; lift the int-to-str safety cap
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(max(sys.get_int_max_str_digits(), 10 ** 6))
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        text, payload = args.handler(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(payload, indent=2) if args.json else text)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
