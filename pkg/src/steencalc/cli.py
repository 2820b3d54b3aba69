"""Command-line front end.

Two styles of use: `steencalc run FILE` evaluates a source file (ring and
bundle blocks plus queries), and the other subcommands build a single query
from arguments.  Query subcommands resolve ring names against a file given
with --rings first, then against the built-in scenario rings, so

    steencalc apply "Sq^3 Sq^1" x1*x2 --ring CLASSIFYING2

works out of the box.  Exit status: 0 when everything ran and every
expectation held, 1 when an expectation failed or an obstruction fired
with no expectation recording that it should, 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import corpus, dsl
from .errors import SteencalcError, UnknownGenerator
from .runner import QueryResult, execute_query

_FORMATS = ("text", "json", "json-like-structured")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="steencalc",
        description="mod-l operation calculus on presented graded rings",
    )
    parser.add_argument(
        "--format", choices=_FORMATS, default="text",
        help="output format (json-like-structured is an alias of json)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="evaluate a source file")
    run.add_argument("file")

    def with_ring(p, needs_ring=True):
        p.add_argument("--ring", required=needs_ring, help="ring name")
        p.add_argument("--rings", help="source file declaring extra rings")

    apply_p = sub.add_parser("apply", help="apply an operation word")
    apply_p.add_argument("op", help='operation text, e.g. "Sq^3 Sq^1" or "b P^1 b"')
    apply_p.add_argument("poly")
    with_ring(apply_p)
    apply_p.add_argument("--twist", type=int)
    apply_p.add_argument("--expect", help="expected polynomial")

    norm = sub.add_parser("normalize", help="normal form of a polynomial")
    norm.add_argument("poly")
    with_ring(norm)
    norm.add_argument("--expect", help="expected polynomial")

    adem = sub.add_parser("adem", help="admissible form of an operation word")
    adem.add_argument("op")
    adem.add_argument("--prime", type=int, default=2)
    adem.add_argument("--expect", help="expected operation text")

    obstruct = sub.add_parser("obstruct", help="run one obstruction test")
    obstruct.add_argument("kind", choices=("odd", "weird", "frobenius", "hs"))
    obstruct.add_argument("poly")
    with_ring(obstruct)
    obstruct.add_argument("--codim", type=int)
    obstruct.add_argument("--which", type=int, default=2, choices=(1, 2))
    obstruct.add_argument("--q", type=int, help="size of the ground field")
    obstruct.add_argument("--max-degree", type=int, default=7)
    obstruct.add_argument("--twist", type=int)
    obstruct.add_argument(
        "--expect",
        help="verdict (vanishes, nonvanishing, in-image, not-in-image), "
        "or a polynomial for the weird kind",
    )

    wu = sub.add_parser("wu-check", help="verify the pushforward identity")
    wu.add_argument("--n", type=int, required=True, help="fiber dimension")
    wu.add_argument("--m", type=int, required=True, help="cycle dimension over the base")
    with_ring(wu)
    wu.add_argument("--y", help="base class (default 1)")
    wu.add_argument("--hyperplane", default="l")
    wu.add_argument("--expect", choices=("true", "false"))

    cc = sub.add_parser("charclass", help="total class of a declared bundle")
    cc.add_argument("kind", choices=("w", "wet"))
    cc.add_argument("bundle")
    cc.add_argument("--rings", required=True, help="source file declaring the bundle")
    cc.add_argument("--expect", help="expected rendered class")

    corp = sub.add_parser("corpus", help="list or run built-in scenarios")
    corp.add_argument("action", choices=("list", "run"))
    corp.add_argument("name", nargs="?", help="scenario name, or all")

    return parser


# --------------------------------------------------------------- resolvers


def _load_program(path):
    with open(path, "r", encoding="utf-8") as fh:
        source = fh.read()
    return dsl.build_program(dsl.parse(source))


def _resolvers(rings_path):
    program = _load_program(rings_path) if rings_path else None
    local = program.rings if program else {}
    bundles = program.bundles if program else {}

    def resolve_ring(name):
        if name in local:
            return local[name]
        return corpus.resolve_ring(name)

    def resolve_bundle(name):
        if name not in bundles:
            raise UnknownGenerator("no bundle %r in scope" % name)
        decl = bundles[name]
        return decl, resolve_ring(decl.ring)

    return resolve_ring, resolve_bundle


def _corpus_hook(query):
    label = dsl.render_query(query)
    lines = [label]
    record = {"query": label, "verb": "corpus-" + query.action}
    if query.action == "list":
        names = corpus.scenario_names()
        lines.extend("  " + n for n in names)
        record["result"] = names
        return QueryResult(label, lines, record)
    names = corpus.scenario_names() if query.name in (None, "all") else [query.name]
    ok = True
    out = []
    for name in names:
        report = corpus.run_scenario(corpus.get_scenario(name))
        ok = ok and report.ok
        out.append(
            {
                "scenario": report.name,
                "ok": report.ok,
                "steps": [{"label": s.label, "ok": s.ok} for s in report.steps],
            }
        )
        lines.extend("  " + line for line in report.render().splitlines())
    record.update({"result": out, "ok": ok})
    return QueryResult(label, lines, record, expected=ok)


# ---------------------------------------------------------------- dispatch


def _query_from_args(args):
    if args.command == "apply":
        return dsl.ApplyQuery(
            args.op, dsl.parse_poly(args.poly), args.ring, args.twist,
            dsl.parse_poly(args.expect) if args.expect else None,
        )
    if args.command == "normalize":
        return dsl.NormalizeQuery(
            dsl.parse_poly(args.poly), args.ring,
            dsl.parse_poly(args.expect) if args.expect else None,
        )
    if args.command == "adem":
        return dsl.AdemQuery(args.op, args.prime, args.expect)
    if args.command == "obstruct":
        expect = expect_poly = None
        if args.expect is not None:
            if args.kind == "weird":
                expect_poly = dsl.parse_poly(args.expect)
            else:
                expect = args.expect
        return dsl.ObstructQuery(
            args.kind, dsl.parse_poly(args.poly), args.ring,
            codim=args.codim, which=args.which, q=args.q,
            max_degree=args.max_degree, twist=args.twist,
            expect=expect, expect_poly=expect_poly,
        )
    if args.command == "wu-check":
        return dsl.WuQuery(
            args.n, args.m, args.ring,
            dsl.parse_poly(args.y) if args.y else None,
            args.hyperplane, args.expect,
        )
    if args.command == "charclass":
        return dsl.CharclassQuery(args.kind, args.bundle, args.expect)
    if args.command == "corpus":
        return dsl.CorpusQuery(args.action, args.name)
    raise SteencalcError("unknown command %r" % args.command)


def _dispatch(args):
    if args.command == "run":
        program = _load_program(args.file)

        def resolve_ring(name):
            if name in program.rings:
                return program.rings[name]
            return corpus.resolve_ring(name)

        def resolve_bundle(name):
            if name not in program.bundles:
                raise UnknownGenerator("no bundle %r in scope" % name)
            decl = program.bundles[name]
            return decl, resolve_ring(decl.ring)

        return [
            execute_query(q, resolve_ring, resolve_bundle, _corpus_hook)
            for q in program.queries
        ]
    query = _query_from_args(args)
    if args.command in ("adem", "corpus"):
        return [execute_query(query, corpus.resolve_ring, corpus_hook=_corpus_hook)]
    resolve_ring, resolve_bundle = _resolvers(getattr(args, "rings", None))
    return [execute_query(query, resolve_ring, resolve_bundle, _corpus_hook)]


def _emit(results, fmt, ok):
    if fmt == "text":
        for r in results:
            for line in r.lines:
                print(line)
        return
    payload = {"ok": ok, "results": [r.record for r in results]}
    print(json.dumps(payload, sort_keys=True, indent=2))


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        results = _dispatch(args)
    except SteencalcError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    bad = any(not r.ok for r in results) or any(
        r.fired and r.expected is None for r in results
    )
    _emit(results, args.format, not bad)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
