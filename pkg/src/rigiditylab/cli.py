"""Command-line entry point.

Exit codes: 0 success, 1 some verdict in the output is negative, 2 usage or
precondition error. Every subcommand echoes its canonicalized inputs before
its results.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import __version__
from .duplication import (
    almost_inclusion_from_reduction,
    fiber,
    verify_m_equivalence,
    verify_one_reduction,
)
from .funcdsl import bi_immune_refuter, evaluate, nonfixed_points
from .grammar import parse_set, parse_term
from .harness import (
    brute_search_reduction,
    default_report_path,
    run_suite,
    write_report,
)
from .oracle import FromSet, find_zero, parse_oracle
from .paramsets import almost_subset, nth_element, odifreddi_family, set_algebra
from .randomness import (
    coverage_experiment,
    exact_measure,
    fix_violation_witness,
    level_contains,
    test_level,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class _Output:
    """Collects echoed inputs, results and verdicts for one invocation."""

    def __init__(self, command: str, fmt: str):
        self.command = command
        self.fmt = fmt
        self.inputs: dict[str, Any] = {}
        self.results: dict[str, Any] = {}
        self.verdicts: list[tuple[str, bool]] = []
        self.text_lines: list[str] = []

    def input(self, key: str, value: Any) -> None:
        self.inputs[key] = value

    def result(self, key: str, value: Any, text: str | None = None) -> None:
        self.results[key] = value
        self.text_lines.append(text if text is not None else f"{key}: {_fmt(value)}")

    def verdict(self, name: str, passed: bool) -> None:
        self.verdicts.append((name, bool(passed)))

    @property
    def exit_code(self) -> int:
        return EXIT_OK if all(p for _, p in self.verdicts) else EXIT_NEGATIVE

    def emit(self, out) -> None:
        if self.fmt == "json":
            doc = {
                "command": self.command,
                "inputs": self.inputs,
                "results": self.results,
                "verdicts": [{"name": n, "pass": p} for n, p in self.verdicts],
            }
            out.write(json.dumps(doc, sort_keys=True) + "\n")
            return
        for k, v in self.inputs.items():
            out.write(f"# {k} = {v}\n")
        for line in self.text_lines:
            out.write(line + "\n")
        for n, p in self.verdicts:
            out.write(f"{'PASS' if p else 'FAIL'} {n}\n")


def _fmt(v: Any) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def _compact(v: Any) -> str:
    return json.dumps(v, separators=(",", ":"))


# subcommands ---------------------------------------------------------------------


def _cmd_eval(a, o: _Output) -> None:
    f = parse_term(a.f)
    o.input("term", str(f))
    o.input("x", a.x)
    y = evaluate(f, a.x)
    o.result("value", y, str(y))


def _cmd_nonfixed(a, o: _Output) -> None:
    f = parse_term(a.f)
    o.input("term", str(f))
    o.input("bound", a.bound)
    pts = nonfixed_points(f, a.bound)
    o.result("nonfixed_points", pts)


def _cmd_family(a, o: _Output) -> None:
    o.input("i", a.i)
    s = odifreddi_family(a.i)
    o.result("set", str(s), str(s))
    o.result("first", [x for _, x in zip(range(a.count), s.elements())])


def _cmd_almost_subset(a, o: _Output) -> None:
    s, t = parse_set(a.s), parse_set(a.t)
    o.input("s", str(s))
    o.input("t", str(t))
    r = almost_subset(s, t)
    o.result("almost_subset", r.to_json(), str(r.holds))
    if not r.holds:
        o.text_lines.append(f"witness class: {r.witness_class} mod {r.modulus}")
        o.text_lines.append(f"witnesses: {', '.join(map(str, r.witnesses))}")
    o.verdict("s subset* t", r.holds)


def _cmd_set_op(a, o: _Output) -> None:
    s = parse_set(a.s)
    o.input("op", a.op)
    o.input("s", str(s))
    t = None
    if a.op != "complement":
        if a.t is None:
            raise ValueError(f"{a.op} needs -t")
        t = parse_set(a.t)
        o.input("t", str(t))
    r = set_algebra(s, t, a.op)
    o.result("set", str(r), str(r))


def _cmd_nth(a, o: _Output) -> None:
    s = parse_set(a.s)
    o.input("s", str(s))
    o.input("n", a.n)
    v = nth_element(s, a.n)
    o.result("element", v, str(v))


def _cmd_dup_verify(a, o: _Output) -> None:
    s, orc = parse_set(a.s), parse_oracle(a.a)
    o.input("s", str(s))
    o.input("c", a.c)
    o.input("a", str(orc))
    o.input("bound", a.bound)
    v = verify_m_equivalence(orc, s, a.c, a.bound)
    o.result("verdict", v.to_json(), f"{v.status} (checked {v.checked_bound})")
    o.verdict("B_S =_m A on window", v.ok)


def _cmd_fiber(a, o: _Output) -> None:
    s = parse_set(a.s)
    o.input("s", str(s))
    o.input("c", a.c)
    o.input("x", a.x)
    fb = fiber(s, a.c, a.x)
    o.result("fiber", fb.to_json())


def _cmd_ml_test(a, o: _Output) -> None:
    k = parse_term(a.k)
    o.input("k", str(k))
    o.input("n", a.n)
    cs = test_level(k, a.n, a.search_cap)
    mu = exact_measure(cs)
    if a.measure_only:
        o.result("measure", mu.to_json(), _compact(mu.to_json()))
        return
    o.result("pairs", cs.to_json())
    o.result("measure", mu.to_json(), f"measure: {_compact(mu.to_json())}")
    if a.a is not None:
        orc = parse_oracle(a.a)
        o.input("a", str(orc))
        o.result("contains", level_contains(cs, orc))


def _cmd_verify_reduction(a, o: _Output) -> None:
    h, src, tgt = parse_term(a.h), parse_oracle(a.src), parse_oracle(a.tgt)
    o.input("h", str(h))
    o.input("src", str(src))
    o.input("tgt", str(tgt))
    o.input("bound", a.bound)
    v = verify_one_reduction(h, src, tgt, a.bound)
    o.result("verdict", v.to_json(), f"{v.status} {_fmt(v.witness())}".rstrip())
    o.verdict("1-reduction on window", v.ok)


def _cmd_derive_inclusion(a, o: _Output) -> None:
    h, s, t, orc = parse_term(a.h), parse_set(a.s), parse_set(a.t), parse_oracle(a.a)
    c_s = a.c_s if a.c_s is not None else find_zero(orc, 10**6)
    c_t = a.c_t if a.c_t is not None else c_s
    for k, v in (("h", str(h)), ("s", str(s)), ("t", str(t)), ("a", str(orc)),
                 ("c_s", c_s), ("c_t", c_t), ("n0", a.n0), ("bound", a.bound)):
        o.input(k, v)
    rep = almost_inclusion_from_reduction(h, s, t, orc, c_s, c_t, a.n0, a.bound)
    o.result("report", rep.to_json(), f"{rep.conclusion}" + (f": {rep.detail}" if rep.detail else ""))
    o.verdict("s subset* t on window", rep.ok)


def _cmd_coverage(a, o: _Output) -> None:
    k = parse_term(a.k)
    o.input("k", str(k))
    o.input("n", a.n)
    o.input("trials", a.trials)
    o.input("seed", a.seed)
    r = coverage_experiment(k, a.n, a.trials, a.seed)
    o.result("coverage", r.to_json(),
             f"inside {r.inside}/{r.trials} = {r.fraction:.6g}, target {r.target}, se {r.stderr:.3g}")
    o.verdict("within 3 standard errors", r.within(3.0))


def _cmd_refute(a, o: _Output) -> None:
    s = parse_set(a.s)
    o.input("s", str(s))
    k = bi_immune_refuter(s)
    o.result("k", str(k), f"k = {k}")
    pts = nonfixed_points(k, a.bound)
    o.result("first_nonfixed", pts[: a.count])
    w = fix_violation_witness(FromSet(s), k, a.bound)
    o.result("nonfixed_below_bound", len(pts))
    o.verdict(f"k is an m-autoreduction of s on [0, {a.bound})", w is None)


def _cmd_search(a, o: _Output) -> None:
    src, tgt = parse_oracle(a.src), parse_oracle(a.tgt)
    o.input("src", str(src))
    o.input("tgt", str(tgt))
    o.input("domain", a.domain)
    o.input("range", a.range)
    r = brute_search_reduction(src, tgt, a.domain, a.range)
    o.result("search", r.to_json(), r.label + (f" {list(r.mapping)}" if r.found else ""))


def _cmd_suite(a, o: _Output) -> None:
    params: dict[str, str] = {}
    for kv in a.param or []:
        key, sep, val = kv.partition("=")
        if not sep:
            raise ValueError(f"--param expects key=value, got {kv!r}")
        params[key.strip()] = val.strip()
    o.input("suite", a.name)
    o.input("params", params)
    rep = run_suite(a.name, params)
    if not a.no_timestamp:
        rep.stamp()
    if not a.no_write:
        path = a.out
        if path is None and a.no_timestamp:
            path = default_report_path(rep).with_name(f"{rep.experiment}.json")
        written = write_report(rep, path)
        o.text_lines.append(f"report: {written}")
    o.results["report"] = rep.to_json()
    fails = rep.failures
    o.text_lines.append(f"{len(rep.verdicts) - len(fails)}/{len(rep.verdicts)} verdicts pass")
    for v in fails:
        o.text_lines.append(f"FAIL {v.name} {_fmt(v.witness)}")
    o.verdict(a.name, not fails)


# parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rigiditylab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--format", choices=("text", "json"), default="text")
    # also accepted after the subcommand; SUPPRESS keeps it from resetting the global value
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, fn, help, add_help=True):
        sp = sub.add_parser(name, help=help, parents=[common], add_help=add_help)
        if not add_help:
            sp.add_argument("--help", action="help", help="show this help message and exit")
        sp.set_defaults(fn=fn)
        return sp

    sp = cmd("eval", _cmd_eval, "evaluate a term")
    sp.add_argument("-f", required=True, metavar="TERM")
    sp.add_argument("-x", required=True, type=int)

    sp = cmd("nonfixed", _cmd_nonfixed, "list non-fixed points below a bound")
    sp.add_argument("-f", required=True, metavar="TERM")
    sp.add_argument("--bound", type=int, default=100)

    sp = cmd("family", _cmd_family, "the set {2^i (2n+1)}")
    sp.add_argument("-i", required=True, type=int)
    sp.add_argument("--count", type=int, default=10)

    sp = cmd("almost-subset", _cmd_almost_subset, "decide s \\ t finite")
    sp.add_argument("-s", required=True, metavar="SET")
    sp.add_argument("-t", required=True, metavar="SET")

    sp = cmd("set-op", _cmd_set_op, "union, intersection, difference or complement")
    sp.add_argument("op", choices=("union", "intersection", "difference", "complement"))
    sp.add_argument("-s", required=True, metavar="SET")
    sp.add_argument("-t", metavar="SET")

    sp = cmd("nth", _cmd_nth, "n-th element of an infinite set")
    sp.add_argument("-s", required=True, metavar="SET")
    sp.add_argument("-n", required=True, type=int)

    sp = cmd("dup-verify", _cmd_dup_verify, "check B_S =_m A on a window")
    sp.add_argument("-s", required=True, metavar="SET")
    sp.add_argument("-c", required=True, type=int)
    sp.add_argument("-a", required=True, metavar="ORACLE")
    sp.add_argument("--bound", required=True, type=int)

    sp = cmd("fiber", _cmd_fiber, "preimage of x under f_S")
    sp.add_argument("-s", required=True, metavar="SET")
    sp.add_argument("-c", required=True, type=int)
    sp.add_argument("-x", required=True, type=int)

    sp = cmd("ml-test", _cmd_ml_test, "build level U_n of the test for Fix(k)")
    sp.add_argument("-k", required=True, metavar="TERM")
    sp.add_argument("-n", required=True, type=int)
    sp.add_argument("--measure-only", action="store_true")
    sp.add_argument("--search-cap", type=int, default=10**6)
    sp.add_argument("-a", metavar="ORACLE", help="also report whether ORACLE lies in U_n")

    sp = cmd("verify-reduction", _cmd_verify_reduction, "check a 1-reduction on a window", add_help=False)
    sp.add_argument("-h", required=True, metavar="TERM")
    sp.add_argument("--src", required=True, metavar="ORACLE")
    sp.add_argument("--tgt", required=True, metavar="ORACLE")
    sp.add_argument("--bound", required=True, type=int)

    sp = cmd("derive-inclusion", _cmd_derive_inclusion, "run the key-claim pipeline", add_help=False)
    sp.add_argument("-h", required=True, metavar="TERM")
    sp.add_argument("-s", required=True, metavar="SET")
    sp.add_argument("-t", required=True, metavar="SET")
    sp.add_argument("-a", required=True, metavar="ORACLE")
    sp.add_argument("--n0", required=True, type=int)
    sp.add_argument("--bound", required=True, type=int)
    sp.add_argument("--c-s", type=int, help="default: least zero of the oracle")
    sp.add_argument("--c-t", type=int, help="default: same as --c-s")

    sp = cmd("coverage", _cmd_coverage, "Monte Carlo coverage of U_n")
    sp.add_argument("-k", required=True, metavar="TERM")
    sp.add_argument("-n", required=True, type=int)
    sp.add_argument("--trials", required=True, type=int)
    sp.add_argument("--seed", required=True, type=int)

    sp = cmd("refute-rigidity", _cmd_refute, "the next-element autoreduction of an infinite set")
    sp.add_argument("-s", required=True, metavar="SET")
    sp.add_argument("--bound", type=int, default=10**4)
    sp.add_argument("--count", type=int, default=20)

    sp = cmd("search-reduction", _cmd_search, "backtracking search for a window 1-reduction")
    sp.add_argument("--src", required=True, metavar="ORACLE")
    sp.add_argument("--tgt", required=True, metavar="ORACLE")
    sp.add_argument("--domain", required=True, type=int)
    sp.add_argument("--range", required=True, type=int)

    sp = cmd("suite", _cmd_suite, "run a named verification suite")
    sp.add_argument("name")
    sp.add_argument("--param", action="append", metavar="KEY=VALUE")
    sp.add_argument("--out", metavar="PATH")
    sp.add_argument("--no-timestamp", action="store_true")
    sp.add_argument("--no-write", action="store_true")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    out = _Output(args.command, args.format)
    try:
        args.fn(args, out)
    except (ValueError, KeyError, OverflowError) as e:
        # a bare KeyError's str() is the repr of its key
        msg = e.args[0] if type(e) is KeyError and e.args else e
        print(f"rigiditylab {args.command}: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    out.emit(sys.stdout)
    return out.exit_code


if __name__ == "__main__":
    sys.exit(main())
