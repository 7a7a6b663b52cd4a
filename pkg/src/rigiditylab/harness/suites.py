"""Named verification suites. Each returns an :class:`ExperimentReport`.

Cases run in a fixed order, so a report is a pure function of its
parameters and seeds.
"""

from __future__ import annotations

import random
from typing import Any, Callable

from .. import _kernels
from ..duplication import (
    almost_inclusion_from_reduction,
    construct_subset_reduction,
    dup_set,
    fiber,
    induced_autoreductions,
    verify_m_equivalence,
    verify_one_reduction,
)
from ..funcdsl import Add, bi_immune_refuter, evaluate, nonfixed_points
from ..grammar import parse_term
from ..oracle import FromSet, PrefixPatch, SeededRandom, find_zero
from ..paramsets import almost_subset, odifreddi_family
from ..randomness import (
    ConstraintSet,
    DyadicRational,
    coverage_experiment,
    exact_measure,
    fix_violation_witness,
    fresh_sequence,
    level_contains,
    meets_or_avoids,
)
from . import fixtures
from .brute import brute_measure, brute_meets_or_avoids
from .report import ExperimentReport, Verdict

__all__ = ["SUITES", "UnknownSuite", "SuiteConfigError", "run_suite", "suite_defaults", "replay"]


class UnknownSuite(KeyError):
    def __str__(self) -> str:
        return f"unknown suite {self.args[0]!r}; known: {', '.join(sorted(SUITES))}"


class SuiteConfigError(ValueError):
    pass


def _seed_list(base: int, count: int) -> list[int]:
    return [int(s) for s in _kernels.derive_seeds(base, count)] if count else []


# suites --------------------------------------------------------------------------


def _measure_law(p: dict) -> ExperimentReport:
    max_n, cap = p["max_n"], p["search_cap"]
    verdicts = []
    for k in fixtures.measure_corpus():
        xs = fresh_sequence(k, max_n, cap)
        prev_gap = None
        for n in range(max_n + 1):
            cs = ConstraintSet((x, evaluate(k, x)) for x in xs[:n])
            mu = exact_measure(cs)
            gap = cs.num_coordinates - cs.num_components
            fresh = prev_gap is None or gap == prev_gap + 1
            ok = mu == DyadicRational.power_of_half(n) and fresh
            prev_gap = gap
            verdicts.append(Verdict(f"{k} n={n}", ok, None if ok else mu.to_json()))
    return ExperimentReport("measure-law", p, verdicts)


def _duplication_law(p: dict) -> ExperimentReport:
    seeds = _seed_list(p["seed"], p["oracles"])
    verdicts = []
    for i in range(p["max_i"] + 1):
        s = odifreddi_family(i)
        for seed in seeds:
            a = SeededRandom(seed)
            c = find_zero(a, 10**4)
            v = verify_m_equivalence(a, s, c, p["bound"])
            verdicts.append(Verdict(f"S_{i} seed={seed} c={c}", v.ok, v.witness()))
    return ExperimentReport("duplication-law", p, verdicts, seeds)


def _fiber_law(p: dict) -> ExperimentReport:
    seeds = _seed_list(p["seed"], p["oracles"])
    verdicts = []
    for i in range(p["max_i"] + 1):
        t = odifreddi_family(i)
        for seed in seeds:
            c = find_zero(SeededRandom(seed), 10**4)
            bad = None
            for x in range(p["bound"]):
                if x == c:
                    continue
                size = len(fiber(t, c, x))
                if (size == 2) != (x in t) or (size == 1) != (x not in t):
                    bad = x
                    break
            verdicts.append(Verdict(f"S_{i} c={c}", bad is None, bad))
    return ExperimentReport("fiber-law", p, verdicts, seeds)


def _antichain_family(p: dict) -> ExperimentReport:
    verdicts = []
    m = p["max_i"]
    for i in range(m + 1):
        for j in range(m + 1):
            if i == j:
                continue
            s, t = odifreddi_family(i), odifreddi_family(j)
            res = almost_subset(s, t)
            confirmed = 0
            if not res.holds:
                x = res.witnesses[0]
                for _ in range(p["confirm"]):
                    if x in s and x not in t:
                        confirmed += 1
                    x += res.modulus
            ok = not res.holds and confirmed >= p["confirm"]
            verdicts.append(
                Verdict(
                    f"S_{i} not<=* S_{j}",
                    ok,
                    {"class": res.witness_class, "modulus": res.modulus, "confirmed": confirmed},
                )
            )
    return ExperimentReport("antichain-family", p, verdicts)


def _key_claim_pipeline(p: dict) -> ExperimentReport:
    seeds = [p["seed"]]
    a = SeededRandom(p["seed"])
    c = find_zero(a, 10**4)
    verdicts = []
    for s, t in fixtures.subset_pairs():
        tag = f"{s} <= {t}"
        h = construct_subset_reduction(s, t)
        bs, bt = dup_set(s, c, a), dup_set(t, c, a)
        v = verify_one_reduction(h, bs, bt, p["verify_bound"])
        verdicts.append(Verdict(f"{tag}: h is a 1-reduction", v.ok, v.witness()))
        rep = almost_inclusion_from_reduction(h, s, t, a, c, c, p["n0"], p["bound"])
        verdicts.append(
            Verdict(
                f"{tag}: pipeline",
                rep.ok and not rep.violations,
                {"conclusion": rep.conclusion, "checked": rep.s_members_checked},
            )
        )
        k0, k1 = induced_autoreductions(h, s, t, c)
        bad = None
        for x in range(p["bound"]):
            ax = a.query(x)
            if ax != a.query(evaluate(k0, x)) or ax != a.query(evaluate(k1, x)):
                bad = x
                break
        verdicts.append(Verdict(f"{tag}: k0, k1 preserve A", bad is None, bad))
    return ExperimentReport("key-claim-pipeline", p, verdicts, seeds)


def _capture_demo(p: dict) -> ExperimentReport:
    verdicts = []
    for s in fixtures.capture_sets():
        k = Add(s.period)
        a = FromSet(s)
        w = fix_violation_witness(a, k, p["bound"])
        verdicts.append(Verdict(f"{s}: no fix violation", w is None, w))
        xs = fresh_sequence(k, p["max_n"])
        outside = [n for n in range(p["max_n"] + 1) if not level_contains(
            ConstraintSet((x, evaluate(k, x)) for x in xs[:n]), a)]
        verdicts.append(Verdict(f"{s}: in U_n for n<={p['max_n']}", not outside, outside or None))
    return ExperimentReport("capture-demo", p, verdicts)


def _coverage_montecarlo(p: dict) -> ExperimentReport:
    k = parse_term(p["term"])
    r = coverage_experiment(k, p["n"], p["trials"], p["seed"])
    v = Verdict(f"{k} n={p['n']} within 3 SE", r.within(3.0), r.to_json())
    return ExperimentReport("coverage-montecarlo", p, [v], [p["seed"]])


def _oracle_agreement(p: dict) -> ExperimentReport:
    rng = random.Random(p["seed"])
    verdicts = []
    for case in range(p["cases"]):
        v = rng.randint(2, p["max_v"])
        coords = rng.sample(range(4 * p["max_v"]), v)
        npairs = rng.randint(0, 2 * v)
        pairs = []
        for _ in range(npairs):
            a, b = rng.sample(coords, 2)
            pairs.append((a, b))
        cs = ConstraintSet(pairs)
        exact, brute = exact_measure(cs), brute_measure(cs)
        verdicts.append(
            Verdict(f"case {case}", exact == brute, None if exact == brute else [exact.to_json(), brute.to_json()])
        )
    return ExperimentReport("oracle-agreement", p, verdicts, [p["seed"]])


def _next_element_refuter(p: dict) -> ExperimentReport:
    verdicts = []
    for s in fixtures.refuter_sets():
        k = bi_immune_refuter(s)
        a = FromSet(s)
        w = fix_violation_witness(a, k, p["bound"])
        moved = len(nonfixed_points(k, p["bound"]))
        verdicts.append(
            Verdict(f"{s}: refuter", w is None and moved >= p["min_moved"], {"violation": w, "moved": moved})
        )
    return ExperimentReport("next-element-refuter", p, verdicts)


def _genericity(p: dict) -> ExperimentReport:
    rng = random.Random(p["seed"])
    L = p["max_len"]
    verdicts = []
    for case in range(p["cases"]):
        size = rng.randint(0, 6)
        w = {"".join(rng.choice("01") for _ in range(rng.randint(0, L))) for _ in range(size)}
        bits = "".join(rng.choice("01") for _ in range(L + 1))
        a = PrefixPatch(bits, FromSet(odifreddi_family(0)))
        got = meets_or_avoids(a, w, L)
        ref = brute_meets_or_avoids(a, w, L)
        verdicts.append(Verdict(f"case {case}", got == ref, None if got == ref else [repr(got), repr(ref)]))
    return ExperimentReport("genericity", p, verdicts, [p["seed"]])


SUITES: dict[str, tuple[Callable[[dict], ExperimentReport], dict[str, Any]]] = {
    "measure-law": (_measure_law, {"max_n": 20, "search_cap": 2**22}),
    "oracle-agreement": (_oracle_agreement, {"cases": 1000, "max_v": 16, "seed": 42}),
    "duplication-law": (_duplication_law, {"max_i": 8, "oracles": 10, "bound": 5000, "seed": 42}),
    "fiber-law": (_fiber_law, {"max_i": 8, "oracles": 10, "bound": 5000, "seed": 42}),
    "key-claim-pipeline": (
        _key_claim_pipeline,
        {"seed": 42, "verify_bound": 10**4, "n0": 0, "bound": 2000},
    ),
    "antichain-family": (_antichain_family, {"max_i": 10, "confirm": 100}),
    "capture-demo": (_capture_demo, {"bound": 10**4, "max_n": 30}),
    "coverage-montecarlo": (_coverage_montecarlo, {"term": "add(1)", "n": 10, "trials": 10**5, "seed": 42}),
    "next-element-refuter": (_next_element_refuter, {"bound": 10**4, "min_moved": 100}),
    "genericity": (_genericity, {"cases": 200, "max_len": 12, "seed": 42}),
}


def suite_defaults(name: str) -> dict[str, Any]:
    if name not in SUITES:
        raise UnknownSuite(name)
    return dict(SUITES[name][1])


def _coerce(name: str, key: str, value: Any, default: Any) -> Any:
    if isinstance(default, str):
        return str(value)
    if isinstance(value, bool):
        raise SuiteConfigError(f"{name}: parameter {key!r} must be an integer")
    try:
        out = int(value)
    except (TypeError, ValueError):
        raise SuiteConfigError(f"{name}: parameter {key!r} must be an integer, got {value!r}") from None
    if out < 0:
        raise SuiteConfigError(f"{name}: parameter {key!r} must be non-negative, got {out}")
    return out


def run_suite(name: str, config: dict[str, Any] | None = None) -> ExperimentReport:
    if name not in SUITES:
        raise UnknownSuite(name)
    fn, defaults = SUITES[name]
    config = dict(config or {})
    unknown = sorted(set(config) - set(defaults))
    if unknown:
        raise SuiteConfigError(f"{name}: unknown parameters {unknown}; accepted: {sorted(defaults)}")
    params = {k: _coerce(name, k, config.get(k, d), d) for k, d in defaults.items()}
    return fn(params)


def replay(report: ExperimentReport) -> ExperimentReport:
    """Re-run a report's suite with its recorded parameters."""
    return run_suite(report.experiment, report.parameters)
