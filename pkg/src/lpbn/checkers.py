"""Extensional checks of the program/Boolean-network correspondences and the cycle theorems.

Every check takes a program (or an :class:`Analysis` wrapping one, to share
expensive intermediate results) and returns a :class:`CheckReport`. Checks
whose hypothesis fails report ``skipped-precondition`` instead of a vacuous
``holds``. A ``violated`` report carries a JSON witness that
:func:`replay_witness` re-runs in isolation.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from pathlib import Path
from typing import Callable, Iterable

from .boolnet import encode_bn, influence_graph, sync_stg, trap_spaces
from .core import DEFAULT_LIMITS, Interp3, Limits, Program, TooLarge, leq_s
from .depgraph import (
    SignedDigraph,
    build_dg,
    classify,
    enumerate_simple_cycles,
    has_cycle,
    min_positive_fvs,
)
from .dynamics import (
    build_tgsp,
    build_tgst,
    min_stable_trap_spaces,
    stable_trap_spaces,
    supported_trap_spaces,
)
from .generate import GenProfile, gen_program
from .lfp import lfp
from .parser import parse_program, serialize_program
from .semantics import (
    regular_models,
    stable_models,
    stable_partial_models,
    supported_partial_models,
)


class Verdict(str, Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    SKIPPED = "skipped-precondition"
    TOO_LARGE = "too-large"


@dataclass
class CheckReport:
    check: str
    verdict: Verdict
    witness: dict | None = None
    stats: dict = field(default_factory=dict)

    def to_json(self, timings: bool = True) -> dict:
        """Timings are the only non-deterministic field; drop them for reproducible output."""
        stats = self.stats if timings else {k: v for k, v in self.stats.items() if k != "seconds"}
        return {
            "check": self.check,
            "verdict": self.verdict.value,
            "witness": self.witness,
            "stats": stats,
        }


class Analysis:
    """Lazily computed objects of one program, shared across checks."""

    def __init__(self, prog: Program, limits: Limits = DEFAULT_LIMITS, profile: GenProfile | None = None):
        self.prog = prog
        self.limits = limits
        self.profile = profile

    @cached_property
    def dg(self) -> SignedDigraph:
        return build_dg(self.prog)

    @cached_property
    def cycles(self):
        return enumerate_simple_cycles(self.dg, self.limits)

    @cached_property
    def classification(self):
        return classify(self.prog, self.limits)

    @cached_property
    def pos_fvs(self) -> frozenset[int]:
        return min_positive_fvs(self.dg, self.limits)

    @cached_property
    def regular(self) -> list[Interp3]:
        return regular_models(self.prog, self.limits)

    @cached_property
    def stable_partial(self) -> list[Interp3]:
        return stable_partial_models(self.prog, self.limits)

    @cached_property
    def stable(self):
        return stable_models(self.prog, self.limits)

    @cached_property
    def lfp(self) -> Program:
        return lfp(self.prog)


def _analysis(p: Program | Analysis, limits: Limits) -> Analysis:
    return p if isinstance(p, Analysis) else Analysis(p, limits)


def _witness(a: Analysis, check: str, details: dict) -> dict:
    return {
        "profile": a.profile.to_json() if a.profile else None,
        "seed": a.profile.seed if a.profile else None,
        "program": serialize_program(a.prog),
        "check": check,
        "verdict": Verdict.VIOLATED.value,
        "details": details,
    }


def _interps(xs: Iterable[Interp3]) -> list[dict[str, str]]:
    return [x.to_json() for x in xs]


_CHECKS: dict[str, Callable[..., CheckReport]] = {}


def _check(name: str):
    """Register a check; it runs on an Analysis and ``TooLarge`` becomes a verdict."""

    def wrap(fn: Callable[[Analysis], tuple[Verdict, dict, dict]]):
        def run(p: Program | Analysis, limits: Limits = DEFAULT_LIMITS) -> CheckReport:
            a = _analysis(p, limits)
            t0 = time.perf_counter()
            try:
                verdict, details, stats = fn(a)
            except TooLarge as e:
                return CheckReport(name, Verdict.TOO_LARGE, None, {"error": str(e)})
            stats["seconds"] = round(time.perf_counter() - t0, 6)
            witness = _witness(a, name, details) if verdict is Verdict.VIOLATED else None
            return CheckReport(name, verdict, witness, stats)

        run.__name__ = f"check_{name}"
        run.__doc__ = fn.__doc__
        _CHECKS[name] = run
        return run

    return wrap


def _holds(ok: bool) -> Verdict:
    return Verdict.HOLDS if ok else Verdict.VIOLATED


@_check("encoding_bridge")
def check_encoding_bridge(a: Analysis):
    """ig(f) ⊆ dg(P), tg_sp(P) = stg(f), and supported trap spaces of P = trap spaces of f."""
    f = encode_bn(a.prog)
    ig = influence_graph(f, a.limits)
    sub = ig.is_subgraph_of(a.dg)
    tgsp, stg = build_tgsp(a.prog, a.limits), sync_stg(f, a.limits)
    same_tg = tgsp.succ == stg.succ
    sts, bts = supported_trap_spaces(a.prog, a.limits), trap_spaces(f, a.limits)
    same_ts = sts == bts
    details = {}
    if not sub:
        v = a.dg.vertices
        details["ig_arcs_not_in_dg"] = sorted([v[x], v[y], s.value] for x, y, s in ig.arcs - a.dg.arcs)
    if not same_tg:
        details["tg_mismatch_states"] = [s for s, (x, y) in enumerate(zip(tgsp.succ, stg.succ)) if x != y]
    if not same_ts:
        details["supported_trap_spaces"] = _interps(sts)
        details["bn_trap_spaces"] = _interps(bts)
    stats = {
        "ig_equals_dg": ig.arcs == a.dg.arcs,
        "quasi": a.prog.is_quasi(),
        "n_trap_spaces": len(sts),
    }
    return _holds(sub and same_tg and same_ts), details, stats


@_check("regular_equals_min_stable_ts")
def check_regular_equals_min_stable_ts(a: Analysis):
    """Regular models (reduct route) = ≤s-minimal stable trap spaces (transition-graph route)."""
    via_ts = min_stable_trap_spaces(a.prog, a.limits)
    ok = a.regular == via_ts
    details = {} if ok else {"regular": _interps(a.regular), "min_stable_trap_spaces": _interps(via_ts)}
    return _holds(ok), details, {"n_regular": len(a.regular)}


@_check("neg_cycle_necessity")
def check_neg_cycle_necessity(a: Analysis):
    """No negative cycle in dg(P) ⇒ every regular model is 2-valued, and a stable model exists."""
    if not a.classification.neg_cycle_free:
        return Verdict.SKIPPED, {}, {}
    nontrivial = [r for r in a.regular if not r.is_two_valued()]
    ok = not nontrivial and bool(a.stable)
    details = {} if ok else {"non_two_valued_regular": _interps(nontrivial), "n_stable": len(a.stable)}
    return _holds(ok), details, {"n_regular": len(a.regular), "n_stable": len(a.stable)}


@_check("locally_stratified_unicity")
def check_locally_stratified_unicity(a: Analysis):
    """Locally stratified ⇒ exactly one regular model, and it is the unique stable model."""
    if not a.classification.locally_stratified:
        return Verdict.SKIPPED, {}, {}
    ok = (
        len(a.regular) == 1
        and len(a.stable) == 1
        and a.regular[0] == a.stable[0].to_interp3()
    )
    details = {} if ok else {"regular": _interps(a.regular), "stable": [s.to_json() for s in a.stable]}
    return _holds(ok), details, {"n_regular": len(a.regular), "n_stable": len(a.stable)}


@_check("pos_cycle_unicity")
def check_pos_cycle_unicity(a: Analysis):
    """No positive cycle in dg(P) ⇒ exactly one regular model and at most one stable model."""
    if not a.classification.pos_cycle_free:
        return Verdict.SKIPPED, {}, {}
    ok = len(a.regular) == 1 and len(a.stable) <= 1
    details = {} if ok else {"regular": _interps(a.regular), "stable": [s.to_json() for s in a.stable]}
    return _holds(ok), details, {"n_regular": len(a.regular), "n_stable": len(a.stable)}


@_check("fvs_bounds")
def check_fvs_bounds(a: Analysis):
    """|regular| ≤ 3^k, and ≤ 2^k when P is tight, with k the minimum positive FVS size."""
    k = len(a.pos_fvs)
    count = len(a.regular)
    tight = a.classification.tight
    ok = count <= 3**k and (not tight or count <= 2**k)
    stats = {
        "k": k,
        "pos_fvs": sorted(a.dg.vertices[v] for v in a.pos_fvs),
        "n_regular": count,
        "tight": tight,
        "margin_3k": 3**k - count,
        "margin_2k": 2**k - count,
    }
    details = {} if ok else dict(stats, regular=_interps(a.regular))
    return _holds(ok), details, stats


@_check("lfp_invariants")
def check_lfp_invariants(a: Analysis):
    """tg_st(P) = tg_st(lfp(P)) = tg_sp(lfp(P)); negative-cycle freedom and local stratification carry over."""
    L = a.lfp
    tgst_p = build_tgst(a.prog, a.limits)
    tgst_l = build_tgst(L, a.limits)
    tgsp_l = build_tgsp(L, a.limits)
    dg_l = build_dg(L)
    cyc_l = enumerate_simple_cycles(dg_l, a.limits)
    l_neg = any(s.value == "-" for s in cyc_l.signs)
    l_pos = any(s.value == "+" for s in cyc_l.signs)
    failures = []
    if tgst_p.succ != tgst_l.succ:
        failures.append("tgst(P) != tgst(lfp(P))")
    if tgst_l.succ != tgsp_l.succ:
        failures.append("tgst(lfp(P)) != tgsp(lfp(P))")
    if a.classification.neg_cycle_free and l_neg:
        failures.append("dg(lfp(P)) has a negative cycle although dg(P) has none")
    if a.classification.locally_stratified and has_cycle(dg_l):
        failures.append("P locally stratified but dg(lfp(P)) has a cycle")
    stats = {
        "lfp_rules": len(L.rules),
        "dg_pos_cycle": not a.classification.pos_cycle_free,
        "dg_lfp_pos_cycle": l_pos,
        "dg_lfp_neg_cycle": l_neg,
    }
    details = {"failures": failures, "lfp": serialize_program(L)} if failures else {}
    return _holds(not failures), details, stats


@_check("partial_model_invariants")
def check_partial_model_invariants(a: Analysis):
    """Relations between stable/supported partial models, trap spaces and lfp(P)."""
    spm = a.stable_partial
    supp = supported_partial_models(a.prog, a.limits)
    failures = []
    if not set(spm) <= set(supp):
        failures.append("stable partial model that is not supported")
    if not a.regular:
        failures.append("no regular model")
    if a.classification.tight and spm != supp:
        failures.append("tight program with supported != stable partial models")
    two = [i.to_interp2() for i in spm if i.is_two_valued()]
    if sorted(two, key=lambda j: j.sort_key()) != a.stable:
        failures.append("stable models != 2-valued stable partial models")
    if not set(spm) <= set(stable_trap_spaces(a.prog, a.limits)):
        failures.append("stable partial model that is not a stable trap space")
    if not set(supp) <= set(supported_trap_spaces(a.prog, a.limits)):
        failures.append("supported partial model that is not a supported trap space")
    if stable_partial_models(a.lfp, a.limits) != spm:
        failures.append("stable partial models of lfp(P) differ")
    details = {"failures": failures} if failures else {}
    return _holds(not failures), details, {"n_stable_partial": len(spm), "n_supported_partial": len(supp)}


@_check("supported_ts_cover")
def check_supported_ts_cover(a: Analysis):
    """Every supported trap space lies ≤s-above some supported partial model.

    Not guaranteed under the Kleene valuation of the completion: for
    ``x0 :- not x0. x1 :- x0, not x0.`` the trap space ``{x0=u, x1=f}`` has
    no such model, since the only supported partial model is all-``u``.
    """
    supp = supported_partial_models(a.prog, a.limits)
    bare = [ts for ts in supported_trap_spaces(a.prog, a.limits) if not any(leq_s(m, ts) for m in supp)]
    details = {"uncovered": _interps(bare), "supported_partial": _interps(supp)} if bare else {}
    return _holds(not bare), details, {"n_uncovered": len(bare)}


def default_2k_bound(k: int) -> int:
    return 2**k


def conjecture_2k(a: Analysis, bound: Callable[[int], int] = default_2k_bound) -> tuple[Verdict, dict, dict]:
    if a.classification.tight:
        return Verdict.SKIPPED, {}, {}
    k = len(a.pos_fvs)
    # the trap-space route; equality with the reduct route is its own check
    count = len(min_stable_trap_spaces(a.prog, a.limits))
    stats = {"k": k, "n_regular": count, "bound": bound(k)}
    if count > bound(k):
        return Verdict.VIOLATED, dict(stats, pos_fvs=sorted(a.dg.vertices[v] for v in a.pos_fvs)), stats
    return Verdict.HOLDS, {}, stats


@_check("conjecture_2k")
def check_conjecture_2k(a: Analysis):
    """Open question: |regular| ≤ 2^k also for non-tight programs."""
    return conjecture_2k(a)


SUITE: dict[str, Callable[..., CheckReport]] = dict(_CHECKS)

# checks expected to hold on every program; the other two are empirical
PROVED = tuple(name for name in SUITE if name not in ("conjecture_2k", "supported_ts_cover"))


def run_suite(
    p: Program | Analysis,
    names: Iterable[str] | str = "all",
    limits: Limits = DEFAULT_LIMITS,
) -> list[CheckReport]:
    a = _analysis(p, limits)
    if names == "all":
        names = list(SUITE)
    elif isinstance(names, str):
        names = [names]
    out = []
    for name in names:
        if name not in SUITE:
            raise KeyError(f"unknown check {name!r}; known: {', '.join(SUITE)}")
        out.append(SUITE[name](a))
    return out


def _hunt_trial(args) -> tuple[GenProfile, Verdict, dict, dict]:
    profile, bound, limits = args
    a = Analysis(gen_program(profile), limits, profile)
    verdict, details, stats = conjecture_2k(a, bound)
    if verdict is Verdict.VIOLATED:
        details = _witness(a, "conjecture_2k", details)
    return profile, verdict, details, stats


def _trial_results(profile: GenProfile, bound, limits: Limits, jobs: int, max_attempts: int):
    """Yield trial outcomes in index order, evaluating chunks in parallel when ``jobs > 1``."""
    args = ((profile.derive(i), bound, limits) for i in range(max_attempts))
    if jobs <= 1:
        yield from map(_hunt_trial, args)
        return
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(jobs) as pool:
        yield from pool.map(_hunt_trial, args, chunksize=32)


def hunt_conjecture_2k(
    profile: GenProfile,
    trials: int,
    bound: Callable[[int], int] = default_2k_bound,
    witness_dir: str | Path | None = None,
    limits: Limits = DEFAULT_LIMITS,
    max_attempts: int | None = None,
    jobs: int = 1,
) -> CheckReport:
    """Search non-tight random programs for more than ``bound(k)`` regular models.

    Trial ``i`` uses ``profile.derive(i)``; tight programs do not count as
    trials. Stops at the first violation in trial order, writing a witness
    file when ``witness_dir`` is given. With ``jobs > 1`` the bound must be
    picklable.
    """
    max_attempts = max_attempts if max_attempts is not None else 100 * max(trials, 1)
    tested = skipped = 0
    worst = None
    t0 = time.perf_counter()
    results = _trial_results(profile, bound, limits, jobs, max_attempts)
    try:
        for index, (trial_profile, verdict, details, stats) in enumerate(results):
            if tested >= trials:
                break
            if verdict is Verdict.SKIPPED:
                skipped += 1
                continue
            tested += 1
            ratio = stats["n_regular"] / 2 ** stats["k"]
            if worst is None or ratio > worst["ratio"]:
                worst = {"ratio": ratio, "trial": index, **stats}
            if verdict is Verdict.VIOLATED:
                witness = details
                witness["details"]["trial"] = index
                if witness_dir is not None:
                    write_witness(witness, Path(witness_dir) / f"conjecture_2k_{trial_profile.seed}.json")
                return CheckReport("conjecture_2k", Verdict.VIOLATED, witness, {"trials": tested, "skipped_tight": skipped})
    except TooLarge as e:
        return CheckReport("conjecture_2k", Verdict.TOO_LARGE, None, {"error": str(e), "trials": tested})
    finally:
        results.close()
    stats = {
        "trials": tested,
        "skipped_tight": skipped,
        "worst_ratio": worst,
        "seconds": round(time.perf_counter() - t0, 3),
    }
    return CheckReport("conjecture_2k", Verdict.HOLDS, None, stats)


def write_witness(witness: dict, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(witness, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def replay_witness(
    witness: dict | str | Path,
    bound: Callable[[int], int] | None = None,
    limits: Limits = DEFAULT_LIMITS,
) -> CheckReport:
    """Re-run the check recorded in a witness.

    When the witness embeds a generator profile, the program is regenerated
    from it and must match the recorded text.
    """
    if not isinstance(witness, dict):
        witness = json.loads(Path(witness).read_text(encoding="utf-8"))
    prog = parse_program(witness["program"])
    profile = GenProfile(**witness["profile"]) if witness.get("profile") else None
    if profile is not None and gen_program(profile) != prog:
        raise ValueError("witness program does not match its generator profile")
    a = Analysis(prog, limits, profile)
    if witness["check"] == "conjecture_2k" and bound is not None:
        verdict, details, stats = conjecture_2k(a, bound)
        w = _witness(a, "conjecture_2k", details) if verdict is Verdict.VIOLATED else None
        return CheckReport("conjecture_2k", verdict, w, stats)
    return SUITE[witness["check"]](a)
