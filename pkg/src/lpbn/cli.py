"""Command-line interface: ``lpbn VERB ...``.

Exit codes: 0 success, 1 usage error, 2 parse error, 3 limit exceeded,
4 check violated (the witness is printed).
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path
from typing import Sequence

from .boolnet import (
    BNParseError,
    BooleanNetwork,
    async_stg,
    attractors,
    encode_bn,
    influence_graph,
    min_trap_spaces,
    parse_bn,
    state_str,
    stg_to_dot,
    sync_stg,
    trap_spaces,
)
from .checkers import SUITE, Analysis, Verdict, hunt_conjecture_2k, run_suite, write_witness
from .core import Limits, TooLarge
from .depgraph import build_dg, build_pdg, classify, min_positive_fvs
from .dynamics import build_tgsp, build_tgst, stable_trap_spaces, supported_trap_spaces
from .generate import GenProfile, gen_program
from .lfp import lfp
from .parser import ParseError, parse_file, serialize_program
from .semantics import regular_models, stable_models, stable_partial_models, supported_partial_models

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_LIMIT, EXIT_VIOLATED = range(5)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _dump(obj) -> None:
    print(json.dumps(obj, indent=2, ensure_ascii=False))


def _limits(args) -> Limits:
    return Limits(max_atoms_2v=args.max_atoms_2v, max_atoms_3v=args.max_atoms_3v)


def _read_network(path: str) -> BooleanNetwork:
    if path.endswith(".bn"):
        return parse_bn(Path(path).read_text(encoding="utf-8"))
    return encode_bn(parse_file(path))


def cmd_parse(args) -> int:
    print(serialize_program(parse_file(args.file)), end="")
    return EXIT_OK


def cmd_graph(args) -> int:
    prog = parse_file(args.file)
    g = build_pdg(prog) if args.positive else build_dg(prog)
    if args.dot:
        print(g.to_dot("pdg" if args.positive else "dg"), end="")
    else:
        _dump(g.to_json())
    return EXIT_OK


def cmd_classify(args) -> int:
    prog = parse_file(args.file)
    limits = _limits(args)
    out = classify(prog, limits).to_json()
    fvs = min_positive_fvs(build_dg(prog), limits)
    out["pos_fvs"] = sorted(prog.atoms[v] for v in fvs)
    out["k"] = len(fvs)
    _dump(out)
    return EXIT_OK


MODEL_KINDS = {
    "regular": regular_models,
    "stable": stable_models,
    "stable_partial": stable_partial_models,
    "supported_partial": supported_partial_models,
    "stable_trap_spaces": stable_trap_spaces,
    "supported_trap_spaces": supported_trap_spaces,
}


def cmd_models(args) -> int:
    prog = parse_file(args.file)
    found = MODEL_KINDS[args.kind](prog, _limits(args))
    _dump([m.to_json() for m in found])
    return EXIT_OK


def cmd_lfp(args) -> int:
    print(serialize_program(lfp(parse_file(args.file))), end="")
    return EXIT_OK


def cmd_bn(args) -> int:
    bn = _read_network(args.file)
    limits = _limits(args)
    if args.influence:
        g = influence_graph(bn, limits)
        print(g.to_dot("ig"), end="") if args.dot else _dump(g.to_json())
    elif args.trap_spaces or args.min_trap_spaces:
        found = min_trap_spaces(bn, limits) if args.min_trap_spaces else trap_spaces(bn, limits)
        _dump([t.to_json() for t in found])
    else:
        scheme = args.stg or "sync"
        stg = sync_stg(bn, limits) if scheme == "sync" else async_stg(bn, limits)
        if args.attractors:
            _dump([[state_str(s, bn.n) for s in sorted(a)] for a in attractors(stg)])
        elif args.dot:
            print(stg_to_dot(stg, f"{scheme}_stg"), end="")
        else:
            _dump([[state_str(s, bn.n), state_str(t, bn.n)] for s, t in stg.arcs()])
    return EXIT_OK


def cmd_dynamics(args) -> int:
    prog = parse_file(args.file)
    build = build_tgst if args.graph == "tgst" else build_tgsp
    tg = build(prog, _limits(args))
    print(tg.to_dot(args.graph), end="") if args.dot else _dump(tg.to_json())
    return EXIT_OK


def _suite_names(name: str) -> list[str]:
    if name == "all":
        return list(SUITE)
    if name not in SUITE:
        raise UsageError(f"unknown check {name!r}; choose from all, {', '.join(SUITE)}")
    return [name]


def _exit_for(reports) -> int:
    verdicts = {r.verdict for r in reports}
    if Verdict.VIOLATED in verdicts:
        return EXIT_VIOLATED
    if Verdict.TOO_LARGE in verdicts:
        return EXIT_LIMIT
    return EXIT_OK


def cmd_check(args) -> int:
    names = _suite_names(args.suite)
    limits = _limits(args)
    if args.file is not None:
        reports = run_suite(parse_file(args.file), names, limits)
        _dump([r.to_json(args.timings) for r in reports])
        return _exit_for(reports)

    profile = GenProfile.parse(args.random)
    if names == ["conjecture_2k"]:
        rep = hunt_conjecture_2k(profile, args.trials, witness_dir=args.witness_dir, limits=limits, jobs=args.jobs)
        _dump(rep.to_json(args.timings))
        return _exit_for([rep])

    counts: dict[str, Counter] = {n: Counter() for n in names}
    violations = []
    for i in range(args.trials):
        p = profile.derive(i)
        reports = run_suite(Analysis(gen_program(p), limits, p), names, limits)
        for r in reports:
            counts[r.check][r.verdict.value] += 1
            if r.verdict is Verdict.VIOLATED:
                r.witness["details"]["trial"] = i
                violations.append(r.witness)
                if args.witness_dir:
                    write_witness(r.witness, Path(args.witness_dir) / f"{r.check}_{p.seed}.json")
    _dump({
        "profile": profile.to_json(),
        "trials": args.trials,
        "verdicts": {n: dict(sorted(c.items())) for n, c in counts.items()},
        "witnesses": violations,
    })
    if violations:
        return EXIT_VIOLATED
    if any(c[Verdict.TOO_LARGE.value] for c in counts.values()):
        return EXIT_LIMIT
    return EXIT_OK


def cmd_gen(args) -> int:
    print(serialize_program(gen_program(GenProfile.parse(args.profile))), end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--max-atoms-2v", type=int, default=Limits.max_atoms_2v, metavar="N")
    common.add_argument("--max-atoms-3v", type=int, default=Limits.max_atoms_3v, metavar="N")
    common.add_argument("--jobs", type=int, default=1, metavar="N", help="worker processes for random checks")

    ap = _Parser(prog="lpbn", description="Normal logic programs and their Boolean-network dynamics.")
    sub = ap.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("parse", parents=[common], help="echo the canonical form of a program")
    p.add_argument("file")
    p.set_defaults(run=cmd_parse)

    p = sub.add_parser("graph", parents=[common], help="signed dependency graph")
    p.add_argument("file")
    p.add_argument("--positive", action="store_true", help="positive dependency graph only")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(run=cmd_graph)

    p = sub.add_parser("classify", parents=[common], help="syntactic classes and minimum positive FVS")
    p.add_argument("file")
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("models", parents=[common], help="models and trap spaces, in canonical order")
    p.add_argument("file")
    kinds = p.add_mutually_exclusive_group(required=True)
    for kind in MODEL_KINDS:
        kinds.add_argument("--" + kind.replace("_", "-"), dest="kind", action="store_const", const=kind)
    p.set_defaults(run=cmd_models)

    p = sub.add_parser("lfp", parents=[common], help="least fixpoint of the unfolding")
    p.add_argument("file")
    p.set_defaults(run=cmd_lfp)

    p = sub.add_parser("bn", parents=[common], help="Boolean network of a program (.lp) or a network file (.bn)")
    p.add_argument("file")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--influence", action="store_true")
    mode.add_argument("--trap-spaces", action="store_true")
    mode.add_argument("--min-trap-spaces", action="store_true")
    mode.add_argument("--stg", choices=("sync", "async"))
    p.add_argument("--attractors", action="store_true", help="attractors of the STG (sync unless --stg async)")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(run=cmd_bn)

    p = sub.add_parser("dynamics", parents=[common], help="stable or supported transition graph")
    p.add_argument("file")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--tgst", dest="graph", action="store_const", const="tgst")
    which.add_argument("--tgsp", dest="graph", action="store_const", const="tgsp")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(run=cmd_dynamics)

    p = sub.add_parser("check", parents=[common], help="run theorem checks on a file or random programs")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("file", nargs="?")
    src.add_argument("--random", metavar="PROFILE", help="k=v,... or JSON generator profile")
    p.add_argument("--suite", default="all", metavar="all|NAME")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--witness-dir", metavar="DIR")
    p.add_argument("--timings", action="store_true", help="include wall-clock seconds in the report")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("gen", parents=[common], help="generate a random program")
    p.add_argument("profile", help="k=v,... or JSON generator profile")
    p.set_defaults(run=cmd_gen)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        if args.verb == "bn" and args.attractors and (args.influence or args.trap_spaces or args.min_trap_spaces):
            ap.error("--attractors combines only with --stg")
        if args.verb == "bn" and not (args.influence or args.trap_spaces or args.min_trap_spaces or args.stg or args.attractors):
            ap.error("bn: one of --influence, --stg, --attractors, --trap-spaces, --min-trap-spaces is required")
        return args.run(args)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, BNParseError) as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except TooLarge as e:
        print(f"limit exceeded: {e}", file=sys.stderr)
        return EXIT_LIMIT
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
