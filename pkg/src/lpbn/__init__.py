"""Ground normal logic programs, their 3-valued semantics and Boolean-network dynamics."""

from .boolnet import (
    BooleanNetwork,
    async_stg,
    attractors,
    encode_bn,
    influence_graph,
    min_trap_spaces,
    parse_bn,
    sync_stg,
    trap_spaces,
)
from .checkers import SUITE, CheckReport, Verdict, hunt_conjecture_2k, replay_witness, run_suite
from .core import (
    DEFAULT_LIMITS,
    TV,
    DomainMismatch,
    Interp2,
    Interp3,
    Limits,
    Program,
    Rule,
    TooLarge,
    gamma,
    leq_s,
    leq_t,
)
from .depgraph import Sign, SignedDigraph, build_dg, build_pdg, classify, enumerate_simple_cycles, min_positive_fvs
from .dynamics import (
    build_tgsp,
    build_tgst,
    min_stable_trap_spaces,
    min_supported_trap_spaces,
    stable_trap_spaces,
    supported_trap_spaces,
)
from .generate import GenProfile, gen_program
from .lfp import lfp
from .parser import ParseError, parse_file, parse_program, serialize_program
from .semantics import (
    clark_completion,
    reduct3,
    regular_models,
    stable_models,
    stable_partial_models,
    supported_partial_models,
)

__version__ = "0.1.0"
