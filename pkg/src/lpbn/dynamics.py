"""The T_P and F_P operators, transition graphs and stable/supported trap spaces."""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    DEFAULT_LIMITS,
    DomainMismatch,
    Interp2,
    Interp3,
    Limits,
    Program,
    canonical,
    gamma_bits,
    ids_of,
)
from .statespace import closed_subspaces, minimal_flags

RuleMasks = tuple[tuple[int, int, int], ...]


def tp_bits(masks: RuleMasks, state: int) -> int:
    out = 0
    for head, pb, nb in masks:
        if pb & state == pb and not nb & state:
            out |= 1 << head
    return out


def fp_bits(masks: RuleMasks, state: int) -> int:
    """Least model of the Gelfond-Lifschitz reduct of the program w.r.t. ``state``."""
    rules = [(h, pb) for h, pb, nb in masks if not nb & state]
    model = 0
    changed = True
    while changed:
        changed = False
        for h, pb in rules:
            if pb & model == pb and not model >> h & 1:
                model |= 1 << h
                changed = True
    return model


def _check(prog: Program, interp: Interp2) -> None:
    if interp.atoms != prog.atoms:
        raise DomainMismatch("interpretation and program use different atom tables")


def tp_step(prog: Program, interp: Interp2) -> Interp2:
    """Immediate consequence operator."""
    _check(prog, interp)
    return Interp2(prog.atoms, tp_bits(prog.rule_masks, interp.bits))


def fp_step(prog: Program, interp: Interp2) -> Interp2:
    """Gelfond-Lifschitz operator."""
    _check(prog, interp)
    return Interp2(prog.atoms, fp_bits(prog.rule_masks, interp.bits))


def state_label(atoms: tuple[str, ...], state: int) -> str:
    names = [atoms[i] for i in ids_of(state)]
    return "{" + ", ".join(names) + "}" if names else "∅"


@dataclass(frozen=True)
class TransitionGraph:
    """Deterministic successor table over all ``2^n`` states, indexed by state bits."""

    atoms: tuple[str, ...]
    succ: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.atoms)

    def arcs(self) -> list[tuple[int, int]]:
        return list(enumerate(self.succ))

    def fixed_points(self) -> list[int]:
        return [s for s, t in enumerate(self.succ) if s == t]

    def to_json(self) -> list[list[list[str]]]:
        a = self.atoms
        return [[Interp2(a, s).to_json(), Interp2(a, t).to_json()] for s, t in self.arcs()]

    def to_dot(self, name: str = "TG") -> str:
        lines = [f"digraph {name} {{"]
        for s in range(len(self.succ)):
            lines.append(f'  s{s} [label="{state_label(self.atoms, s)}"];')
        for s, t in self.arcs():
            lines.append(f"  s{s} -> s{t};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_tgsp(prog: Program, limits: Limits = DEFAULT_LIMITS) -> TransitionGraph:
    """Supported transition graph (arcs ``I -> T_P(I)``)."""
    limits.check_2v(prog.n, "supported transition graph")
    m = prog.rule_masks
    return TransitionGraph(prog.atoms, tuple(tp_bits(m, s) for s in range(1 << prog.n)))


def build_tgst(prog: Program, limits: Limits = DEFAULT_LIMITS) -> TransitionGraph:
    """Stable transition graph (arcs ``I -> F_P(I)``)."""
    limits.check_2v(prog.n, "stable transition graph")
    m = prog.rule_masks
    return TransitionGraph(prog.atoms, tuple(fp_bits(m, s) for s in range(1 << prog.n)))


def _is_trap(step, prog: Program, interp: Interp3, limits: Limits) -> bool:
    if interp.atoms != prog.atoms:
        raise DomainMismatch("interpretation and program use different atom tables")
    limits.check_2v(interp.n_undefined(), "trap-space membership")
    mask, val = interp.masks
    m = prog.rule_masks
    return all(step(m, s) & mask == val for s in gamma_bits(mask, val, prog.n))


def is_stable_trap_space(prog: Program, interp: Interp3, limits: Limits = DEFAULT_LIMITS) -> bool:
    """Whether F_P maps every member of gamma(interp) back into it."""
    return _is_trap(fp_bits, prog, interp, limits)


def is_supported_trap_space(prog: Program, interp: Interp3, limits: Limits = DEFAULT_LIMITS) -> bool:
    """Whether T_P maps every member of gamma(interp) back into it."""
    return _is_trap(tp_bits, prog, interp, limits)


def trap_spaces_of(tg: TransitionGraph, limits: Limits = DEFAULT_LIMITS, minimal: bool = False) -> list[Interp3]:
    """Sub-spaces closed under ``tg``, optionally only the ≤s-minimal ones."""
    limits.check_3v(tg.n, "trap spaces")
    closed, mask, val = closed_subspaces(tg.n, tg.succ)
    if minimal:
        closed = minimal_flags(tg.n, closed)
    return canonical(Interp3.from_masks(tg.atoms, int(mask[i]), int(val[i])) for i in closed.nonzero()[0])


def stable_trap_spaces(prog: Program, limits: Limits = DEFAULT_LIMITS) -> list[Interp3]:
    limits.check_3v(prog.n, "stable trap spaces")
    return trap_spaces_of(build_tgst(prog, limits), limits)


def supported_trap_spaces(prog: Program, limits: Limits = DEFAULT_LIMITS) -> list[Interp3]:
    limits.check_3v(prog.n, "supported trap spaces")
    return trap_spaces_of(build_tgsp(prog, limits), limits)


def min_stable_trap_spaces(prog: Program, limits: Limits = DEFAULT_LIMITS) -> list[Interp3]:
    """The ≤s-minimal stable trap spaces; these are the regular models."""
    limits.check_3v(prog.n, "stable trap spaces")
    return trap_spaces_of(build_tgst(prog, limits), limits, minimal=True)


def min_supported_trap_spaces(prog: Program, limits: Limits = DEFAULT_LIMITS) -> list[Interp3]:
    limits.check_3v(prog.n, "supported trap spaces")
    return trap_spaces_of(build_tgsp(prog, limits), limits, minimal=True)
