"""Three-valued semantics: completion, reduct, stable/supported partial models, regular models.

The enumerators here are deliberately brute force over all 3^n
interpretations and go through the reduct and the least 3-valued model
literally. They are the reference against which the trap-space route in
:mod:`lpbn.dynamics` is checked.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    DEFAULT_LIMITS,
    TV,
    DomainMismatch,
    Interp2,
    Interp3,
    Limits,
    Program,
    Rule,
    all_interp3_masks,
    bits_of,
    canonical,
    minimal_s,
)
from .formula import FALSE, Formula, Not, Var, conj, disj, eval3

__all__ = [
    "Completion",
    "ReducedProgram",
    "ReducedRule",
    "body_formula",
    "clark_completion",
    "eval3",
    "is_stable_partial_model",
    "is_supported_partial_model",
    "least3_model_positive",
    "reduct3",
    "regular_models",
    "stable_models",
    "stable_partial_models",
    "supported_partial_models",
]


def body_formula(rule: Rule) -> Formula:
    lits: list[Formula] = [Var(a) for a in sorted(rule.pbody)]
    lits += [Not(Var(a)) for a in sorted(rule.nbody)]
    return conj(lits)


@dataclass(frozen=True)
class Completion:
    """Right-hand sides of the completion, one per atom id."""

    atoms: tuple[str, ...]
    rhs: tuple[Formula, ...]

    def __getitem__(self, key: int | str) -> Formula:
        return self.rhs[self.atoms.index(key) if isinstance(key, str) else key]

    def is_model(self, interp: Interp3) -> bool:
        return all(eval3(interp, f) == interp.vals[a] for a, f in enumerate(self.rhs))


def clark_completion(prog: Program) -> Completion:
    bodies: list[list[Formula]] = [[] for _ in prog.atoms]
    for r in prog.rules:
        bodies[r.head].append(body_formula(r))
    return Completion(prog.atoms, tuple(disj(b) if b else FALSE for b in bodies))


@dataclass(frozen=True)
class ReducedRule:
    """``head :- pbody`` plus the special atom ``u`` in the body when ``u`` is set."""

    head: int
    pbody: frozenset[int]
    u: bool = False


@dataclass(frozen=True)
class ReducedProgram:
    atoms: tuple[str, ...]
    rules: tuple[ReducedRule, ...]

    def __str__(self) -> str:
        lines = []
        for r in self.rules:
            body = [self.atoms[a] for a in sorted(r.pbody)] + (["u"] if r.u else [])
            head = self.atoms[r.head]
            lines.append(f"{head} :- {', '.join(body)}." if body else f"{head}.")
        return "\n".join(lines) + ("\n" if lines else "")


def reduct3(prog: Program, interp: Interp3) -> ReducedProgram:
    """The 3-valued reduct.

    Rules with a true negated atom are dropped, negated false atoms are
    erased, and any remaining negated atom becomes the special atom ``u``.
    """
    if interp.atoms != prog.atoms:
        raise DomainMismatch("interpretation and program use different atom tables")
    out = []
    for r in prog.rules:
        vals = [interp.vals[b] for b in r.nbody]
        if TV.T in vals:
            continue
        out.append(ReducedRule(r.head, r.pbody, TV.U in vals))
    return ReducedProgram(prog.atoms, tuple(out))


def _least3_bits(n: int, rules: list[tuple[int, int, bool]]) -> tuple[int, int]:
    """Kleene iteration from all-false for a reduct given as ``(head, pbody bits, u)``.

    Tracks the atoms valued t and the atoms valued at least u as two bitsets;
    a body is t iff its atoms are all t and it has no ``u``, and at least u iff
    its atoms are all at least u. Returns ``(at_least_u, true)``.
    """
    true = tu = 0
    while True:
        nt = ntu = 0
        for head, pb, u in rules:
            if pb & tu == pb:
                ntu |= 1 << head
                if not u and pb & true == pb:
                    nt |= 1 << head
        if nt == true and ntu == tu:
            return tu, true
        true, tu = nt, ntu


def least3_model_positive(reduced: ReducedProgram) -> Interp3:
    """The ≤t-least 3-valued model of a reduct."""
    rules = [(r.head, bits_of(r.pbody), r.u) for r in reduced.rules]
    tu, true = _least3_bits(len(reduced.atoms), rules)
    return Interp3.from_masks(reduced.atoms, true | ~tu & ((1 << len(reduced.atoms)) - 1), true)


def _is_stable_masks(masks: tuple[tuple[int, int, int], ...], n: int, mask: int, val: int) -> bool:
    full = (1 << n) - 1
    undef = full & ~mask
    rules = []
    for head, pb, nb in masks:
        if nb & val:
            continue
        rules.append((head, pb, bool(nb & undef)))
    tu, true = _least3_bits(n, rules)
    return true == val and tu == val | undef


def is_stable_partial_model(prog: Program, interp: Interp3) -> bool:
    return least3_model_positive(reduct3(prog, interp)) == interp


def stable_partial_models(prog: Program, limits: Limits = DEFAULT_LIMITS) -> list[Interp3]:
    """All stable partial models, by checking each of the 3^n interpretations."""
    n = prog.n
    limits.check_3v(n, "stable partial models")
    masks = prog.rule_masks
    found = [
        Interp3.from_masks(prog.atoms, m, v)
        for m, v in all_interp3_masks(n)
        if _is_stable_masks(masks, n, m, v)
    ]
    return canonical(found)


def _rhs_bits(masks, n: int, mask: int, val: int) -> tuple[int, int]:
    """Completion right-hand sides under ``(mask, val)``, as ``(defined, true)`` bitsets."""
    fal = mask & ~val
    at_least_u = true = 0
    for head, pb, nb in masks:
        # body is f if a positive atom is f or a negated atom is t
        if pb & fal or nb & val:
            continue
        at_least_u |= 1 << head
        if pb & val == pb and nb & fal == nb:
            true |= 1 << head
    full = (1 << n) - 1
    return (true | ~at_least_u & full), true


def is_supported_partial_model(prog: Program, interp: Interp3) -> bool:
    return clark_completion(prog).is_model(interp)


def supported_partial_models(prog: Program, limits: Limits = DEFAULT_LIMITS) -> list[Interp3]:
    """All 3-valued models of the completion."""
    n = prog.n
    limits.check_3v(n, "supported partial models")
    masks = prog.rule_masks
    found = [
        Interp3.from_masks(prog.atoms, m, v)
        for m, v in all_interp3_masks(n)
        if _rhs_bits(masks, n, m, v) == (m, v)
    ]
    return canonical(found)


def regular_models(prog: Program, limits: Limits = DEFAULT_LIMITS) -> list[Interp3]:
    """The ≤s-minimal stable partial models."""
    return minimal_s(stable_partial_models(prog, limits))


def stable_models(prog: Program, limits: Limits = DEFAULT_LIMITS) -> list[Interp2]:
    """All 2-valued fixed points of the Gelfond-Lifschitz operator, in canonical order."""
    from .dynamics import fp_bits

    limits.check_2v(prog.n, "stable models")
    masks = prog.rule_masks
    found = [Interp2(prog.atoms, s) for s in range(1 << prog.n) if fp_bits(masks, s) == s]
    return sorted(found, key=Interp2.sort_key)
