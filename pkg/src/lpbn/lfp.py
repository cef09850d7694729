"""Least fixpoint of a program by unfolding positive bodies.

Each step resolves every positive body atom of a rule against a rule of the
current quasi-interpretation program (one whose rules have empty positive
bodies), collecting the negative literals. Iterating from the empty program
reaches a quasi-interpretation program with the same stable dynamics.
"""

from __future__ import annotations

from typing import Sequence

from .core import Program, Rule


class ResolutionError(ValueError):
    pass


def sigma_rule(rule: Rule, resolvers: Sequence[Rule]) -> Rule:
    """Resolve every positive body atom of ``rule`` with one quasi rule each.

    ``resolvers`` must hold exactly one rule per positive body atom; the
    i-th resolver's head is matched to the i-th positive atom in id order.
    """
    if any(r.pbody for r in resolvers):
        raise ResolutionError("resolvers must have empty positive bodies")
    pos = sorted(rule.pbody)
    heads = [r.head for r in resolvers]
    if heads != pos and sorted(heads) != pos:
        raise ResolutionError(f"resolver heads {heads} do not match positive body {pos}")
    nbody = set(rule.nbody)
    for r in resolvers:
        nbody |= r.nbody
    return Rule(rule.head, frozenset(), frozenset(nbody))


def sigma(prog: Program, quasi: frozenset[Rule]) -> frozenset[Rule]:
    """One unfolding step over all choices of resolvers in ``quasi``."""
    negs_by_head: dict[int, set[frozenset[int]]] = {}
    for q in quasi:
        negs_by_head.setdefault(q.head, set()).add(q.nbody)
    out: set[Rule] = set()
    for r in prog.rules:
        # fold the cartesian product atom by atom, deduplicating as we go
        combos: set[frozenset[int]] = {r.nbody}
        for a in sorted(r.pbody):
            options = negs_by_head.get(a)
            if not options:
                combos = set()
                break
            combos = {c | o for c in combos for o in options}
        out.update(Rule(r.head, frozenset(), c) for c in combos)
    return frozenset(out)


def lfp(prog: Program) -> Program:
    """The least fixpoint as a quasi-interpretation program over ``prog``'s atom table."""
    current: frozenset[Rule] = frozenset()
    while True:
        nxt = sigma(prog, current)
        if nxt == current:
            break
        current = nxt
    a = prog.atoms
    rules = sorted(current, key=lambda r: (a[r.head], len(r.nbody), sorted(a[i] for i in r.nbody)))
    return Program(prog.atoms, tuple(rules))
