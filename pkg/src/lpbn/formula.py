"""Propositional formula trees over atom ids.

Leaves are atoms (:class:`Var`), the special undefined atom (:class:`UAtom`)
and Boolean constants. Conjunction and disjunction are n-ary; the empty
conjunction is true and the empty disjunction false.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, Union

from .core import TV, DomainMismatch, Interp3


@dataclass(frozen=True)
class Var:
    id: int


@dataclass(frozen=True)
class UAtom:
    """The special atom ``u``; always evaluates to undefined."""


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    args: tuple["Formula", ...]


@dataclass(frozen=True)
class Or:
    args: tuple["Formula", ...]


Formula = Union[Var, UAtom, Const, Not, And, Or]

TRUE = Const(True)
FALSE = Const(False)
U = UAtom()


def conj(args: Sequence[Formula]) -> Formula:
    """Conjunction, collapsing the empty and singleton cases."""
    if not args:
        return TRUE
    if len(args) == 1:
        return args[0]
    return And(tuple(args))


def disj(args: Sequence[Formula]) -> Formula:
    if not args:
        return FALSE
    if len(args) == 1:
        return args[0]
    return Or(tuple(args))


def support(f: Formula) -> frozenset[int]:
    """Atom ids occurring syntactically in ``f``."""
    if isinstance(f, Var):
        return frozenset((f.id,))
    if isinstance(f, Not):
        return support(f.arg)
    if isinstance(f, (And, Or)):
        out: frozenset[int] = frozenset()
        for a in f.args:
            out |= support(a)
        return out
    return frozenset()


def eval3(interp: Interp3, f: Formula) -> TV:
    """Kleene valuation: ∧ is the ≤t-minimum, ∨ the ≤t-maximum, ¬ swaps t and f."""
    if isinstance(f, Var):
        if f.id >= len(interp.vals):
            raise DomainMismatch(f"atom id {f.id} outside interpretation of {len(interp.vals)} atoms")
        return interp.vals[f.id]
    if isinstance(f, Not):
        return ~eval3(interp, f.arg)
    if isinstance(f, And):
        out = TV.T
        for a in f.args:
            out = min(out, eval3(interp, a))
            if out is TV.F:
                break
        return out
    if isinstance(f, Or):
        out = TV.F
        for a in f.args:
            out = max(out, eval3(interp, a))
            if out is TV.T:
                break
        return out
    if isinstance(f, Const):
        return TV.T if f.value else TV.F
    if isinstance(f, UAtom):
        return TV.U
    raise TypeError(f"not a formula: {f!r}")


def eval2(state: int, f: Formula) -> bool:
    """Evaluate on a state bitset. ``u`` has no 2-valued meaning."""
    if isinstance(f, Var):
        return bool(state >> f.id & 1)
    if isinstance(f, Not):
        return not eval2(state, f.arg)
    if isinstance(f, And):
        return all(eval2(state, a) for a in f.args)
    if isinstance(f, Or):
        return any(eval2(state, a) for a in f.args)
    if isinstance(f, Const):
        return f.value
    raise ValueError(f"cannot evaluate {f!r} in 2-valued logic")


def compile2(f: Formula) -> Callable[[int], bool]:
    """Closure equivalent to ``lambda s: eval2(s, f)``, without the tree walk."""
    if isinstance(f, Var):
        bit = 1 << f.id
        return lambda s: bool(s & bit)
    if isinstance(f, Not):
        g = compile2(f.arg)
        return lambda s: not g(s)
    if isinstance(f, And):
        gs = tuple(compile2(a) for a in f.args)
        return lambda s: all(g(s) for g in gs)
    if isinstance(f, Or):
        gs = tuple(compile2(a) for a in f.args)
        return lambda s: any(g(s) for g in gs)
    if isinstance(f, Const):
        v = f.value
        return lambda s: v
    raise ValueError(f"cannot evaluate {f!r} in 2-valued logic")


def to_text(f: Formula, names: Sequence[str], style: str = "bn") -> str:
    """Render with ``&``, ``|``, ``!`` (style ``"bn"``) or ``∧``, ``∨``, ``¬`` (style ``"math"``)."""
    and_, or_, not_ = ("&", "|", "!") if style == "bn" else ("∧", "∨", "¬")

    def go(g: Formula, parent: int) -> str:
        # precedence: or=1, and=2, not/atom=3
        if isinstance(g, Var):
            return names[g.id]
        if isinstance(g, UAtom):
            return "u"
        if isinstance(g, Const):
            return "1" if g.value else "0"
        if isinstance(g, Not):
            return not_ + go(g.arg, 3)
        if isinstance(g, And):
            s = f" {and_} ".join(go(a, 2) for a in g.args)
            return f"({s})" if parent > 2 else s
        if isinstance(g, Or):
            s = f" {or_} ".join(go(a, 1) for a in g.args)
            return f"({s})" if parent > 1 else s
        raise TypeError(g)

    return go(f, 0)
