"""Boolean networks: program encoding, influence graphs, STGs, attractors, trap spaces.

Networks read and write a small text format, one line per variable::

    p = !q
    q = !p
    r = q

with ``&``, ``|``, ``!``, parentheses and the constants ``0`` and ``1``.
Lines starting with ``#`` are comments.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product

import networkx as nx

from .core import DEFAULT_LIMITS, Interp3, Limits, Program, canonical
from .depgraph import Sign, SignedDigraph
from .dynamics import TransitionGraph
from .formula import FALSE, Const, Formula, Not, Var, compile2, conj, disj, support, to_text
from .semantics import body_formula
from .statespace import closed_subspaces, minimal_flags


@dataclass(frozen=True)
class BooleanNetwork:
    vars: tuple[str, ...]
    funcs: tuple[Formula, ...]

    def __post_init__(self) -> None:
        if len(self.vars) != len(self.funcs):
            raise ValueError("one function per variable required")
        n = len(self.vars)
        for f in self.funcs:
            if any(i >= n for i in support(f)):
                raise ValueError("function references an unknown variable")

    @property
    def n(self) -> int:
        return len(self.vars)

    def __getitem__(self, v: int | str) -> Formula:
        return self.funcs[self.vars.index(v) if isinstance(v, str) else v]

    def step(self, state: int) -> int:
        """Synchronous image of ``state``."""
        out = 0
        for i, g in enumerate(self._compiled()):
            if g(state):
                out |= 1 << i
        return out

    def _compiled(self):
        cache = self.__dict__.get("_cache")
        if cache is None:
            cache = tuple(compile2(f) for f in self.funcs)
            object.__setattr__(self, "_cache", cache)
        return cache

    def to_text(self) -> str:
        return "".join(f"{v} = {to_text(f, self.vars)}\n" for v, f in zip(self.vars, self.funcs))


def encode_bn(prog: Program) -> BooleanNetwork:
    """One variable per atom; its function is the disjunction of the bodies of its rules."""
    bodies: list[list[Formula]] = [[] for _ in prog.atoms]
    for r in prog.rules:
        bodies[r.head].append(body_formula(r))
    return BooleanNetwork(prog.atoms, tuple(disj(b) if b else FALSE for b in bodies))


class BNParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line, self.col = line, col


_BN_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|([01])|([&|!()]))")


def parse_bn(text: str) -> BooleanNetwork:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in raw:
            raise BNParseError("expected 'var = expr'", lineno, 1)
        lhs, rhs = raw.split("=", 1)
        name = lhs.strip()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            raise BNParseError(f"bad variable name {name!r}", lineno, 1)
        lines.append((lineno, name, rhs, len(lhs) + 2))
    names = [name for _, name, _, _ in lines]
    if len(set(names)) != len(names):
        dup = next(x for x in names if names.count(x) > 1)
        raise BNParseError(f"variable {dup!r} defined twice", 1, 1)
    index = {v: i for i, v in enumerate(names)}
    funcs = [_ExprParser(rhs, index, lineno, offset).parse() for lineno, _, rhs, offset in lines]
    return BooleanNetwork(tuple(names), tuple(funcs))


class _ExprParser:
    def __init__(self, text: str, index: dict[str, int], line: int, offset: int):
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _BN_TOKEN.match(text, pos)
            if not m:
                raise BNParseError(f"unexpected character {text[pos:].strip()[:1]!r}", line, offset + pos)
            kind = "id" if m.group(1) else "const" if m.group(2) else m.group(3)
            self.toks.append((kind, m.group(m.lastindex or 0), offset + m.start(m.lastindex or 0)))
            pos = m.end()
        self.i = 0
        self.index = index
        self.line = line

    def _peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def _err(self, msg: str):
        tok = self._peek()
        col = tok[2] if tok else (self.toks[-1][2] + 1 if self.toks else 1)
        raise BNParseError(msg, self.line, col)

    def parse(self) -> Formula:
        f = self._or()
        if self._peek() is not None:
            self._err(f"unexpected {self._peek()[1]!r}")
        return f

    def _or(self) -> Formula:
        args = [self._and()]
        while (t := self._peek()) and t[0] == "|":
            self.i += 1
            args.append(self._and())
        return disj(args)

    def _and(self) -> Formula:
        args = [self._unary()]
        while (t := self._peek()) and t[0] == "&":
            self.i += 1
            args.append(self._unary())
        return conj(args)

    def _unary(self) -> Formula:
        t = self._peek()
        if t is None:
            self._err("unexpected end of expression")
        kind, text, _ = t
        self.i += 1
        if kind == "!":
            return Not(self._unary())
        if kind == "(":
            f = self._or()
            if not (c := self._peek()) or c[0] != ")":
                self._err("expected ')'")
            self.i += 1
            return f
        if kind == "const":
            return Const(text == "1")
        if kind == "id":
            if text not in self.index:
                self.i -= 1
                self._err(f"undefined variable {text!r}")
            return Var(self.index[text])
        self.i -= 1
        self._err(f"unexpected {text!r}")
        raise AssertionError


def influence_graph(bn: BooleanNetwork, limits: Limits = DEFAULT_LIMITS) -> SignedDigraph:
    """Signed arcs witnessed by a strict increase or decrease of ``f_v`` when flipping ``u``.

    Only the syntactic support of each function is enumerated.
    """
    arcs = set()
    for v, f in enumerate(bn.funcs):
        sup = sorted(support(f))
        limits.check_2v(len(sup), f"support of {bn.vars[v]}")
        g = compile2(f)
        for u in sup:
            others = [w for w in sup if w != u]
            up = down = False
            for bits in product((0, 1), repeat=len(others)):
                base = 0
                for w, b in zip(others, bits):
                    if b:
                        base |= 1 << w
                lo, hi = g(base), g(base | 1 << u)
                up |= lo < hi
                down |= lo > hi
                if up and down:
                    break
            if up:
                arcs.add((u, v, Sign.POS))
            if down:
                arcs.add((u, v, Sign.NEG))
    return SignedDigraph(bn.vars, frozenset(arcs))


def sync_stg(bn: BooleanNetwork, limits: Limits = DEFAULT_LIMITS) -> TransitionGraph:
    limits.check_2v(bn.n, "synchronous STG")
    return TransitionGraph(bn.vars, tuple(bn.step(s) for s in range(1 << bn.n)))


@dataclass(frozen=True)
class NondetTransitionGraph:
    """Successor sets over all ``2^n`` states."""

    atoms: tuple[str, ...]
    succs: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.atoms)

    def arcs(self) -> list[tuple[int, int]]:
        return [(s, t) for s, ts in enumerate(self.succs) for t in ts]

    def to_json(self) -> list[list[str]]:
        return [[state_str(s, self.n), state_str(t, self.n)] for s, t in self.arcs()]


def async_stg(bn: BooleanNetwork, limits: Limits = DEFAULT_LIMITS) -> NondetTransitionGraph:
    """Fully asynchronous STG: one successor per unstable variable, a self-loop only at fixed points."""
    limits.check_2v(bn.n, "asynchronous STG")
    succs = []
    for s in range(1 << bn.n):
        image = bn.step(s)
        diff = image ^ s
        if not diff:
            succs.append((s,))
        else:
            succs.append(tuple(sorted(s ^ (1 << i) for i in range(bn.n) if diff >> i & 1)))
    return NondetTransitionGraph(bn.vars, tuple(succs))


def state_str(state: int, n: int) -> str:
    """States as value sequences in variable order, e.g. ``100`` for p=1, q=0, r=0."""
    return "".join("1" if state >> i & 1 else "0" for i in range(n))


def _as_nx(g: TransitionGraph | NondetTransitionGraph) -> nx.DiGraph:
    d = nx.DiGraph()
    d.add_nodes_from(range(1 << g.n))
    d.add_edges_from(g.arcs())
    return d


def attractors(g: TransitionGraph | NondetTransitionGraph) -> list[frozenset[int]]:
    """Terminal SCCs, each a set of states; sorted by their smallest state."""
    comps = [frozenset(c) for c in nx.attracting_components(_as_nx(g))]
    return sorted(comps, key=lambda c: sorted(c))


def trap_spaces(bn: BooleanNetwork, limits: Limits = DEFAULT_LIMITS, minimal: bool = False) -> list[Interp3]:
    """Sub-spaces on which every fixed variable's function is constant at its fixed value."""
    limits.check_3v(bn.n, "trap spaces")
    limits.check_2v(bn.n, "trap spaces")
    closed, mask, val = closed_subspaces(bn.n, [bn.step(s) for s in range(1 << bn.n)])
    if minimal:
        closed = minimal_flags(bn.n, closed)
    return canonical(Interp3.from_masks(bn.vars, int(mask[i]), int(val[i])) for i in closed.nonzero()[0])


def min_trap_spaces(bn: BooleanNetwork, limits: Limits = DEFAULT_LIMITS) -> list[Interp3]:
    return trap_spaces(bn, limits, minimal=True)


def stg_to_dot(g: TransitionGraph | NondetTransitionGraph, name: str = "STG") -> str:
    """DOT with states as value sequences; attractor states are boxed."""
    boxed = set().union(*attractors(g))
    lines = [f"digraph {name} {{"]
    for s in range(1 << g.n):
        shape = "box" if s in boxed else "plaintext"
        lines.append(f'  "{state_str(s, g.n)}" [shape={shape}];')
    for s, t in g.arcs():
        lines.append(f'  "{state_str(s, g.n)}" -> "{state_str(t, g.n)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
