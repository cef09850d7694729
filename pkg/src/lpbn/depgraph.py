"""Signed dependency graphs, their cycles and positive feedback vertex sets."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, product
from typing import Iterable, Iterator

import networkx as nx

from .core import DEFAULT_LIMITS, Limits, Program, TooLarge


class Sign(str, Enum):
    POS = "+"
    NEG = "-"

    @property
    def symbol(self) -> str:
        return "⊕" if self is Sign.POS else "⊖"


Arc = tuple[int, int, Sign]


@dataclass(frozen=True)
class SignedDigraph:
    """Vertices are named; arcs are ``(from id, to id, sign)`` triples.

    Two arcs of opposite sign may connect the same ordered pair.
    """

    vertices: tuple[str, ...]
    arcs: frozenset[Arc]

    def sorted_arcs(self) -> list[Arc]:
        return sorted(self.arcs, key=lambda a: (a[0], a[1], a[2].value))

    def named_arcs(self) -> set[tuple[str, str, str]]:
        v = self.vertices
        return {(v[a], v[b], s.value) for a, b, s in self.arcs}

    def positive_part(self) -> "SignedDigraph":
        return SignedDigraph(self.vertices, frozenset(a for a in self.arcs if a[2] is Sign.POS))

    def is_subgraph_of(self, other: "SignedDigraph") -> bool:
        return self.vertices == other.vertices and self.arcs <= other.arcs

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(len(self.vertices)))
        g.add_edges_from((a, b) for a, b, _ in self.sorted_arcs())
        return g

    def signs_between(self) -> dict[tuple[int, int], list[Sign]]:
        out: dict[tuple[int, int], list[Sign]] = {}
        for a, b, s in self.sorted_arcs():
            out.setdefault((a, b), []).append(s)
        return out

    def to_json(self) -> dict:
        v = self.vertices
        return {
            "vertices": list(v),
            "arcs": [[v[a], v[b], s.value] for a, b, s in self.sorted_arcs()],
        }

    def to_dot(self, name: str = "G") -> str:
        lines = [f"digraph {name} {{"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for a, b, s in self.sorted_arcs():
            u, w = self.vertices[a], self.vertices[b]
            if s is Sign.POS:
                lines.append(f'  "{u}" -> "{w}" [style=solid];')
            else:
                lines.append(f'  "{u}" -> "{w}" [style=dashed, label="⊖"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_dg(prog: Program) -> SignedDigraph:
    arcs = set()
    for r in prog.rules:
        arcs.update((u, r.head, Sign.POS) for u in r.pbody)
        arcs.update((u, r.head, Sign.NEG) for u in r.nbody)
    return SignedDigraph(prog.atoms, frozenset(arcs))


def build_pdg(prog: Program) -> SignedDigraph:
    return build_dg(prog).positive_part()


@dataclass(frozen=True)
class SCCs:
    """SCC partition in a topological order of the condensation.

    ``dag`` maps ``(i, j)`` component pairs to the count of arcs of each sign
    from component ``i`` to component ``j``.
    """

    components: tuple[frozenset[int], ...]
    component_of: tuple[int, ...]
    dag: dict[tuple[int, int], Counter]

    def sources(self) -> list[int]:
        targets = {j for (_, j) in self.dag}
        return [i for i in range(len(self.components)) if i not in targets]


def sccs(g: SignedDigraph) -> SCCs:
    comps = [frozenset(c) for c in nx.strongly_connected_components(g.to_networkx())]
    comps.sort(key=min)
    cond = nx.DiGraph()
    cond.add_nodes_from(range(len(comps)))
    comp_of = [0] * len(g.vertices)
    for i, c in enumerate(comps):
        for v in c:
            comp_of[v] = i
    for a, b, _ in g.arcs:
        if comp_of[a] != comp_of[b]:
            cond.add_edge(comp_of[a], comp_of[b])
    order = list(nx.lexicographical_topological_sort(cond, key=lambda i: min(comps[i])))
    renum = {old: new for new, old in enumerate(order)}
    components = tuple(comps[i] for i in order)
    component_of = tuple(renum[c] for c in comp_of)
    dag: dict[tuple[int, int], Counter] = {}
    for a, b, s in g.sorted_arcs():
        i, j = component_of[a], component_of[b]
        if i != j:
            dag.setdefault((i, j), Counter())[s] += 1
    return SCCs(components, component_of, dict(sorted(dag.items())))


@dataclass(frozen=True)
class CycleReport:
    """Simple cycles as arc sequences, each with its sign."""

    cycles: tuple[tuple[Arc, ...], ...]
    signs: tuple[Sign, ...]

    def positive(self) -> list[tuple[Arc, ...]]:
        return [c for c, s in zip(self.cycles, self.signs) if s is Sign.POS]

    def negative(self) -> list[tuple[Arc, ...]]:
        return [c for c, s in zip(self.cycles, self.signs) if s is Sign.NEG]

    def __len__(self) -> int:
        return len(self.cycles)


def cycle_sign(cycle: Iterable[Arc]) -> Sign:
    negs = sum(1 for _, _, s in cycle if s is Sign.NEG)
    return Sign.NEG if negs % 2 else Sign.POS


def _vertex_cycles(g: SignedDigraph, limits: Limits) -> Iterator[list[int]]:
    count = 0
    for cyc in nx.simple_cycles(g.to_networkx()):
        count += 1
        if count > limits.max_cycles:
            raise TooLarge(f"more than {limits.max_cycles} simple cycles")
        yield cyc


def _rotate(cyc: list[int]) -> list[int]:
    k = cyc.index(min(cyc))
    return cyc[k:] + cyc[:k]


def enumerate_simple_cycles(g: SignedDigraph, limits: Limits = DEFAULT_LIMITS) -> CycleReport:
    """All simple cycles, expanded over parallel arcs of opposite sign.

    A vertex cycle ``v0 -> v1 -> ... -> v0`` whose hops carry both signs
    yields one signed cycle per sign choice. Output is sorted by length,
    then vertex sequence (rotated to start at the smallest id), then signs.
    """
    between = g.signs_between()
    found: list[tuple[Arc, ...]] = []
    for cyc in _vertex_cycles(g, limits):
        cyc = _rotate(cyc)
        hops = list(zip(cyc, cyc[1:] + cyc[:1]))
        for signs in product(*(between[h] for h in hops)):
            found.append(tuple((a, b, s) for (a, b), s in zip(hops, signs)))
            if len(found) > limits.max_cycles:
                raise TooLarge(f"more than {limits.max_cycles} signed cycles")
    found.sort(key=lambda c: (len(c), [a for a, _, _ in c], [s.value for _, _, s in c]))
    return CycleReport(tuple(found), tuple(cycle_sign(c) for c in found))


def has_positive_cycle(g: SignedDigraph, limits: Limits = DEFAULT_LIMITS) -> bool:
    return any(s is Sign.POS for s in enumerate_simple_cycles(g, limits).signs)


def has_negative_cycle(g: SignedDigraph, limits: Limits = DEFAULT_LIMITS) -> bool:
    return any(s is Sign.NEG for s in enumerate_simple_cycles(g, limits).signs)


def has_cycle(g: SignedDigraph) -> bool:
    return not nx.is_directed_acyclic_graph(g.to_networkx())


def _greedy_cover(sets: list[frozenset[int]]) -> set[int]:
    chosen: set[int] = set()
    remaining = list(sets)
    while remaining:
        counts = Counter(v for s in remaining for v in s)
        best = max(counts, key=lambda v: (counts[v], -v))
        chosen.add(best)
        remaining = [s for s in remaining if best not in s]
    return chosen


def min_hitting_set(sets: Iterable[frozenset[int]], names: tuple[str, ...]) -> frozenset[int]:
    """Exact minimum hitting set; ties go to the lexicographically smallest sorted name sequence.

    Sizes are tried in increasing order up to the greedy cover size; within a
    size, candidate sets are generated in lexicographic name order, so the
    first hit is the tie-break winner. Sets subsumed by smaller sets are
    dropped first since hitting the smaller one hits them too.
    """
    uniq = sorted(set(sets), key=len)
    if not uniq:
        return frozenset()
    if any(not s for s in uniq):
        raise ValueError("cannot hit an empty set")
    reduced: list[frozenset[int]] = []
    for s in uniq:
        if not any(r <= s for r in reduced):
            reduced.append(s)
    upper = _greedy_cover(reduced)
    candidates = sorted(set().union(*reduced), key=lambda v: names[v])
    for k in range(1, len(upper) + 1):
        for combo in combinations(candidates, k):
            chosen = set(combo)
            if all(chosen & s for s in reduced):
                return frozenset(combo)
    raise AssertionError("unreachable: greedy cover is a hitting set")


def min_positive_fvs(g: SignedDigraph, limits: Limits = DEFAULT_LIMITS) -> frozenset[int]:
    """A minimum vertex set meeting every positive cycle (exact)."""
    cycles = enumerate_simple_cycles(g, limits).positive()
    return min_hitting_set((frozenset(a for a, _, _ in c) for c in cycles), g.vertices)


@dataclass(frozen=True)
class Classification:
    tight: bool
    locally_stratified: bool
    well_founded_stratified: bool
    neg_cycle_free: bool
    pos_cycle_free: bool
    quasi_interpretation: bool
    positive: bool

    def to_json(self) -> dict[str, bool]:
        return dict(self.__dict__)


def classify(prog: Program, limits: Limits = DEFAULT_LIMITS) -> Classification:
    g = build_dg(prog)
    comps = sccs(g)
    internal_neg = [False] * len(comps.components)
    for a, b, s in g.arcs:
        if s is Sign.NEG and comps.component_of[a] == comps.component_of[b]:
            internal_neg[comps.component_of[a]] = True
    report = enumerate_simple_cycles(g, limits)
    return Classification(
        tight=not has_cycle(g.positive_part()),
        # a negative arc lies on some cycle iff both ends share an SCC
        locally_stratified=not any(internal_neg),
        well_founded_stratified=all(not internal_neg[i] for i in comps.sources()),
        neg_cycle_free=all(s is Sign.POS for s in report.signs),
        pos_cycle_free=all(s is Sign.NEG for s in report.signs),
        quasi_interpretation=prog.is_quasi(),
        positive=prog.is_positive(),
    )
