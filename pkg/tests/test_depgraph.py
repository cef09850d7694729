from itertools import combinations, permutations, product

import pytest

from lpbn.core import Limits, TooLarge
from lpbn.depgraph import (
    Sign,
    SignedDigraph,
    build_dg,
    build_pdg,
    classify,
    cycle_sign,
    enumerate_simple_cycles,
    has_cycle,
    min_hitting_set,
    min_positive_fvs,
    sccs,
)
from lpbn.generate import mixed_corpus
from lpbn.parser import parse_program

NEG, POS = Sign.NEG, Sign.POS


def brute_cycles(g: SignedDigraph):
    """Signed simple cycles by trying every vertex sequence that starts at its minimum."""
    between = g.signs_between()
    out = set()
    n = len(g.vertices)
    for k in range(1, n + 1):
        for seq in permutations(range(n), k):
            if seq[0] != min(seq):
                continue
            hops = list(zip(seq, seq[1:] + seq[:1]))
            if all(h in between for h in hops):
                for signs in product(*(between[h] for h in hops)):
                    out.add(tuple((a, b, s) for (a, b), s in zip(hops, signs)))
    return out


def brute_fvs_size(g: SignedDigraph):
    pos = [frozenset(a for a, _, _ in c) for c, s in zip(*_cycles(g)) if s is POS]
    n = len(g.vertices)
    for k in range(n + 1):
        for combo in combinations(range(n), k):
            if all(set(combo) & c for c in pos):
                return k


def _cycles(g):
    r = enumerate_simple_cycles(g)
    return r.cycles, r.signs


def test_p1_graph(p1):
    g = build_dg(p1)
    assert g.named_arcs() == {("p", "q", "-"), ("q", "p", "-"), ("q", "r", "+")}
    assert build_pdg(p1).named_arcs() == {("q", "r", "+")}
    comps = sccs(g)
    assert [sorted(p1.atoms[v] for v in c) for c in comps.components] == [["p", "q"], ["r"]]
    rep = enumerate_simple_cycles(g)
    assert len(rep) == 1 and rep.signs == (POS,)
    assert min_positive_fvs(g) == {p1.index("p")}


def test_p1_classification(p1):
    c = classify(p1)
    assert c.tight and not c.locally_stratified and not c.well_founded_stratified
    assert c.neg_cycle_free and not c.pos_cycle_free


def test_hidden_loop_graph(hidden_loop):
    g = build_dg(hidden_loop)
    assert len(sccs(g).components) == 1
    rep = enumerate_simple_cycles(g)
    assert rep.signs == (NEG, NEG)
    assert min_positive_fvs(g) == frozenset()
    c = classify(hidden_loop)
    assert c.pos_cycle_free and not c.neg_cycle_free and c.tight


@pytest.mark.parametrize(
    "text, tight, ls",
    [
        ("p :- q.\nq :- p.\n", False, True),
        ("p :- not p.\n", True, False),
        ("p.\nq :- p.\n", True, True),
    ],
)
def test_small_classifications(text, tight, ls):
    c = classify(parse_program(text))
    assert (c.tight, c.locally_stratified) == (tight, ls)


def test_well_founded_stratified_needs_all_sources_clean():
    # two source SCCs: {a} is clean, {b} has an odd self-loop
    prog = parse_program("a :- a.\nb :- not b.\nc :- a, b.\n")
    assert not classify(prog).well_founded_stratified
    prog = parse_program("a :- a.\nb.\nc :- not c, a.\n")
    c = classify(prog)
    assert c.well_founded_stratified and not c.locally_stratified


def test_mixed_sign_parallel_arcs_give_two_cycles():
    prog = parse_program("p :- q, not q.\nq :- p.\n")
    rep = enumerate_simple_cycles(build_dg(prog))
    assert sorted(s.value for s in rep.signs) == ["+", "-"]
    assert not classify(prog).neg_cycle_free and not classify(prog).pos_cycle_free


def test_cycles_match_brute_force_on_corpus():
    for _, prog in mixed_corpus(200, seed=11, max_atoms=6):
        g = build_dg(prog)
        rep = enumerate_simple_cycles(g)
        assert set(rep.cycles) == brute_cycles(g)
        assert len(set(rep.cycles)) == len(rep.cycles)
        assert all(cycle_sign(c) is s for c, s in zip(rep.cycles, rep.signs))


def test_fvs_exact_against_subsets():
    for _, prog in mixed_corpus(300, seed=5, max_atoms=8):
        g = build_dg(prog)
        fvs = min_positive_fvs(g)
        assert len(fvs) == brute_fvs_size(g)
        pos = [frozenset(a for a, _, _ in c) for c in enumerate_simple_cycles(g).positive()]
        assert all(fvs & c for c in pos)


def test_hitting_set_tie_break_is_name_order():
    names = ("b", "a", "c")
    # {b,a} and {a,c}: the single vertex a hits both
    assert min_hitting_set([frozenset({0, 1}), frozenset({1, 2})], names) == {1}
    # {b} or {a}?  disjoint singletons force both
    assert min_hitting_set([frozenset({0}), frozenset({1})], names) == {0, 1}
    # {b,c} twice: b and c tie, name order picks b
    assert min_hitting_set([frozenset({0, 2})], names) == {0}
    with pytest.raises(ValueError):
        min_hitting_set([frozenset()], names)


def test_classify_invariants_on_corpus():
    for _, prog in mixed_corpus(300, seed=3):
        c = classify(prog)
        if c.locally_stratified:
            assert c.neg_cycle_free and c.well_founded_stratified
        if c.pos_cycle_free:
            assert c.tight
        assert c.tight == (not has_cycle(build_pdg(prog)))


def test_cycle_limit():
    prog = parse_program("a :- not b.\nb :- not a.\nb :- not c.\nc :- not b.\n")
    with pytest.raises(TooLarge):
        enumerate_simple_cycles(build_dg(prog), Limits(max_cycles=1))


def test_dot_is_deterministic(p1):
    d1 = build_dg(p1).to_dot()
    d2 = build_dg(parse_program("r :- q.\nq :- not p.\np :- not q.\n")).to_dot()
    assert "style=dashed" in d1
    assert d1 == build_dg(p1).to_dot()
    assert sorted(d1.splitlines()[1:]) == sorted(d2.splitlines()[1:])
