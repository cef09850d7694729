import pytest

from lpbn.core import TV, DomainMismatch, Interp3
from lpbn.formula import FALSE, TRUE, U, And, Not, Or, Var, compile2, conj, disj, eval2, eval3, support, to_text

ATOMS = ("p", "q")


def I(s):
    return Interp3.from_string(ATOMS, s)


def test_kleene_tables():
    f = conj([Var(0), Not(Var(1))])
    assert eval3(I("tu"), f) is TV.U
    assert eval3(I("tf"), f) is TV.T
    assert eval3(I("ff"), f) is TV.F
    assert eval3(I("uu"), disj([Var(0), Not(Var(0))])) is TV.U
    assert eval3(I("ff"), U) is TV.U


def test_empty_connectives():
    assert conj([]) == TRUE and disj([]) == FALSE
    assert eval3(I("ff"), conj([])) is TV.T
    assert eval3(I("tt"), disj([])) is TV.F
    assert conj([Var(1)]) == Var(1)


def test_unknown_atom():
    with pytest.raises(DomainMismatch):
        eval3(I("tt"), Var(5))


def test_eval2_agrees_with_compiled_and_eval3():
    f = Or((And((Var(0), Not(Var(1)))), Not(Var(0))))
    g = compile2(f)
    for s in range(4):
        i3 = Interp3.from_masks(ATOMS, 3, s)
        assert eval2(s, f) == g(s) == (eval3(i3, f) is TV.T)


def test_support_and_text():
    f = Or((And((Var(0), Not(Var(1)))), FALSE))
    assert support(f) == {0, 1}
    assert to_text(conj([Var(0), Not(Var(1))]), ATOMS) == "p & !q"
    assert to_text(conj([Var(0), Not(Var(1))]), ATOMS, style="math") == "p ∧ ¬q"
