import pytest

from kfix.terms import (
    DIVERGE, Add, Fst, Ifz, Monus, Mu, Num, Pr, ScopeError, Snd, Var, X, check,
    eq, halt_if_zero, is_well_formed, shift, size, univ, validate,
)


def test_naturals_only():
    with pytest.raises(ValueError):
        Num(-1)
    with pytest.raises(ValueError):
        Var(-2)


def test_scope():
    assert is_well_formed(Mu(Var(0)))
    assert not is_well_formed(Var(0))
    assert not is_well_formed(Mu(Var(1)))
    err = validate(Add(Num(1), Mu(Add(Var(0), Var(3)))))
    assert isinstance(err, ScopeError)
    assert err.var == Var(3) and err.depth == 1
    with pytest.raises(ScopeError):
        check(Var(0))


def test_shift_leaves_bound_vars():
    t = Mu(Add(Var(0), Var(1)))
    assert shift(t) == Mu(Add(Var(0), Var(2)))
    assert shift(Var(0), 2) == Var(2)


def test_macros_shape():
    assert DIVERGE == Mu(Num(1))
    assert eq(X, Num(3)) == Add(Monus(X, Num(3)), Monus(Num(3), X))
    assert halt_if_zero(X) == Ifz(X, Num(0), DIVERGE)


def test_univ_shifts_under_its_binder():
    # free vars of the operands must still point at the caller's binders
    t = Mu(univ(Var(0), Fst(Var(0))))
    check(t)
    assert size(univ(X, X)) > size(Pr(X, X))


def test_size_counts_nodes():
    assert size(X) == 1
    assert size(Add(Num(1), Snd(X))) == 4
