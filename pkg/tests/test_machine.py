import pytest
from hypothesis import given
from hypothesis import strategies as st

import reference as ref
from conftest import terms
from kfix.machine import Halted, OutOfFuel, clear_caches, run, run_index
from kfix.numbering import encode, pad, pair, smn
from kfix.terms import (
    DIVERGE, Add, Ifz, Monus, Mu, Num, Pad, ScopeError, Smn, Step, Var, X, eq,
    univ,
)


def test_spec_examples():
    assert run(Num(7), 3, 10) == Halted(7, 1)
    assert run(Mu(Num(1)), 0, 1000) == OutOfFuel(1000)
    assert run(Monus(Num(3), Num(5)), 0, 10) == Halted(0, 3)
    assert run_index(encode(X), 5, 10) == Halted(5, 1)
    assert run_index(encode(DIVERGE), 0, 50) == OutOfFuel(50)
    d = encode(Num(0))
    assert run_index(d, d, 10) == Halted(0, 1)


def test_rejects_ill_scoped():
    with pytest.raises(ScopeError):
        run(Var(0), 0, 10)


def test_ifz_is_lazy():
    assert run(Ifz(Num(0), Num(4), DIVERGE), 0, 100) == Halted(4, 3)
    assert run(Ifz(Num(1), DIVERGE, X), 9, 100) == Halted(9, 3)


def test_mu_cost():
    # 1 + sum_{k=0..3} (1 + cost of body); body = Monus(3, Var0) costs 3
    assert run(Mu(Monus(Num(3), Var(0))), 0, 100) == Halted(3, 1 + 4 * 4)


def test_smn_and_pad_runs():
    assert run_index(smn(encode(X), 5), 3, 10**4).value == pair(5, 3) == 39
    assert run_index(pad(encode(X), 7), 9, 100).value == 9
    p, a = encode(Add(X, Num(2))), 11
    out = run(Smn(Num(p), Num(a)), 0, 10**4)
    assert out.value == smn(p, a)
    assert out.ticks == 3 + len(bin(smn(p, a) + 1)) - 3
    assert run(Pad(Num(p), Num(4)), 0, 10**4).value == pad(p, 4)


@given(terms(), st.integers(0, 30), st.integers(0, 400))
def test_agrees_with_reference(t, x, fuel):
    clear_caches()
    expect = ref.evaluate(t, x, fuel)
    got = run(t, x, fuel)
    if expect is None:
        assert got == OutOfFuel(fuel)
    else:
        assert got == Halted(*expect)


@given(terms(), st.integers(0, 30), st.integers(1, 300))
def test_fuel_monotone_and_tight(t, x, fuel):
    out = run(t, x, fuel)
    if isinstance(out, Halted):
        assert run(t, x, fuel + 57) == out
        assert run(t, x, out.ticks) == out
        if out.ticks:
            assert run(t, x, out.ticks - 1) == OutOfFuel(out.ticks - 1)


def test_step_agrees_with_run_index():
    programs = [encode(t) for t in (X, Num(3), Add(X, X), DIVERGE, Mu(Monus(X, Var(0))),
                                    Ifz(X, Num(1), DIVERGE))]
    programs += list(range(40))
    for e in programs:
        for x in range(9):
            for s in range(9):
                got = run(Step(Num(e), Num(x), Num(s)), 0, 10**4).value
                r = run_index(e, x, s)
                want = r.value + 1 if isinstance(r, Halted) and r.ticks < s else 0
                assert got == want, (e, x, s)


def test_step_charges_inner_ticks():
    e = encode(Mu(Monus(X, Var(0))))
    inner = run_index(e, 4, 10**4).ticks
    assert run(Step(Num(e), Num(4), Num(1000)), 0, 10**5).ticks == 4 + inner
    assert run(Step(Num(e), Num(4), Num(inner)), 0, 10**5) == Halted(0, 4 + inner)


def test_memo_does_not_change_ticks():
    e = encode(Mu(Monus(X, Var(0))))
    t = Add(Step(Num(e), Num(6), Num(500)), Step(Num(e), Num(6), Num(500)))
    clear_caches()
    first = run(t, 0, 10**5)
    second = run(t, 0, 10**5)
    assert first == second == Halted(*ref.evaluate(t, 0, 10**5))


def test_eq_and_univ():
    for a in range(5):
        for b in range(5):
            assert (run(eq(Num(a), Num(b)), 0, 100).value == 0) == (a == b)
    double = encode(Add(X, X))
    for x in range(6):
        assert run(univ(Num(double), X), x, 10**6).value == 2 * x
    assert isinstance(run(univ(Num(encode(DIVERGE)), X), 0, 10**5), OutOfFuel)
