from hypothesis import given
from hypothesis import strategies as st

from conftest import terms
from kfix.enumeration import (
    In, Snapshot, Unknown, maxes, w_member_bounded, w_snapshot,
)
from kfix.numbering import encode
from kfix.terms import DIVERGE, Ifz, Monus, Mu, Num, Var, X, eq, halt_if_zero

IDENTITY = encode(X)
DIVERGER = encode(DIVERGE)


def test_snapshots():
    assert w_snapshot(IDENTITY, 0).members == []
    assert w_snapshot(IDENTITY, 3).members == [0, 1, 2]
    assert w_snapshot(DIVERGER, 50).members == []
    slow = encode(Mu(Monus(X, Var(0))))  # ticks grow with the input
    members = w_snapshot(slow, 30).members
    assert members and members == sorted(members) and members[-1] < 29


def test_bounded_membership():
    assert w_member_bounded(IDENTITY, 4, 10) == In(1)
    assert w_member_bounded(DIVERGER, 4, 10**6) is Unknown


def test_maxes():
    assert maxes(DIVERGER, 100) == []
    assert maxes(IDENTITY, 5) == [1, 2, 3, 4]
    two_point = encode(Ifz(eq(X, Num(5)), Num(0), halt_if_zero(eq(X, Num(9)))))
    assert maxes(two_point, 40) == [5, 9]


def test_snapshot_json():
    snap = w_snapshot(IDENTITY, 4)
    assert snap.to_json() == {"e": "15", "s": "4", "members": ["0", "1", "2", "3"]}
    assert Snapshot.from_json(snap.to_json()) == snap


@given(terms(max_leaves=8))
def test_monotone_stages(t):
    e = encode(t)
    prev = set()
    for s in range(0, 25, 3):
        cur = set(w_snapshot(e, s).members)
        assert prev <= cur
        for y in cur:
            r = w_member_bounded(e, y, s)
            assert isinstance(r, In) and r.ticks < s
        prev = cur
    m = maxes(e, 25)
    assert m == sorted(set(m))


@given(terms(max_leaves=8), st.integers(0, 20), st.integers(1, 200))
def test_in_is_monotone_in_fuel(t, y, fuel):
    e = encode(t)
    if isinstance(w_member_bounded(e, y, fuel), In):
        assert w_member_bounded(e, y, fuel * 3) == w_member_bounded(e, y, fuel)
