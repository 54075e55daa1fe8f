from hypothesis import given
from hypothesis import strategies as st

from kfix.permutation import LiteralPermutation, RankedPermutation


def sparse(n):
    return 7 * n * n + 3 * n + 2


@given(st.integers(0, 3000))
def test_roundtrip(z):
    p = RankedPermutation(sparse)
    assert p.inverse(p.apply(z)) == z
    assert p.apply(p.inverse(z)) == z


def test_family_fixed_on_multiples_of_three():
    p = RankedPermutation(sparse)
    for n in range(0, 60, 3):
        assert p.apply(sparse(n)) == n


def test_complement_indexing():
    p = RankedPermutation(sparse)
    non_members = [z for z in range(200) if z not in {sparse(n) for n in range(20)}]
    assert [p.family.complement(i) for i in range(50)] == non_members[:50]


def test_literal_map_misses_targets():
    lit = LiteralPermutation(sparse)
    domain = set(range(600)) | {sparse(n) for n in range(600)}
    image = {lit.apply(z) for z in domain}
    assert 1 not in image  # d_0 needs n = 0 in D
    ranked = RankedPermutation(sparse)
    assert set(range(150)) <= {ranked.apply(z) for z in domain}
