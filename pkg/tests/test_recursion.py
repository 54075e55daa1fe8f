import pytest

from kfix.machine import Halted, OutOfFuel, run_index
from kfix.numbering import decode, encode, match_pad, pair, smn
from kfix.recursion import (
    CONSTANT_TARGET, FamilyHandle, apply_transform, constant_transform, fix, identity_transform,
    literal_transform, pad_literal_transform, padded_family,
)
from kfix.terms import DIVERGE, X
from kfix.verifier import CheckBudget, check_extensional

INPUTS = tuple(range(11))


def fixed_point_report(f_obj):
    e = fix(f_obj)
    image = apply_transform(f_obj, e)
    return e, image, check_extensional(e, image, CheckBudget(fuel=10**6, samples=INPUTS))


def test_constant_transform():
    e, image, report = fixed_point_report(constant_transform(CONSTANT_TARGET))
    assert image == CONSTANT_TARGET and report.status == "pass"
    assert run_index(e, 3, 10**6).value == 4


def test_literal_transform_gives_a_quine():
    e, image, report = fixed_point_report(literal_transform())
    assert report.status == "pass"
    assert all(run_index(e, x, 10**6).value == e for x in (0, 5))


def test_pad_literal_transform():
    e, image, report = fixed_point_report(pad_literal_transform())
    assert report.status == "pass"
    assert match_pad(image) is not None
    assert run_index(e, 1, 10**6).value == e


def test_identity_fixed_point_diverges():
    # every index is a fixed point of the identity; fix picks a divergent one
    e = fix(identity_transform())
    assert isinstance(run_index(e, 0, 10**5), OutOfFuel)


def test_apply_transform_requires_halting():
    with pytest.raises(RuntimeError):
        apply_transform(encode(DIVERGE), 0, fuel=100)


def test_padded_family():
    fam = padded_family(constant_transform(CONSTANT_TARGET))
    members = [fam.member(0, k) for k in range(6)]
    assert members == sorted(set(members))
    for y in members[:3]:
        assert run_index(y, 2, 10**6).value == 3
    assert FamilyHandle.from_json(fam.to_json()) == fam
    assert fam.rank(0, members[4]) == 4
    assert fam.rank(0, members[4] + 1) is None


def test_h_enumerates_the_family():
    fam = padded_family(constant_transform(42))
    h0 = fam.h(0)
    for k in range(3):
        assert isinstance(run_index(h0, fam.member(0, k), 10**6), Halted)
    m0 = fam.member(0, 0)
    for y in (0, 1, m0 - 1, m0 + 1, fam.member(0, 1) - 1, fam.member(1, 0)):
        assert isinstance(run_index(h0, y, 10**6), OutOfFuel)
    assert run_index(fam.h_obj, 7, 10**6).value == fam.h(7)


def test_fix_shape():
    d_e = fix(constant_transform(0))
    t = decode(d_e)
    assert smn(t.a.e.n, t.a.x.a.n) == d_e
