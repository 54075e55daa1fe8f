import json

import pytest

from kfix import constructions as C
from kfix.enumeration import In, Unknown, w_member_bounded
from kfix.machine import Halted, run_index
from kfix.numbering import encode
from kfix.terms import Mu, Num, X

RUN = 10**7
PROBE = 10**6


def halts(e, y, fuel=RUN):
    return isinstance(run_index(e, y, fuel), Halted)


def test_reflexive_singleton():
    e = C.reflexive_singleton()
    assert halts(e, e)
    for y in (0, 1, e - 1, e + 1, 2 * e):
        assert not halts(e, y, PROBE)


def test_singleton_domain_chain():
    chain = [encode(X)]
    for _ in range(5):
        chain.append(C.singleton_domain(chain[-1]))
    assert isinstance(w_member_bounded(C.singleton_domain(7), 7, 10**4), In)
    for k in range(1, 5):
        assert halts(chain[k + 1], chain[k], 10**5)
        assert not halts(chain[k + 1], chain[k] + 1, 10**5)


@pytest.mark.parametrize("depth", [1, 4, 16])
def test_chain_elements_increase(depth):
    h = C.thm_main(C.DIRECT, depth)
    assert len(h.elements) == depth + 1
    assert h.elements == sorted(set(h.elements))


def test_chain_membership():
    el = C.thm_main(C.DIRECT, 4).elements
    for n in range(4):
        assert halts(el[n], el[n + 1])
        for m in range(5):
            if m != n + 1:
                assert not halts(el[n], el[m], PROBE)


def test_tail_sets():
    el = C.thm_two(C.DIRECT, 5).elements
    assert halts(el[1], el[2]) and halts(el[1], el[3]) and halts(el[0], el[5])
    assert not halts(el[1], el[0], PROBE) and not halts(el[1], el[1], PROBE)
    assert not halts(el[2], el[3] + 1, PROBE)


def test_value_seq():
    el = C.value_seq(C.DIRECT, 7).elements
    for n in range(4):
        for m in range(4):
            assert run_index(el[n], m, RUN).value == el[n + m + 1]


def test_finite_cycle():
    for n in (1, 3):
        el = C.finite_cycle(n)
        assert len(el) == n + 1 and el == sorted(el)
        for i in range(n + 1):
            assert halts(el[i], el[(i + 1) % (n + 1)])
            assert not halts(el[i], el[i], PROBE)
    with pytest.raises(ValueError):
        C.finite_cycle(0)


def test_q_main_and_q_two_on_small_sets():
    e = C.two_point_program(5, 9)
    expect = {3: [5], 6: [9], 10: []}
    for x, want in expect.items():
        got = [y for y in range(14) if halts(C.q_main(e, x), y)]
        assert got == want
    assert [y for y in range(14) if halts(C.q_two(e, 0), y)] == [5, 9]
    assert [y for y in range(14) if halts(C.q_two(e, 5), y)] == [9]
    d = C.DIVERGER
    assert not any(halts(C.q_main(d, 0), y, 10**5) for y in range(5))


def test_k_set():
    k = C.k_set()
    n0, n1 = C.known_k_members()
    assert n0 == encode(X) and n1 == encode(Num(0))
    assert isinstance(w_member_bounded(k, n1, 10**5), In)
    assert isinstance(w_member_bounded(k, n0, 10**5), In)
    assert w_member_bounded(k, encode(Mu(Num(1))), PROBE) is Unknown


def test_noncomputable_seq():
    h = C.noncomputable_seq()
    a, b = h.elements
    assert a < b
    assert halts(a, b, 10**8)
    assert not halts(a, a, PROBE)
    assert not halts(b, a, PROBE)


def test_self_constructing_members():
    h = C.self_constructing(C.multiples_of(6))
    xs = [h.c(j) for j in (0, 6, 12)]
    for x in xs:
        for y in xs:
            assert halts(x, y)
        assert not halts(x, h.c(3), PROBE)  # 3 is not a multiple of 6
        assert not halts(x, h.c(1), PROBE)


def test_finite_self_constructing_set():
    h = C.self_constructing(C.singleton_domain(0))
    x = h.c(0)
    assert halts(x, x)
    assert not halts(x, h.c(3), PROBE)


def test_promise_checked():
    with pytest.raises(C.PromiseViolation):
        C.self_constructing(encode(X))


def test_tot_reduction():
    red = C.tot_reduction()
    a = [red.a(n) for n in range(4)]
    assert a == sorted(a)
    total = red.f(encode(Num(0)))
    assert all(halts(total, a[n]) for n in range(3))
    empty = red.f(C.DIVERGER)
    assert not any(halts(empty, a[n], PROBE) for n in range(3))
    one = red.f(C.singleton_domain(1))
    assert halts(one, a[1]) and not halts(one, a[0], PROBE)
    assert halts(a[1], a[2])


def test_handle_json_roundtrip():
    for h in (C.thm_main(C.DIRECT, 3), C.cycle_handle(2), C.noncomputable_seq()):
        text = json.dumps(h.to_json(), sort_keys=True)
        back = C.SeqHandle.from_json(json.loads(text))
        assert back.elements == h.elements
        assert [back.element(n) for n in range(len(h.elements))] == h.elements
    s = C.self_constructing(C.multiples_of(3))
    back = C.SelfConHandle.from_json(json.loads(json.dumps(s.to_json())))
    assert back.c(5) == s.c(5)
    with pytest.raises(ValueError):
        C.SeqHandle.from_json({"kind": "nope", "mode": "direct"})


def test_faithful_main_pipeline_shape():
    h = C.thm_main(C.FAITHFUL, 2)
    pipe = h.pipeline
    assert h.generator == pipe.e
    assert h.elements == [pipe.member(k) for k in range(3)]
    assert h.elements == sorted(h.elements)
    back = C.SeqHandle.from_json(json.loads(json.dumps(h.to_json())))
    assert back.pipeline == pipe
