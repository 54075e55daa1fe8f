"""Slow, independent re-implementations used as test oracles.

Written from the textual definitions only: recursive, no caching, no
shared code with the package beyond the term dataclasses.
"""

from kfix.terms import (
    Add, Fst, Ifz, Input, Monus, Mu, Num, Pad, Pr, Smn, Snd, Step, Var,
)

CODES = [
    (Input, "0000"), (Num, "0001"), (Var, "0010"), (Add, "0011"),
    (Monus, "0100"), (Ifz, "0101"), (Pr, "0110"), (Fst, "0111"),
    (Snd, "1000"), (Mu, "1001"), (Step, "1010"), (Smn, "1011"), (Pad, "1100"),
]
CODE = dict(CODES)
FORM = {c: f for f, c in CODES}
ARITY = {Add: 2, Monus: 2, Ifz: 3, Pr: 2, Fst: 1, Snd: 1, Mu: 1, Step: 3, Smn: 2, Pad: 2}


def elias_delta(m):
    """Elias delta code of m >= 1."""
    n = len(bin(m)) - 2
    ln = len(bin(n)) - 2
    return "0" * (ln - 1) + bin(n)[2:] + bin(m)[3:]


def ser(t):
    if isinstance(t, Input):
        return CODE[Input]
    if isinstance(t, Num):
        return CODE[Num] + elias_delta(t.n + 1)
    if isinstance(t, Var):
        return CODE[Var] + elias_delta(t.i + 1)
    kids = [getattr(t, f) for f in t.__dataclass_fields__]
    return CODE[type(t)] + "".join(ser(k) for k in kids)


def enc(t):
    return int("1" + ser(t), 2) - 1


def cantor(a, b):
    return (a + b) * (a + b + 1) // 2 + b


def uncantor(n):
    w = 0
    while (w + 1) * (w + 2) // 2 <= n:
        w += 1
    b = n - w * (w + 1) // 2
    return w - b, b


def dec_literal(w, i):
    z = 0
    while i < len(w) and w[i] == "0":
        z += 1
        i += 1
    if i + z + 1 > len(w):
        return None
    n = int(w[i:i + z + 1], 2)
    i += z + 1
    if i + n - 1 > len(w):
        return None
    m = int("1" + w[i:i + n - 1], 2)
    return m - 1, i + n - 1


def parse(w, i=0):
    code = w[i:i + 4]
    if len(code) < 4 or code not in FORM:
        return None
    form = FORM[code]
    i += 4
    if form is Input:
        return Input(), i
    if form in (Num, Var):
        r = dec_literal(w, i)
        if r is None:
            return None
        return form(r[0]), r[1]
    kids = []
    for _ in range(ARITY[form]):
        r = parse(w, i)
        if r is None:
            return None
        kids.append(r[0])
        i = r[1]
    return form(*kids), i


def dec(e):
    w = bin(e + 1)[3:]
    r = parse(w)
    if r is None or r[1] != len(w):
        return Mu(Num(1))
    return r[0]


class Out(Exception):
    pass


def smn_ref(p, a):
    from kfix.terms import univ
    return enc(univ(Num(p), Pr(Num(a), Input())))


def pad_ref(e, k):
    return enc(Ifz(Num(0), dec(e), Num(k)))


def evaluate(t, x, fuel):
    """(value, ticks) or None when fuel runs out."""
    used = [0]

    def tick(n=1):
        used[0] += n
        if used[0] > fuel:
            raise Out

    def ev(t, env):
        tick()
        if isinstance(t, Num):
            return t.n
        if isinstance(t, Input):
            return x
        if isinstance(t, Var):
            return env[t.i]
        if isinstance(t, Add):
            return ev(t.a, env) + ev(t.b, env)
        if isinstance(t, Monus):
            return max(0, ev(t.a, env) - ev(t.b, env))
        if isinstance(t, Ifz):
            return ev(t.zero, env) if ev(t.guard, env) == 0 else ev(t.nonzero, env)
        if isinstance(t, Pr):
            return cantor(ev(t.a, env), ev(t.b, env))
        if isinstance(t, Fst):
            return uncantor(ev(t.a, env))[0]
        if isinstance(t, Snd):
            return uncantor(ev(t.a, env))[1]
        if isinstance(t, Mu):
            k = 0
            while True:
                tick()
                if ev(t.body, [k] + env) == 0:
                    return k
                k += 1
        if isinstance(t, Step):
            e, xv, s = ev(t.e, env), ev(t.x, env), ev(t.s, env)
            if s == 0:
                return 0
            inner = evaluate(dec(e), xv, s - 1)
            if inner is None:
                tick(s)
                return 0
            tick(inner[1])
            return inner[0] + 1
        if isinstance(t, Smn):
            r = smn_ref(ev(t.p, env), ev(t.a, env))
        else:
            r = pad_ref(ev(t.e, env), ev(t.k, env))
        tick(len(bin(r + 1)) - 3)
        return r

    try:
        v = ev(t, [])
    except Out:
        return None
    return v, used[0]
