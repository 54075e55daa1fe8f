"""Fuel-bounded evaluator for KF with the normative tick count.

Cost model (ticks):
  * ``Num``, ``X``, ``Var``: 1
  * ``Add``, ``Monus``, ``Pr``, ``Fst``, ``Snd``: 1 + children
  * ``Ifz``: 1 + guard + taken branch
  * ``Mu(b)``: 1 + sum over k = 0..n of (1 + cost(b with Var(0) = k))
  * ``Step(e, x, s)``: 1 + children + ticks of the inner run, capped at s
  * ``Smn``, ``Pad``: 1 + children + token length of the built program

Terms are compiled to closures. Inner runs started by ``Step`` are memoized
per (index, input); the memo stores exact outcomes, so tick counts stay
normative while repeated stage searches cost the host almost nothing. A
``Mu`` whose body ignores its own counter and is nonzero is reported as
divergent at once, without burning the remaining fuel one tick at a time.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from . import numbering
from .terms import (
    Add, Fst, Ifz, Input, Monus, Mu, Num, Pad, Pr, Smn, Snd, Step, Term, Var,
    check, mentions_var,
)

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


@dataclass(frozen=True)
class Halted:
    value: int
    ticks: int

    @property
    def halted(self) -> bool:
        return True


@dataclass(frozen=True)
class OutOfFuel:
    fuel: int

    @property
    def halted(self) -> bool:
        return False


Outcome = Union[Halted, OutOfFuel]


class _Exhausted(Exception):
    pass


class _Diverges(_Exhausted):
    """Raised when divergence is certain regardless of fuel."""


class _Meter:
    __slots__ = ("used", "limit")

    def __init__(self, limit: int):
        self.used = 0
        self.limit = limit


# ---------------------------------------------------------------------------
# memo of inner runs: (index, input) -> ("h", value, ticks) | ("f", fuel) | ("d",)

_RUNS: dict = {}
_RUNS_MAX = 400_000


def clear_caches() -> None:
    _RUNS.clear()
    compile_index.cache_clear()


def _remember(key, entry) -> None:
    if len(_RUNS) >= _RUNS_MAX:
        _RUNS.clear()
    _RUNS[key] = entry


def _execute(fn, x: int, fuel: int):
    m = _Meter(fuel)
    try:
        v = fn((), x, m)
    except _Diverges:
        return ("d",)
    except _Exhausted:
        return ("f", fuel)
    return ("h", v, m.used)


def _inner_step(e: int, x: int, s: int, m: _Meter) -> int:
    """Body of ``Step`` after its operands are evaluated."""
    if s == 0:
        return 0
    need = s - 1
    key = (e, x)
    entry = _RUNS.get(key)
    known = -1
    if entry is not None:
        tag = entry[0]
        if tag == "h":
            if entry[2] <= need:
                _charge(m, entry[2])
                return entry[1] + 1
            _charge(m, s)
            return 0
        known = need if tag == "d" else entry[1]
    if known >= need:
        _charge(m, s)
        return 0
    fn = compile_index(e)
    while True:
        rem = m.limit - m.used
        if known >= rem:
            raise _Exhausted()
        fuel = min(need, max(2 * known + 1, 64), rem)
        entry = _execute(fn, x, fuel)
        if entry[0] == "d":
            _remember(key, entry)
            _charge(m, s)
            return 0
        if entry[0] == "h":
            _remember(key, entry)
            _charge(m, entry[2])
            return entry[1] + 1
        _remember(key, entry)
        known = fuel
        if fuel >= need:
            _charge(m, s)
            return 0


def _charge(m: _Meter, n: int) -> None:
    m.used += n
    if m.used > m.limit:
        raise _Exhausted()


# ---------------------------------------------------------------------------
# compilation

def compile_term(t: Term):
    kind = type(t)
    if kind is Num:
        n = t.n

        def f(env, x, m):
            m.used += 1
            if m.used > m.limit:
                raise _Exhausted()
            return n
    elif kind is Input:
        def f(env, x, m):
            m.used += 1
            if m.used > m.limit:
                raise _Exhausted()
            return x
    elif kind is Var:
        i = t.i

        def f(env, x, m):
            m.used += 1
            if m.used > m.limit:
                raise _Exhausted()
            return env[i]
    elif kind is Add:
        fa, fb = compile_term(t.a), compile_term(t.b)

        def f(env, x, m):
            m.used += 1
            if m.used > m.limit:
                raise _Exhausted()
            return fa(env, x, m) + fb(env, x, m)
    elif kind is Monus:
        fa, fb = compile_term(t.a), compile_term(t.b)

        def f(env, x, m):
            m.used += 1
            if m.used > m.limit:
                raise _Exhausted()
            d = fa(env, x, m) - fb(env, x, m)
            return d if d > 0 else 0
    elif kind is Ifz:
        fg, fz, fn = compile_term(t.guard), compile_term(t.zero), compile_term(t.nonzero)

        def f(env, x, m):
            m.used += 1
            if m.used > m.limit:
                raise _Exhausted()
            if fg(env, x, m) == 0:
                return fz(env, x, m)
            return fn(env, x, m)
    elif kind is Pr:
        fa, fb = compile_term(t.a), compile_term(t.b)
        pair = numbering.pair

        def f(env, x, m):
            m.used += 1
            if m.used > m.limit:
                raise _Exhausted()
            return pair(fa(env, x, m), fb(env, x, m))
    elif kind is Fst or kind is Snd:
        fa = compile_term(t.a)
        pos = 0 if kind is Fst else 1
        unpair = numbering.unpair

        def f(env, x, m):
            m.used += 1
            if m.used > m.limit:
                raise _Exhausted()
            return unpair(fa(env, x, m))[pos]
    elif kind is Mu:
        fb = compile_term(t.body)
        if mentions_var(t.body, 0):
            def f(env, x, m):
                m.used += 1
                if m.used > m.limit:
                    raise _Exhausted()
                k = 0
                while True:
                    m.used += 1
                    if m.used > m.limit:
                        raise _Exhausted()
                    if fb((k,) + env, x, m) == 0:
                        return k
                    k += 1
        else:
            def f(env, x, m):
                m.used += 2
                if m.used > m.limit:
                    raise _Exhausted()
                if fb((0,) + env, x, m) == 0:
                    return 0
                # every later iteration sees the same value
                raise _Diverges()
    elif kind is Step:
        fe, fx, fs = compile_term(t.e), compile_term(t.x), compile_term(t.s)

        def f(env, x, m):
            m.used += 1
            if m.used > m.limit:
                raise _Exhausted()
            e = fe(env, x, m)
            xv = fx(env, x, m)
            s = fs(env, x, m)
            return _inner_step(e, xv, s, m)
    elif kind is Smn or kind is Pad:
        build = numbering.smn if kind is Smn else numbering.pad
        fa, fb = (compile_term(t.p), compile_term(t.a)) if kind is Smn else (
            compile_term(t.e), compile_term(t.k))
        token_length = numbering.token_length

        def f(env, x, m):
            m.used += 1
            if m.used > m.limit:
                raise _Exhausted()
            r = build(fa(env, x, m), fb(env, x, m))
            _charge(m, token_length(r))
            return r
    else:
        raise TypeError(f"not a term: {t!r}")
    return f


@lru_cache(maxsize=4096)
def compile_index(e: int):
    return compile_term(numbering.decode(e))


# ---------------------------------------------------------------------------
# public entry points

def _check_naturals(x: int, fuel: int) -> None:
    if x < 0:
        raise ValueError("input must be a natural")
    if fuel < 0:
        raise ValueError("fuel must be a natural")


def _outcome(entry, fuel: int) -> Outcome:
    if entry[0] == "h" and entry[2] <= fuel:
        return Halted(entry[1], entry[2])
    return OutOfFuel(fuel)


def run(t: Term, x: int, fuel: int) -> Outcome:
    """Run ``t`` on input ``x`` with at most ``fuel`` ticks."""
    check(t)
    _check_naturals(x, fuel)
    return _outcome(_execute(compile_term(t), x, fuel), fuel)


def run_index(e: int, x: int, fuel: int) -> Outcome:
    """``run(decode(e), x, fuel)``, sharing the inner-run memo."""
    _check_naturals(x, fuel)
    key = (e, x)
    entry = _RUNS.get(key)
    if entry is not None:
        tag = entry[0]
        if tag == "h" or tag == "d" or entry[1] >= fuel:
            return _outcome(entry, fuel)
    entry = _execute(compile_index(e), x, fuel)
    _remember(key, entry)
    return _outcome(entry, fuel)
