"""Goedel numbering of KF terms, pairing functions, and the host-side
parameterization (s-m-n) and padding operators.

A term serializes to a prefix-free bit string ``w``; its index is
``int("1" + w, 2) - 1``. That bijection orders programs length-first, then
lexicographically, so growing a literal never shrinks an index. The token
table is frozen in NUMBERING.md.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional, Tuple

import gmpy2

from .terms import (
    CHILDREN, DIVERGE, Add, Fst, Ifz, Input, Monus, Mu, Num, Pad, Pr, Smn,
    Snd, Step, Term, Var, X, is_well_formed, univ,
)

FORM_CODES = {
    Input: "0000",
    Num: "0001",
    Var: "0010",
    Add: "0011",
    Monus: "0100",
    Ifz: "0101",
    Pr: "0110",
    Fst: "0111",
    Snd: "1000",
    Mu: "1001",
    Step: "1010",
    Smn: "1011",
    Pad: "1100",
}
CODE_WIDTH = 4
_FORM_BY_CODE = {code: form for form, code in FORM_CODES.items()}


class Invalid:
    """Result of deserializing a string that is not a well-scoped program."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Invalid"


INVALID = Invalid()


# ---------------------------------------------------------------------------
# literals: Elias delta code of n + 1

def literal_code(n: int) -> str:
    m = n + 1
    length = m.bit_length()
    ll = length.bit_length()
    return "0" * (ll - 1) + bin(length)[2:] + bin(m)[3:]


def read_literal(w: str, pos: int) -> Tuple[Optional[int], int]:
    """Decode a literal starting at ``pos``; ``(None, pos)`` if malformed."""
    end = len(w)
    zeros = 0
    while pos + zeros < end and w[pos + zeros] == "0":
        zeros += 1
    pos += zeros
    if pos + zeros + 1 > end:
        return None, pos
    length = int(w[pos:pos + zeros + 1], 2)
    pos += zeros + 1
    if pos + length - 1 > end:
        return None, pos
    m = int("1" + w[pos:pos + length - 1], 2)
    return m - 1, pos + length - 1


# ---------------------------------------------------------------------------
# serialization

def serialize(t: Term) -> str:
    if not is_well_formed(t):
        raise ValueError("cannot serialize an ill-scoped term")
    return _serialize(t)


def _serialize(t: Term) -> str:
    out = []
    stack = [t]
    while stack:
        node = stack.pop()
        kind = type(node)
        out.append(FORM_CODES[kind])
        if kind is Num:
            out.append(literal_code(node.n))
        elif kind is Var:
            out.append(literal_code(node.i))
        else:
            fields = CHILDREN.get(kind, ())
            for f in reversed(fields):
                stack.append(getattr(node, f))
    return "".join(out)


def deserialize(w: str):
    """Parse a complete token string into a term, or return ``INVALID``.

    Total: malformed codes, trailing bits, truncation, and ill-scoped ``Var``
    all yield ``INVALID``.
    """
    pos = 0
    end = len(w)
    # frames: [form, collected children, arity]
    root = []
    frames = []
    depth = 0
    while True:
        if pos + CODE_WIDTH > end:
            return INVALID
        form = _FORM_BY_CODE.get(w[pos:pos + CODE_WIDTH])
        pos += CODE_WIDTH
        if form is None:
            return INVALID
        if form is Num or form is Var:
            value, pos = read_literal(w, pos)
            if value is None:
                return INVALID
            if form is Var and value >= depth:
                return INVALID
            node = Num(value) if form is Num else Var(value)
        elif form is Input:
            node = X
        else:
            if form is Mu:
                depth += 1
            frames.append([form, [], len(CHILDREN[form])])
            continue
        # close completed frames
        while frames:
            top = frames[-1]
            top[1].append(node)
            if len(top[1]) < top[2]:
                break
            frames.pop()
            node = top[0](*top[1])
            if top[0] is Mu:
                depth -= 1
        else:
            root.append(node)
        if not frames:
            break
    if pos != end:
        return INVALID
    return root[0]


# ---------------------------------------------------------------------------
# indices

def index_of_string(w: str) -> int:
    return int("1" + w, 2) - 1


def string_of_index(e: int) -> str:
    if e < 0:
        raise ValueError("indices are naturals")
    return bin(e + 1)[3:]


def token_length(e: int) -> int:
    """Length of the token string named by ``e``."""
    return (e + 1).bit_length() - 1


def encode(t: Term) -> int:
    return index_of_string(serialize(t))


@lru_cache(maxsize=8192)
def decode(e: int) -> Term:
    """Total: indices of invalid strings name the canonical diverger."""
    t = deserialize(string_of_index(e))
    return DIVERGE if t is INVALID else t


@lru_cache(maxsize=8192)
def canonical_string(e: int) -> str:
    """Serialization of ``decode(e)``; differs from ``e``'s own string only
    when ``e`` is invalid."""
    w = string_of_index(e)
    if deserialize(w) is INVALID:
        return _DIVERGE_STRING
    return w


_DIVERGE_STRING = _serialize(DIVERGE)


# ---------------------------------------------------------------------------
# pairing

def pair(a: int, b: int) -> int:
    """Cantor pairing, (a+b)(a+b+1)/2 + b."""
    if a < 0 or b < 0:
        raise ValueError("pair takes naturals")
    s = gmpy2.mpz(a) + b
    return int(s * (s + 1) // 2 + b)


@lru_cache(maxsize=4096)
def unpair(n: int) -> Tuple[int, int]:
    if n < 0:
        raise ValueError("unpair takes a natural")
    w = (gmpy2.isqrt(8 * gmpy2.mpz(n) + 1) - 1) // 2
    b = n - int(w * (w + 1) // 2)
    return int(w) - b, b


def paper_pair(x: int, y: int) -> int:
    """2**x * (2y + 1) - 1."""
    if x < 0 or y < 0:
        raise ValueError("paper_pair takes naturals")
    return (1 << x) * (2 * y + 1) - 1


def paper_unpair(n: int) -> Tuple[int, int]:
    if n < 0:
        raise ValueError("paper_unpair takes a natural")
    m = n + 1
    x = (m & -m).bit_length() - 1
    return x, ((m >> x) - 1) // 2


# ---------------------------------------------------------------------------
# s-m-n and padding

def smn_template(p: int, a: int) -> Term:
    """Program computing x -> psi_p(pair(a, x))."""
    return univ(Num(p), Pr(Num(a), X))


@lru_cache(maxsize=65536)
def smn(p: int, a: int) -> int:
    """Index of ``smn_template(p, a)``; psi_smn(p,a)(x) = psi_p(pair(a, x))."""
    if p < 0 or a < 0:
        raise ValueError("smn takes naturals")
    return index_of_string(_serialize(smn_template(p, a)))


def pad_template(e: int, k: int) -> Term:
    return Ifz(Num(0), decode(e), Num(k))


_PAD_HEAD = FORM_CODES[Ifz] + FORM_CODES[Num] + literal_code(0)


def pad(e: int, k: int) -> int:
    """Index of ``Ifz(Num(0), decode(e), Num(k))``: same function, bigger index."""
    if e < 0 or k < 0:
        raise ValueError("pad takes naturals")
    return index_of_string(_PAD_HEAD + canonical_string(e) + FORM_CODES[Num] + literal_code(k))


def match_smn(e: int) -> Optional[Tuple[int, int]]:
    """Recover ``(p, a)`` if ``e`` is an s-m-n index, else ``None``."""
    t = decode(e)
    try:
        p = t.a.e.n
        a = t.a.x.a.n
    except AttributeError:
        return None
    return (p, a) if smn(p, a) == e else None


def match_pad(e: int) -> Optional[Tuple[int, int]]:
    """Recover ``(inner, k)`` if ``e`` is a padded index, else ``None``."""
    t = decode(e)
    if not (isinstance(t, Ifz) and t.guard == Num(0) and isinstance(t.nonzero, Num)):
        return None
    inner = encode(t.zero)
    return (inner, t.nonzero.n) if pad(inner, t.nonzero.n) == e else None


# ---------------------------------------------------------------------------
# decimal I/O for very large indices (CPython's int<->str is quadratic and
# capped by default)

def to_decimal(n: int) -> str:
    return gmpy2.mpz(n).digits(10)


def from_decimal(s) -> int:
    if isinstance(s, int):
        return s
    s = str(s).strip()
    if not s.isdigit():
        raise ValueError(f"not a natural number: {s[:40]!r}")
    return int(gmpy2.mpz(s, 10))
