"""Kleene fixed points and padded fixed-point families.

Transformations are object programs, not host callables: the diagonal
program has to apply them to its own index at run time. Multi-argument
programs take Cantor-paired input, and ``smn(p, a)`` always means
``x -> psi_p(pair(a, x))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict

from .machine import Halted, run_index
from .numbering import encode, from_decimal, pad, pair, smn, to_decimal
from .terms import (
    Add, Fst, Monus, Mu, Num, Pad, Pr, Smn, Snd, Term, Var, X, halt_if_zero, univ,
)

# program returning the first component of its input; smn(FST, a) is a
# program that ignores its input and returns a
FST = encode(Fst(X))


def diagonal_term(f_obj: int) -> Term:
    """On ``pair(d, z)``: run f on smn(d, d), then run the result on z."""
    return univ(univ(Num(f_obj), Smn(Fst(X), Fst(X))), Snd(X))


def fix(f_obj: int) -> int:
    """Index e with psi_e = psi_{f(e)}, where f is the program ``f_obj``.

    Only extensional: e and f(e) differ as indices.
    """
    d = encode(diagonal_term(f_obj))
    return smn(d, d)


def apply_transform(f_obj: int, y: int, fuel: int = 10**6) -> int:
    """Evaluate f on y object-side; f must halt within ``fuel``."""
    out = run_index(f_obj, y, fuel)
    if not isinstance(out, Halted):
        raise RuntimeError(f"transformation {f_obj} did not halt on {y} within {fuel} ticks")
    return out.value


# ---------------------------------------------------------------------------
# padded families

def _self_index(x: Term, p: Term) -> Term:
    return Smn(p, Pr(x, p))


def family_diagonal_term(f_obj: int) -> Term:
    """On ``pair(pair(x, p), z)``: rebuild y = smn(p, pair(x, p)), then run
    f(x, y) on z. With p any padding of this program, y is the running index."""
    x, p, z = Fst(Fst(X)), Snd(Fst(X)), Snd(X)
    return univ(univ(Num(f_obj), Pr(x, _self_index(x, p))), z)


def membership_term(diag: int) -> Term:
    """On ``pair(x, y)``: halt iff y = member(x, k) for some k.

    Members increase with k, so the search stops at the first member >= y
    and the final comparison decides; off-family inputs diverge.
    """
    def candidate(k: Term) -> Term:
        return _self_index(Fst(X), Pad(Num(diag), k))

    least = Mu(Monus(Snd(X), candidate(Var(0))))
    return halt_if_zero(Monus(candidate(least), Snd(X)))


@dataclass(frozen=True)
class FamilyHandle:
    """Padded fixed-point family: for each x an infinite increasing computable set
    of fixed points of y -> f(x, y)."""

    f_obj: int
    diag: int
    membership: int
    h_obj: int

    def member(self, x: int, k: int) -> int:
        p = pad(self.diag, k)
        return smn(p, pair(x, p))

    def h(self, x: int) -> int:
        """Host-side h: W_{h(x)} = {member(x, k) : k}."""
        return smn(self.membership, x)

    def rank(self, x: int, y: int):
        """k with member(x, k) = y, or ``None``. Uses monotonicity."""
        lo, hi = 0, 1
        while self.member(x, hi) < y:
            lo, hi = hi, hi * 2
        while lo < hi:
            mid = (lo + hi) // 2
            if self.member(x, mid) < y:
                lo = mid + 1
            else:
                hi = mid
        return lo if self.member(x, lo) == y else None

    def to_json(self) -> Dict[str, str]:
        return {name: to_decimal(getattr(self, name)) for name in ("f_obj", "diag", "membership", "h_obj")}

    @classmethod
    def from_json(cls, data) -> "FamilyHandle":
        return cls(*(from_decimal(data[n]) for n in ("f_obj", "diag", "membership", "h_obj")))


def padded_family(f_obj: int) -> FamilyHandle:
    diag = encode(family_diagonal_term(f_obj))
    membership = encode(membership_term(diag))
    h_obj = encode(Smn(Num(membership), X))
    return FamilyHandle(f_obj, diag, membership, h_obj)


def family_h_index(family: FamilyHandle) -> int:
    return family.h_obj


# ---------------------------------------------------------------------------
# a few cheap transformations

def constant_transform(c: int) -> int:
    """f(y) = c."""
    return encode(Num(c))


def literal_transform() -> int:
    """f(y) = an index of the constant-y function; its fixed point is a quine."""
    return encode(Smn(Num(FST), X))


def pad_literal_transform() -> int:
    """f(y) = the constant-y program padded by one."""
    return encode(Pad(Smn(Num(FST), X), Num(1)))


def identity_transform() -> int:
    return encode(X)


# target of the constant catalog entry: x -> x + 1
CONSTANT_TARGET = encode(Add(X, Num(1)))


def catalog() -> Dict[str, int]:
    """Cheap total transformations whose fixed points halt everywhere."""
    return {
        "constant": constant_transform(CONSTANT_TARGET),
        "pad-by-one": pad_literal_transform(),
        "swap-to-literal": literal_transform(),
    }
