"""Abstract syntax of KF, the workbench's object language.

Thirteen term forms. ``Var(i)`` is a de Bruijn reference to the i-th
enclosing ``Mu`` counter (0 = innermost); ``X`` is the program input and is
never shadowed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Tuple, Union


@dataclass(frozen=True)
class Num:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"Num literal must be a natural, got {self.n!r}")


@dataclass(frozen=True)
class Input:
    pass


X = Input()


@dataclass(frozen=True)
class Var:
    i: int

    def __post_init__(self):
        if not isinstance(self.i, int) or self.i < 0:
            raise ValueError(f"Var depth must be a natural, got {self.i!r}")


@dataclass(frozen=True)
class Add:
    a: "Term"
    b: "Term"


@dataclass(frozen=True)
class Monus:
    a: "Term"
    b: "Term"


@dataclass(frozen=True)
class Ifz:
    guard: "Term"
    zero: "Term"
    nonzero: "Term"


@dataclass(frozen=True)
class Pr:
    a: "Term"
    b: "Term"


@dataclass(frozen=True)
class Fst:
    a: "Term"


@dataclass(frozen=True)
class Snd:
    a: "Term"


@dataclass(frozen=True)
class Mu:
    body: "Term"


@dataclass(frozen=True)
class Step:
    e: "Term"
    x: "Term"
    s: "Term"


@dataclass(frozen=True)
class Smn:
    p: "Term"
    a: "Term"


@dataclass(frozen=True)
class Pad:
    e: "Term"
    k: "Term"


Term = Union[Num, Input, Var, Add, Monus, Ifz, Pr, Fst, Snd, Mu, Step, Smn, Pad]

# child field order is the serialization order
CHILDREN = {
    Add: ("a", "b"),
    Monus: ("a", "b"),
    Ifz: ("guard", "zero", "nonzero"),
    Pr: ("a", "b"),
    Fst: ("a",),
    Snd: ("a",),
    Mu: ("body",),
    Step: ("e", "x", "s"),
    Smn: ("p", "a"),
    Pad: ("e", "k"),
}


def children(t: Term) -> Tuple[Term, ...]:
    fields = CHILDREN.get(type(t))
    if fields is None:
        return ()
    return tuple(getattr(t, f) for f in fields)


def rebuild(t: Term, kids) -> Term:
    return type(t)(*kids)


class ScopeError(Exception):
    """A ``Var`` points past its enclosing binders.

    ``path`` lists child positions from the root to the offending node.
    """

    def __init__(self, path: Tuple[int, ...], var: Var, depth: int):
        self.path = path
        self.var = var
        self.depth = depth
        super().__init__(f"var {var.i} under {depth} binder(s) at path {list(path)}")


def validate(t: Term):
    """Return ``None`` for a well-scoped term, else the first ``ScopeError``.

    Walks pre-order, left to right, so "first" is the leftmost offender.
    """
    stack = [(t, 0, ())]
    while stack:
        node, depth, path = stack.pop()
        if isinstance(node, Var):
            if node.i >= depth:
                return ScopeError(path, node, depth)
            continue
        inner = depth + 1 if isinstance(node, Mu) else depth
        kids = children(node)
        for pos in range(len(kids) - 1, -1, -1):
            stack.append((kids[pos], inner, path + (pos,)))
    return None


def is_well_formed(t: Term) -> bool:
    return validate(t) is None


def check(t: Term) -> Term:
    err = validate(t)
    if err is not None:
        raise err
    return t


def shift(t: Term, by: int = 1, cutoff: int = 0) -> Term:
    """Shift free ``Var`` references (those ``>= cutoff``) by ``by``."""
    if isinstance(t, Var):
        return Var(t.i + by) if t.i >= cutoff else t
    kids = children(t)
    if not kids:
        return t
    inner = cutoff + 1 if isinstance(t, Mu) else cutoff
    return rebuild(t, [shift(k, by, inner) for k in kids])


def mentions_var(t: Term, i: int) -> bool:
    """True if ``t`` refers to the binder that is ``i`` levels out from it."""
    if isinstance(t, Var):
        return t.i == i
    inner = i + 1 if isinstance(t, Mu) else i
    return any(mentions_var(k, inner) for k in children(t))


def mentions_input(t: Term) -> bool:
    if isinstance(t, Input):
        return True
    return any(mentions_input(k) for k in children(t))


def walk(t: Term) -> Iterator[Term]:
    stack = [t]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def size(t: Term) -> int:
    return sum(1 for _ in walk(t))


def substitute(t: Term, target: Term, replacement: Term) -> Term:
    """Replace every occurrence of the closed subterm ``target``."""
    if t == target:
        return replacement
    kids = children(t)
    if not kids:
        return t
    return rebuild(t, [substitute(k, target, replacement) for k in kids])


# ---------------------------------------------------------------------------
# derived forms

DIVERGE = Mu(Num(1))


def eq(a: Term, b: Term) -> Term:
    """0 iff a = b."""
    return Add(Monus(a, b), Monus(b, a))


def succ(a: Term) -> Term:
    return Add(a, Num(1))


def stage_schedule(k: Term) -> Term:
    """s_k = P(P(P(k, 0), 0), 0): grows like k**8 so the search in UNIV
    overshoots the inner run's tick count by a bounded factor."""
    return Pr(Pr(Pr(k, Num(0)), Num(0)), Num(0))


def univ(e: Term, x: Term) -> Term:
    """Universal application: the value of program ``e`` on input ``x``.

    Searches stages along ``stage_schedule`` for the first budget at which
    ``Step`` reports a halt, then re-runs ``Step`` at that budget and strips
    the +1. Diverges exactly when ``e`` diverges on ``x``.
    """
    probe = Step(shift(e), shift(x), stage_schedule(Var(0)))
    found = Mu(Ifz(probe, Num(1), Num(0)))
    return Monus(Step(e, x, stage_schedule(found)), Num(1))


def halt_if_zero(guard: Term, value: Term = Num(0)) -> Term:
    """Return ``value`` when ``guard`` is 0, diverge otherwise."""
    return Ifz(guard, value, DIVERGE)
