"""Object programs used by the theorem builders.

Naming convention for inputs: a "direct" template g is run through
``smn(g, pair(g, n))``, so it sees ``pair(pair(g, n), y)``; ``G`` and ``N``
below pick those apart and ``Y`` is the caller's input.
"""

from __future__ import annotations

from .numbering import pair
from .terms import (
    Add, Fst, Ifz, Monus, Mu, Num, Pr, Smn, Snd, Step, Term, Var, X, eq,
    halt_if_zero, shift, succ, univ,
)

G = Fst(Fst(X))
N = Snd(Fst(X))
Y = Snd(X)


def times(k: int, t: Term) -> Term:
    out = t
    for _ in range(k - 1):
        out = Add(out, t)
    return out


def sibling(g: Term, n: Term) -> Term:
    """Index of the n-th member of a direct family: smn(g, pair(g, n))."""
    return Smn(g, Pr(g, n))


# ---------------------------------------------------------------------------
# direct sequence templates

def chain_template() -> Term:
    """Halts on y iff y = e_{n+1}."""
    return halt_if_zero(eq(Y, sibling(G, succ(N))))


def tail_template() -> Term:
    """Halts on y iff y = e_{n+m} for some m >= 1.

    Finds the least m >= 1 with e_{n+m} >= y (the family increases), then
    compares.
    """
    def member(m: Term) -> Term:
        return sibling(G, Add(N, succ(m)))

    least = Mu(Monus(Y, member(Var(0))))
    return halt_if_zero(Monus(member(least), Y))


def value_template() -> Term:
    """Returns e_{n+m+1} on input m."""
    return sibling(G, Add(N, succ(Y)))


def cycle_template(length: int) -> Term:
    """Halts on y iff y = e_{(n+1) mod (length+1)}; members are 0..length."""
    nxt = Ifz(Monus(Num(length), N), Num(0), succ(N))
    return halt_if_zero(eq(Y, sibling(G, nxt)))


def reflexive_template() -> Term:
    """On pair(p, y): halt iff y = smn(p, p)."""
    return halt_if_zero(eq(Snd(X), Smn(Fst(X), Fst(X))))


def singleton_term(a: int) -> Term:
    return halt_if_zero(eq(X, Num(a)))


def multiples_term(k: int) -> Term:
    """Halts exactly on multiples of k."""
    least = Mu(Monus(X, times(k, Var(0))))
    return halt_if_zero(Monus(times(k, least), X))


def k_set_term() -> Term:
    """Halts on n iff program n halts on n."""
    return univ(X, X)


# ---------------------------------------------------------------------------
# families indexed by B-membership

def _parametrized_member(j: Term) -> Term:
    """Member j of the family smn(g, pair(pair(g, b), j)); the running
    program sees pair(pair(pair(g, b), j), y)."""
    params = Fst(Fst(X))
    return Smn(Fst(params), Pr(params, j))


def selfcon_template() -> Term:
    """Every member halts on y iff y = member(j) for some j in W_b.

    The family increases in j, so y pins down j; then run b on j.
    """
    b = Snd(Fst(Fst(X)))
    least = Mu(Monus(Y, _parametrized_member(Var(0))))
    return Ifz(Monus(_parametrized_member(least), Y), univ(b, least), Mu(Num(1)))


def noncomputable_template() -> Term:
    """member(n) halts on y iff y = member(n') with n' > n and n' in W_b."""
    b = Snd(Fst(Fst(X)))
    least = Mu(Monus(Y, _parametrized_member(Var(0))))
    later = Monus(succ(N), least)
    return Ifz(Monus(_parametrized_member(least), Y),
               Ifz(later, univ(b, least), Mu(Num(1))),
               Mu(Num(1)))


def tot_template(g: int, b: int) -> Term:
    """On pair(e, y): halt iff y = a_n for some n in W_e, where
    a_n = smn(g, pair(pair(g, b), 3n)) enumerates A for B = multiples of 3."""
    def a(n: Term) -> Term:
        return Smn(Num(g), Pr(Num(pair(g, b)), times(3, n)))

    least = Mu(Monus(Snd(X), a(Var(0))))
    return Ifz(Monus(a(least), Snd(X)), univ(Fst(X), least), Mu(Num(1)))


# ---------------------------------------------------------------------------
# templates for the proof pipelines; E and XP are the (e, x) parameters
# when the input is pair(pair(e, x), y)

E = Fst(Fst(X))
XP = Snd(Fst(X))


def in_stage(e: Term, y: Term, s: Term) -> Term:
    """0 iff y is in W_{e,s}."""
    return Add(Monus(succ(y), s), Ifz(Step(e, y, s), Num(1), Num(0)))


def least_pair_search_term() -> Term:
    """On pair(e, x): the y of the least pair(s, y) with y in W_{e,s}, y > x."""
    e, x = shift(Fst(X)), shift(Snd(X))
    s, y = Fst(Var(0)), Snd(Var(0))
    cond = Add(in_stage(e, y, s), Monus(succ(x), y))
    return Snd(Mu(cond))


def q_main_term(search: int) -> Term:
    """On pair(pair(e, x), y): halt iff y is the least-pair witness for (e, x)."""
    return halt_if_zero(eq(univ(Num(search), Fst(X)), Y))


def first_stage_term() -> Term:
    """On pair(e, y): least s with y in W_{e,s} (diverges if y not in W_e)."""
    e, y = shift(Fst(X)), shift(Snd(X))
    return Mu(in_stage(e, y, Var(0)))


def stage_max_term() -> Term:
    """On pair(e, s) with W_{e,s} nonempty: max(W_{e,s})."""
    e, s = shift(Fst(X)), shift(Snd(X))
    candidate = Monus(Monus(s, Num(1)), Var(0))
    j = Mu(Ifz(Step(e, candidate, s), Num(1), Num(0)))
    return Monus(Monus(Snd(X), Num(1)), j)


def is_stage_max_term(first_stage: int, stage_max: int) -> Term:
    """On pair(e, y): halt iff y = max(W_{e,s}) for some s.

    W_{e,s} grows with s, so it suffices to look at the stage where y enters.
    """
    entry = univ(Num(first_stage), X)
    top = univ(Num(stage_max), Pr(Fst(X), entry))
    return halt_if_zero(eq(top, Snd(X)))


def q_two_term(is_max: int) -> Term:
    """On pair(pair(e, x), y): halt iff y > x and y is some max(W_{e,s})."""
    above = Monus(succ(XP), Y)
    return Ifz(above, univ(Num(is_max), Pr(E, Y)), Mu(Num(1)))


def has_above_term() -> Term:
    """On pair(pair(e, v), s): 0 iff W_{e,s} has an element >= v, else 1."""
    e, v, s = shift(E), shift(XP), shift(Snd(X))
    candidate = Monus(Monus(s, Num(1)), Var(0))
    exhausted = Monus(Monus(s, v), Var(0))
    j = Mu(Ifz(exhausted, Num(0), Ifz(Step(e, candidate, s), Num(1), Num(0))))
    return Ifz(Monus(Monus(Snd(X), XP), j), Num(1), Num(0))


def next_max_term(has_above: int, stage_max: int) -> Term:
    """On pair(e, v): the least max(W_{e,s}) that is >= v.

    Snapshots only grow, so this is the max at the first stage holding an
    element >= v.
    """
    stage = Mu(univ(Num(has_above), Pr(shift(X), Var(0))))
    return univ(Num(stage_max), Pr(Fst(X), stage))


def nth_max_term(next_max: int) -> Term:
    """On pair(pair(self, e), n): c_n, the n-th distinct max(W_{e,s}).

    ``self`` is this program's own index, used for the recursive call.
    """
    me, e, n = Fst(Fst(X)), Snd(Fst(X)), Snd(X)
    previous = univ(me, Pr(Fst(X), Monus(n, Num(1))))
    return Ifz(n, univ(Num(next_max), Pr(e, Num(0))),
               univ(Num(next_max), Pr(e, succ(previous))))


def nth_max(nth: int, e: Term, n: Term) -> Term:
    return univ(Num(nth), Pr(Pr(Num(nth), e), n))


def q_value_term(nth: int) -> Term:
    """On pair(pair(e, x), m): c_{n+m+1} for the least n with c_n >= x."""
    least = Mu(Monus(shift(XP), nth_max(nth, shift(E), Var(0))))
    return nth_max(nth, E, Add(least, succ(Y)))


def q_filtered_term(nth: int, b: int, above_x: bool) -> Term:
    """On pair(pair(e, x), y): halt iff y = c_n with n in W_b (and, when
    ``above_x``, y > x)."""
    least = Mu(Monus(shift(Y), nth_max(nth, shift(E), Var(0))))
    body = Ifz(Monus(nth_max(nth, E, least), Y), univ(Num(b), least), Mu(Num(1)))
    if above_x:
        body = Ifz(Monus(succ(XP), Y), body, Mu(Num(1)))
    return body
