"""Analytic evaluation of W for the stage-search q-templates.

Programs produced by the faithful pipelines only halt after a stage search
whose witness stage exceeds the witness itself, so they cannot be run. Their
sets follow from two facts that can be checked cheaply:

* W_e is the padded family of the pipeline (structure of e and h), and
* each family member y enters W_e at stage y + 1, because e halts on y in far
  fewer than y ticks (measured by actually running e on y).

The same resolution rules are cross-checked against dynamic runs of the
q-templates on small synthetic programs where everything is runnable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from .constructions import (
    FINITE_CYCLE, NONCOMPUTABLE_TAIL, SINGLETON_CHAIN, TAIL_SETS, VALUE_SEQ,
    Pipeline, pipeline,
)
from .machine import Halted, run_index
from .numbering import encode, pair, to_decimal
from .recursion import fix, padded_family
from .terms import Num, Smn, X

ORACLE_FUEL = 10**11


class UnrecognizedTemplate(ValueError):
    """The index is not a member of the pipeline's family."""


class OracleLimit(RuntimeError):
    """A measurement needed more fuel than allowed."""


# ---------------------------------------------------------------------------
# symbolic sets

@dataclass(frozen=True)
class Finite:
    members: Tuple[int, ...]


@dataclass(frozen=True)
class FamilyTail:
    """{member(k) : k >= start}."""
    start: int


@dataclass(frozen=True)
class FamilyValues:
    """The total function m -> member(offset + m)."""
    offset: int


@dataclass(frozen=True)
class FamilyFilter:
    """{member(k) : k >= start, k in W_b}."""
    start: int
    b: int


def describe(obj) -> dict:
    """JSON-friendly form of a symbolic set."""
    out = {"type": type(obj).__name__}
    for name, value in vars(obj).items():
        if isinstance(value, tuple):
            out[name] = [to_decimal(v) for v in value]
        elif isinstance(value, int):
            out[name] = to_decimal(value)
        else:
            out[name] = value
    return out


# ---------------------------------------------------------------------------
# resolution rules on an explicit finite W_e

def entry_stage(y: int, ticks: int) -> int:
    """Least s with y in W_{e,s}: y < s and ticks < s."""
    return max(y, ticks) + 1


def least_pair_witness(entries: Iterable[Tuple[int, int]], x: int) -> Optional[int]:
    """y of the least pair(s, y) with y in W_{e,s} and y > x.

    ``entries`` lists (y, ticks) for every element of a finite W_e.
    """
    best = None
    for y, t in entries:
        if y > x:
            key = pair(entry_stage(y, t), y)
            if best is None or key < best[0]:
                best = (key, y)
    return None if best is None else best[1]


def stage_maxes(entries: Iterable[Tuple[int, int]]) -> List[int]:
    """Distinct values of max(W_{e,s}) over all s, for a finite W_e."""
    by_stage = sorted((entry_stage(y, t), y) for y, t in entries)
    out: List[int] = []
    top = -1
    for _, y in by_stage:
        if y > top:
            top = y
            out.append(y)
    return out


def q_main_set(entries, x: int) -> Finite:
    w = least_pair_witness(list(entries), x)
    return Finite(() if w is None else (w,))


def q_two_set(entries, x: int) -> Finite:
    return Finite(tuple(y for y in stage_maxes(entries) if y > x))


def measure_entries(e: int, ys: Iterable[int], fuel: int = 10**7) -> List[Tuple[int, int]]:
    """(y, ticks) for each y on which e halts within ``fuel``."""
    out = []
    for y in ys:
        r = run_index(e, y, fuel)
        if isinstance(r, Halted):
            out.append((y, r.ticks))
    return out


# ---------------------------------------------------------------------------
# pipelines

def check_pipeline_structure(pipe: Pipeline) -> List[str]:
    """Recompute every derived index; returns a list of mismatches."""
    problems = []
    f_obj = encode(Smn(Num(pipe.q_template), X))
    if pipe.family.f_obj != f_obj:
        problems.append("f is not the lifted q-template")
    if padded_family(f_obj) != pipe.family:
        problems.append("family indices do not match the padded diagonal construction")
    if fix(pipe.family.h_obj) != pipe.e:
        problems.append("e is not the fixed point of h")
    return problems


_TICKS: Dict[Tuple[int, int], int] = {}


def member_ticks(pipe: Pipeline, k: int, fuel: int = ORACLE_FUEL) -> int:
    """Ticks of e on member k; e must halt and in fewer than member(k) ticks."""
    key = (pipe.e, k)
    if key not in _TICKS:
        y = pipe.member(k)
        r = run_index(pipe.e, y, fuel)
        if not isinstance(r, Halted):
            raise OracleLimit(f"e did not halt on member {k} within {fuel} ticks")
        if r.ticks >= y:
            raise OracleLimit(f"member {k} does not enter at stage member + 1")
        _TICKS[key] = r.ticks
    return _TICKS[key]


def oracle_w(pipe: Pipeline, kind: str, index: int, b: Optional[int] = None,
             fuel: int = ORACLE_FUEL, lookahead: int = 2):
    """Symbolic W (or psi, for value sequences) of a family member of ``pipe``.

    Members k+1 .. k+lookahead are measured; every one of them must enter
    W_e at stage member + 1. For the least-pair search this pins the
    witness: any later member y' has pair(s', y') >= pair(y' + 1, y'), which
    increases with y'.
    """
    k = pipe.family.rank(pipe.e, index)
    if k is None:
        raise UnrecognizedTemplate("index is not a member of the pipeline family")
    for j in range(k + 1, k + 1 + lookahead):
        member_ticks(pipe, j, fuel)
    if kind == SINGLETON_CHAIN:
        return Finite((pipe.member(k + 1),))
    if kind == TAIL_SETS:
        return FamilyTail(k + 1)
    if kind == VALUE_SEQ:
        return FamilyValues(k + 1)
    if kind == NONCOMPUTABLE_TAIL:
        return FamilyFilter(k + 1, b)
    if kind == "self-constructing":
        member_ticks(pipe, 0, fuel)
        return FamilyFilter(0, b)
    if kind == FINITE_CYCLE:
        raise UnrecognizedTemplate("finite cycles have no faithful pipeline")
    raise ValueError(f"unknown kind {kind!r}")


def q_template_for(kind: str, b: Optional[int] = None) -> int:
    from .constructions import template_index
    return {
        SINGLETON_CHAIN: lambda: template_index("q-main"),
        TAIL_SETS: lambda: template_index("q-two"),
        VALUE_SEQ: lambda: template_index("q-value"),
        NONCOMPUTABLE_TAIL: lambda: template_index("q-noncomputable", b),
        "self-constructing": lambda: template_index("q-self", b),
    }[kind]()


def default_pipeline(kind: str, b: Optional[int] = None) -> Pipeline:
    return pipeline(q_template_for(kind, b))
