"""Builders for the self-referential sequences and sets.

Each theorem comes in two modes:

* ``direct``: a single s-m-n template whose members can be run end to end.
  Member n of a template g is ``smn(g, pair(g, n))``, so the running program
  can rebuild any sibling from its own input.
* ``faithful``: the proof pipeline. A q-template is lifted to a transformation
  f(e, x) = q(e, x), a padded fixed-point family is built for it, and e is a
  fixed point of the family's h. Runs of the resulting programs are far too
  long to execute, so they are checked with ``kfix.oracle``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence

from . import templates as tpl
from .enumeration import In, w_member_bounded
from .numbering import encode, from_decimal, pair, smn, to_decimal
from .recursion import FamilyHandle, fix, padded_family
from .terms import DIVERGE, Ifz, Num, Smn, X, eq, halt_if_zero

DIRECT = "direct"
FAITHFUL = "faithful"
MODES = (DIRECT, FAITHFUL)

SINGLETON_CHAIN = "singleton-chain"
TAIL_SETS = "tail-sets"
VALUE_SEQ = "value-seq"
NONCOMPUTABLE_TAIL = "noncomputable-tail"
FINITE_CYCLE = "finite-cycle"
KINDS = (SINGLETON_CHAIN, TAIL_SETS, VALUE_SEQ, NONCOMPUTABLE_TAIL, FINITE_CYCLE)

PROBE_FUEL = 10**6
RUN_FUEL = 10**7


# ---------------------------------------------------------------------------
# template indices

@lru_cache(maxsize=None)
def template_index(name: str, arg: Optional[int] = None) -> int:
    builders = {
        "chain": tpl.chain_template,
        "tail": tpl.tail_template,
        "value": tpl.value_template,
        "reflexive": tpl.reflexive_template,
        "selfcon": tpl.selfcon_template,
        "noncomputable": tpl.noncomputable_template,
        "least-pair": tpl.least_pair_search_term,
        "first-stage": tpl.first_stage_term,
        "stage-max": tpl.stage_max_term,
        "has-above": tpl.has_above_term,
    }
    if name == "cycle":
        return encode(tpl.cycle_template(arg))
    if name == "multiples":
        return encode(tpl.multiples_term(arg))
    if name == "q-main":
        return encode(tpl.q_main_term(template_index("least-pair")))
    if name == "is-max":
        return encode(tpl.is_stage_max_term(template_index("first-stage"), template_index("stage-max")))
    if name == "q-two":
        return encode(tpl.q_two_term(template_index("is-max")))
    if name == "next-max":
        return encode(tpl.next_max_term(template_index("has-above"), template_index("stage-max")))
    if name == "nth-max":
        return encode(tpl.nth_max_term(template_index("next-max")))
    if name == "q-value":
        return encode(tpl.q_value_term(template_index("nth-max")))
    if name == "q-noncomputable":
        return encode(tpl.q_filtered_term(template_index("nth-max"), arg, above_x=True))
    if name == "q-self":
        return encode(tpl.q_filtered_term(template_index("nth-max"), arg, above_x=False))
    return encode(builders[name]())


def direct_member(g: int, n: int) -> int:
    return smn(g, pair(g, n))


def b_member(g: int, b: int, j: int) -> int:
    """Member j of a B-indexed family: smn(g, pair(pair(g, b), j))."""
    return smn(g, pair(pair(g, b), j))


# ---------------------------------------------------------------------------
# faithful pipeline

@dataclass(frozen=True)
class Pipeline:
    """q-template -> f(e, x) = q(e, x) -> padded family -> e = fix(h)."""

    q_template: int
    family: FamilyHandle
    e: int

    def member(self, k: int) -> int:
        return self.family.member(self.e, k)

    def q(self, x: int) -> int:
        return smn(self.q_template, pair(self.e, x))

    def to_json(self) -> Dict[str, str]:
        out = {"q_template": to_decimal(self.q_template), "e": to_decimal(self.e)}
        out.update(self.family.to_json())
        return out

    @classmethod
    def from_json(cls, data) -> "Pipeline":
        return cls(from_decimal(data["q_template"]), FamilyHandle.from_json(data), from_decimal(data["e"]))


@lru_cache(maxsize=None)
def pipeline(q_template: int) -> Pipeline:
    family = padded_family(encode(Smn(Num(q_template), X)))
    return Pipeline(q_template, family, fix(family.h_obj))


# ---------------------------------------------------------------------------
# sequence handles

@dataclass
class SeqHandle:
    kind: str
    mode: str
    generator: int
    elements: List[int]
    params: Dict[str, object] = field(default_factory=dict)

    def element(self, n: int) -> int:
        """e_n, recomputed from the generator (never read from ``elements``)."""
        if self.mode == FAITHFUL:
            pipe = self.params["pipeline"]
            if self.kind == NONCOMPUTABLE_TAIL:
                return pipe.member(from_decimal(self.params["b_members"][n]))
            return pipe.member(n)
        if self.kind == NONCOMPUTABLE_TAIL:
            return b_member(self.generator, from_decimal(self.params["b"]), from_decimal(self.params["b_members"][n]))
        if self.kind == FINITE_CYCLE and n > from_decimal(self.params["length"]):
            raise IndexError("finite cycle has no such member")
        return direct_member(self.generator, n)

    @property
    def pipeline(self) -> Optional[Pipeline]:
        return self.params["pipeline"] if self.mode == FAITHFUL else None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "mode": self.mode,
            "generator": to_decimal(self.generator),
            "elements": [to_decimal(v) for v in self.elements],
            "params": _stringify(self.params),
        }

    @classmethod
    def from_json(cls, data: dict) -> "SeqHandle":
        if data.get("kind") not in KINDS or data.get("mode") not in MODES:
            raise ValueError("not a sequence handle")
        return cls(data["kind"], data["mode"], from_decimal(data["generator"]),
                   [from_decimal(v) for v in data["elements"]], _load_params(data.get("params", {})))


def _load_params(params) -> dict:
    out = dict(params)
    if "pipeline" in out:
        out["pipeline"] = Pipeline.from_json(out["pipeline"])
    return out


def _stringify(obj):
    if isinstance(obj, Pipeline):
        return obj.to_json()
    if isinstance(obj, dict):
        return {k: _stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    if isinstance(obj, int) and not isinstance(obj, bool):
        return to_decimal(obj)
    return obj


def _handle(kind: str, mode: str, generator: int, depth: int, params=None) -> SeqHandle:
    h = SeqHandle(kind, mode, generator, [], dict(params or {}))
    h.elements = [h.element(n) for n in range(depth + 1)]
    return h


def _faithful(kind: str, q_template: int, depth: int, params=None) -> SeqHandle:
    pipe = pipeline(q_template)
    extra = {"pipeline": pipe}
    extra.update(params or {})
    return _handle(kind, FAITHFUL, pipe.e, depth, extra)


def thm_main(mode: str = DIRECT, depth: int = 6) -> SeqHandle:
    """W_{e_n} = {e_{n+1}}; elements e_0..e_depth."""
    if mode == DIRECT:
        return _handle(SINGLETON_CHAIN, DIRECT, template_index("chain"), depth)
    return _faithful(SINGLETON_CHAIN, template_index("q-main"), depth)


def thm_two(mode: str = DIRECT, depth: int = 5) -> SeqHandle:
    """W_{e_n} = {e_m : m > n}."""
    if mode == DIRECT:
        return _handle(TAIL_SETS, DIRECT, template_index("tail"), depth)
    return _faithful(TAIL_SETS, template_index("q-two"), depth)


def value_seq(mode: str = DIRECT, depth: int = 7) -> SeqHandle:
    """psi_{e_n}(m) = e_{n+m+1}."""
    if mode == DIRECT:
        return _handle(VALUE_SEQ, DIRECT, template_index("value"), depth)
    return _faithful(VALUE_SEQ, template_index("q-value"), depth)


def finite_cycle(n: int) -> List[int]:
    """e_0 < ... < e_n with W_{e_i} = {e_{i+1}} and W_{e_n} = {e_0}."""
    return cycle_handle(n).elements


def cycle_handle(n: int) -> SeqHandle:
    if n < 1:
        raise ValueError("a cycle needs n >= 1")
    return _handle(FINITE_CYCLE, DIRECT, template_index("cycle", n), n, {"length": n})


def noncomputable_seq(b: Optional[int] = None, mode: str = DIRECT,
                      b_members: Sequence[int] = ()) -> SeqHandle:
    """Members indexed by B = W_b (default K); each member's set is the
    later members. The accessor is B-relative: ``b_members`` lists known
    elements of B."""
    b = k_set() if b is None else b
    known = sorted(set(int(v) for v in b_members)) or list(known_k_members())
    params = {"b": b, "b_members": known}
    if mode == DIRECT:
        return _handle(NONCOMPUTABLE_TAIL, DIRECT, template_index("noncomputable"),
                       len(known) - 1, params)
    return _faithful(NONCOMPUTABLE_TAIL, template_index("q-noncomputable", b),
                     len(known) - 1, params)


# ---------------------------------------------------------------------------
# single programs

def reflexive_singleton() -> int:
    """e with W_e = {e}."""
    g = template_index("reflexive")
    return smn(g, g)


def singleton_domain(a: int) -> int:
    """b with W_b = {a}."""
    return encode(tpl.singleton_term(a))


def two_point_program(a: int, b: int) -> int:
    """Program halting exactly on a and b; a small synthetic W_e."""
    return encode(Ifz(eq(X, Num(a)), Num(0), halt_if_zero(eq(X, Num(b)))))


def multiples_of(k: int) -> int:
    return template_index("multiples", k)


def q_main(e: int, x: int) -> int:
    """W = {y} for the y of the least pair(s, y) with y in W_{e,s}, y > x;
    empty if there is none."""
    return smn(template_index("q-main"), pair(e, x))


def q_two(e: int, x: int) -> int:
    """W = {max(W_{e,s}) : s} minus {0, ..., x}."""
    return smn(template_index("q-two"), pair(e, x))


def k_set() -> int:
    """W = K = {n : program n halts on n}."""
    return encode(tpl.k_set_term())


def known_k_members() -> List[int]:
    """Two elements of K with fast self-runs: Num(0) and X."""
    return sorted([encode(Num(0)), encode(X)])


DIVERGER = encode(DIVERGE)


# ---------------------------------------------------------------------------
# self-constructing sets

@dataclass
class SelfConHandle:
    """A = {c_j : j in B} with W_x = A for every x in A; C = {c_n : n}."""

    b: int
    generator: int
    mode: str
    params: Dict[str, object] = field(default_factory=dict)

    def c(self, n: int) -> int:
        if self.mode == FAITHFUL:
            return self.params["pipeline"].member(n)
        return b_member(self.generator, self.b, n)

    def a_member(self, j: int) -> int:
        """The member of A contributed by j (caller asserts j in B)."""
        return self.c(j)

    def to_json(self) -> dict:
        return {"kind": "self-constructing", "mode": self.mode, "b": to_decimal(self.b),
                "generator": to_decimal(self.generator), "params": _stringify(self.params)}

    @classmethod
    def from_json(cls, data: dict) -> "SelfConHandle":
        if data.get("kind") != "self-constructing":
            raise ValueError("not a self-constructing handle")
        return cls(from_decimal(data["b"]), from_decimal(data["generator"]), data["mode"],
                   _load_params(data.get("params", {})))


class PromiseViolation(ValueError):
    """B visibly contains a non-multiple of 3."""


def check_b_promise(b: int, probes: int = 30, fuel: int = 10**4) -> None:
    for y in range(probes):
        if y % 3 and isinstance(w_member_bounded(b, y, fuel), In):
            raise PromiseViolation(f"W_b contains {y}, which is not a multiple of 3")


def self_constructing(b: int, mode: str = DIRECT) -> SelfConHandle:
    """Self-constructing A with pi(A) = B, for B = W_b inside {3k}."""
    check_b_promise(b)
    if mode == DIRECT:
        return SelfConHandle(b, template_index("selfcon"), DIRECT)
    pipe = pipeline(template_index("q-self", b))
    return SelfConHandle(b, pipe.e, FAITHFUL, {"pipeline": pipe})


# ---------------------------------------------------------------------------
# Tot -> S

@dataclass(frozen=True)
class TotReduction:
    """f(e) with W_{f(e)} = {a_n : n in W_e}, where a_n enumerates the
    infinite self-constructing set built from B = multiples of 3."""

    g: int
    b: int
    template: int

    def a(self, n: int) -> int:
        return b_member(self.g, self.b, 3 * n)

    def f(self, e: int) -> int:
        return smn(self.template, e)


@lru_cache(maxsize=None)
def tot_reduction() -> TotReduction:
    g = template_index("selfcon")
    b = multiples_of(3)
    return TotReduction(g, b, encode(tpl.tot_template(g, b)))


def tot_to_s(e: int) -> int:
    return tot_reduction().f(e)
