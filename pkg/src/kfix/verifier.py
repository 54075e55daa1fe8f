"""Bounded checkers with three-valued verdicts.

``fail`` is only reported with a concrete counterexample in the evidence;
running out of fuel is always ``inconclusive``, never evidence of
non-membership.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence

from . import oracle
from .constructions import (
    FAITHFUL, FINITE_CYCLE, NONCOMPUTABLE_TAIL, SINGLETON_CHAIN, TAIL_SETS,
    VALUE_SEQ, SelfConHandle, SeqHandle,
)
from .machine import Halted, run, run_index
from .numbering import decode, match_smn, pair, to_decimal
from .permutation import LiteralPermutation, RankedPermutation
from .terms import DIVERGE, Add, Ifz, Monus, Num, Snd, X, walk

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
EXIT_CODES = {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}
_RANK = {PASS: 0, INCONCLUSIVE: 1, FAIL: 2}


@dataclass(frozen=True)
class CheckBudget:
    fuel: int = 10**6
    samples: Sequence[int] = tuple(range(6))
    probes: int = 20
    seed: int = 0
    run_fuel: int = 10**7
    oracle_fuel: int = oracle.ORACLE_FUEL
    attempt_runs: bool = False

    def __post_init__(self):
        if self.fuel < 1 or self.run_fuel < 1:
            raise ValueError("fuel must be at least 1")
        if not self.samples:
            raise ValueError("samples must be nonempty")


@dataclass
class Report:
    check: str
    status: str
    evidence: Dict[str, object] = field(default_factory=dict)
    children: List["Report"] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_json(self) -> dict:
        out = {"check": self.check, "status": self.status, "evidence": _jsonable(self.evidence)}
        if self.children:
            out["children"] = [c.to_json() for c in self.children]
        return out

    def find(self, check: str) -> Optional["Report"]:
        if self.check == check:
            return self
        for c in self.children:
            hit = c.find(check)
            if hit is not None:
                return hit
        return None


def _jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return to_decimal(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return repr(obj)


def worst(statuses: Iterable[str]) -> str:
    return max(statuses, key=_RANK.__getitem__, default=PASS)


def aggregate(check: str, children: List[Report], **evidence) -> Report:
    return Report(check, worst(c.status for c in children), evidence, children)


def _leaf(check: str, status: str, **evidence) -> Report:
    return Report(check, status, evidence)


# ---------------------------------------------------------------------------
# membership helpers

def expect_in(check: str, e: int, y: int, fuel: int, **evidence) -> Report:
    r = run_index(e, y, fuel)
    if isinstance(r, Halted):
        return _leaf(check, PASS, ticks=r.ticks, fuel=fuel, **evidence)
    return _leaf(check, INCONCLUSIVE, fuel=fuel, **evidence)


def expect_unknown(check: str, e: int, ys: Iterable[int], fuel: int, **evidence) -> Report:
    """Every probe must stay Unknown; a halt on an excluded y is a failure."""
    ys = list(ys)
    for y in ys:
        r = run_index(e, y, fuel)
        if isinstance(r, Halted):
            return _leaf(check, FAIL, counterexample=y, ticks=r.ticks, fuel=fuel, **evidence)
    return _leaf(check, PASS, probes=len(ys), fuel=fuel, **evidence)


# ---------------------------------------------------------------------------
# extensional equality

def check_extensional(e1: int, e2: int, budget: CheckBudget = CheckBudget()) -> Report:
    children = []
    for x in budget.samples:
        r1, r2 = run_index(e1, x, budget.fuel), run_index(e2, x, budget.fuel)
        if isinstance(r1, Halted) != isinstance(r2, Halted):
            # give the other run room to halt later
            late = 10 * budget.fuel
            r1, r2 = run_index(e1, x, late), run_index(e2, x, late)
        name = f"x={x}"
        if isinstance(r1, Halted) and isinstance(r2, Halted):
            status = PASS if r1.value == r2.value else FAIL
            children.append(_leaf(name, status, input=x, values=[r1.value, r2.value],
                                  ticks=[r1.ticks, r2.ticks]))
        else:
            children.append(_leaf(name, INCONCLUSIVE, input=x, fuel=budget.fuel,
                                  halted=[isinstance(r1, Halted), isinstance(r2, Halted)]))
    return aggregate("extensional", children, e1=e1, e2=e2, fuel=budget.fuel)


# ---------------------------------------------------------------------------
# sequences

def check_monotone(elements: Sequence[int]) -> Report:
    for n in range(len(elements) - 1):
        if not elements[n] < elements[n + 1]:
            return _leaf("monotone", FAIL, position=n, left=elements[n], right=elements[n + 1])
    return _leaf("monotone", PASS, length=len(elements))


def check_accessor(handle: SeqHandle, depth: int) -> Report:
    for n in range(depth + 1):
        if handle.element(n) != handle.elements[n]:
            return _leaf("accessor", FAIL, position=n)
    return _leaf("accessor", PASS, depth=depth)


def _random_probes(rng: random.Random, elements: Sequence[int], count: int) -> List[int]:
    """Values strictly between consecutive elements or below the first; never
    family members."""
    out = []
    for i in range(count):
        j = rng.randrange(len(elements))
        lo = elements[j - 1] + 1 if j else 0
        if elements[j] > lo:
            out.append(rng.randrange(lo, elements[j]))
        else:
            out.append(rng.randrange(elements[j]) if elements[j] else 0)
    return [y for y in out if y not in elements]


def chain_comparand(e: int) -> Optional[int]:
    """For a singleton-chain member: the value its EQ guard compares against.

    The program is smn(g, a); g must be ``Ifz(eq(Snd X, c), 0, diverge)`` with
    c free of ``Snd X``, so c depends only on a and is evaluated once.
    """
    split = match_smn(e)
    if split is None:
        return None
    g, a = split
    t = decode(g)
    if not (isinstance(t, Ifz) and isinstance(t.guard, Add) and isinstance(t.guard.a, Monus)):
        return None
    y, c = t.guard.a.a, t.guard.a.b
    if y != Snd(X) or t.guard.b != Monus(c, y) or t.zero != Num(0) or t.nonzero != DIVERGE:
        return None
    if any(sub == Snd(X) for sub in walk(c)):
        return None
    r = run(c, pair(a, 0), 10**7)
    return r.value if isinstance(r, Halted) else None


def _excluded(kind: str, n: int, depth: int, length: int) -> List[int]:
    """Positions whose elements must not be in W_{e_n}."""
    if kind == SINGLETON_CHAIN:
        return [m for m in range(depth + 1) if m != n + 1]
    if kind == FINITE_CYCLE:
        nxt = (n + 1) % (length + 1)
        return [m for m in range(depth + 1) if m != nxt]
    return list(range(n + 1))


def _included(kind: str, n: int, depth: int, length: int) -> List[int]:
    if kind == SINGLETON_CHAIN:
        return [n + 1] if n < depth else []
    if kind == FINITE_CYCLE:
        return [(n + 1) % (length + 1)]
    return list(range(n + 1, depth + 1))


def _direct_sections(handle: SeqHandle, depth: int, budget: CheckBudget) -> List[Report]:
    el = handle.elements
    kind = handle.kind
    length = int(handle.params.get("length", depth)) if kind == FINITE_CYCLE else depth
    rng = random.Random(budget.seed)
    sections = []
    if kind == VALUE_SEQ:
        cells = []
        for n in range(depth):
            for m in range(depth - n):
                r = run_index(el[n], m, budget.run_fuel)
                want = el[n + m + 1]
                if not isinstance(r, Halted):
                    cells.append(_leaf(f"n={n},m={m}", INCONCLUSIVE, fuel=budget.run_fuel))
                else:
                    cells.append(_leaf(f"n={n},m={m}", PASS if r.value == want else FAIL,
                                       value=r.value, expected=want, ticks=r.ticks))
        return [aggregate("values", cells)]
    positive, negative, structural = [], [], []
    top = depth if kind != SINGLETON_CHAIN else depth - 1
    for n in range(top + 1):
        for m in _included(kind, n, depth, length):
            positive.append(expect_in(f"e{n}->e{m}", el[n], el[m], budget.run_fuel))
        probes = [el[m] for m in _excluded(kind, n, depth, length)]
        probes += _random_probes(rng, el, max(0, budget.probes - len(probes)))
        negative.append(expect_unknown(f"e{n}", el[n], probes[:max(budget.probes, 1)], budget.fuel))
        if kind in (SINGLETON_CHAIN, FINITE_CYCLE) and n < len(el):
            want = el[_included(kind, n, depth, length)[0]] if _included(kind, n, depth, length) else None
            got = chain_comparand(el[n])
            status = PASS if got is not None and got == want else FAIL
            structural.append(_leaf(f"e{n}", status, comparand=got, expected=want))
    sections.append(aggregate("positive", positive))
    sections.append(aggregate("negative", negative, seed=budget.seed))
    if structural:
        sections.append(aggregate("structure", structural))
    return sections


def _faithful_expected(handle: SeqHandle, n: int):
    el = handle.elements
    if handle.kind == SINGLETON_CHAIN:
        return oracle.Finite((el[n + 1],))
    if handle.kind == TAIL_SETS:
        return oracle.FamilyTail(n + 1)
    if handle.kind == VALUE_SEQ:
        return oracle.FamilyValues(n + 1)
    if handle.kind == NONCOMPUTABLE_TAIL:
        ks = [int(v) for v in handle.params["b_members"]]
        return oracle.FamilyFilter(ks[n] + 1, int(handle.params["b"]))
    raise ValueError(handle.kind)


def check_linkage(pipe: oracle.Pipeline, budget: CheckBudget, members: int = 3,
                  off_family: int = 10) -> Report:
    """W_e and W_{h(e)} agree: In on the first members, Unknown off-family."""
    h = pipe.family.h(pipe.e)
    checks = []
    for k in range(members):
        y = pipe.member(k)
        checks.append(expect_in(f"e@member{k}", pipe.e, y, budget.oracle_fuel))
        checks.append(expect_in(f"h@member{k}", h, y, budget.oracle_fuel))
    rng = random.Random(budget.seed)
    m0 = pipe.member(0)
    probes = [rng.randrange(m0) for _ in range(off_family // 2)]
    probes += [pipe.member(k) + 1 + rng.randrange(1000) for k in range(off_family - len(probes))]
    checks.append(expect_unknown("e-off-family", pipe.e, probes, budget.fuel))
    checks.append(expect_unknown("h-off-family", h, probes, budget.fuel))
    return aggregate("linkage", checks, seed=budget.seed)


def _faithful_sections(handle: SeqHandle, depth: int, budget: CheckBudget) -> List[Report]:
    pipe = handle.pipeline
    problems = oracle.check_pipeline_structure(pipe)
    sections = [_leaf("pipeline", FAIL if problems else PASS, problems=problems)]
    if problems:
        return sections
    b = int(handle.params["b"]) if "b" in handle.params else None
    cells = []
    top = depth - 1 if handle.kind != NONCOMPUTABLE_TAIL else depth
    for n in range(top + 1):
        want = _faithful_expected(handle, n)
        try:
            got = oracle.oracle_w(pipe, handle.kind, handle.elements[n], b=b, fuel=budget.oracle_fuel)
        except oracle.OracleLimit as exc:
            cells.append(_leaf(f"e{n}", INCONCLUSIVE, reason=str(exc)))
            continue
        except oracle.UnrecognizedTemplate as exc:
            cells.append(_leaf(f"e{n}", FAIL, reason=str(exc)))
            continue
        cells.append(_leaf(f"e{n}", PASS if got == want else FAIL, oracle=oracle.describe(got), expected=oracle.describe(want)))
    sections.append(aggregate("oracle", cells))
    sections.append(check_linkage(pipe, budget))
    if budget.attempt_runs and handle.kind in (SINGLETON_CHAIN, TAIL_SETS):
        runs = [expect_in(f"e{n}->e{n + 1}", handle.elements[n], handle.elements[n + 1], budget.run_fuel)
                for n in range(depth)]
        sections.append(aggregate("positive", runs))
    return sections


def check_sequence(handle: SeqHandle, depth: Optional[int] = None,
                   budget: CheckBudget = CheckBudget()) -> Report:
    last = len(handle.elements) - 1
    depth = last if depth is None else min(depth, last)
    sections = [check_monotone(handle.elements[:depth + 1])]
    if sections[0].status == FAIL:
        return aggregate("sequence", sections, kind=handle.kind, mode=handle.mode)
    sections.append(check_accessor(handle, depth))
    if sections[-1].status == FAIL:
        return aggregate("sequence", sections, kind=handle.kind, mode=handle.mode)
    if handle.mode == FAITHFUL:
        sections += _faithful_sections(handle, depth, budget)
    else:
        sections += _direct_sections(handle, depth, budget)
    return aggregate("sequence", sections, kind=handle.kind, mode=handle.mode, depth=depth)


# ---------------------------------------------------------------------------
# permutations

@dataclass
class MapSpec:
    apply: Callable[[int], int]
    inverse: Optional[Callable[[int], Optional[int]]] = None
    extra_domain: Callable[[int], Iterable[int]] = lambda n: ()


def permutation_spec(perm: RankedPermutation) -> MapSpec:
    return MapSpec(perm.apply, perm.inverse, lambda n: (perm.c(k) for k in range(n + 1)))


def check_permutation(spec: MapSpec, N: int) -> Report:
    """Injectivity and round trips on [0, N] (plus the map's extra domain
    points), and coverage of [0, N // 4] by the images."""
    domain = sorted(set(range(N + 1)) | set(spec.extra_domain(N)))
    seen: Dict[int, int] = {}
    sections = []
    collision = None
    for z in domain:
        w = spec.apply(z)
        if w in seen and collision is None:
            collision = (seen[w], z, w)
        seen.setdefault(w, z)
    if collision:
        sections.append(_leaf("injective", FAIL, arguments=list(collision[:2]), image=collision[2]))
    else:
        sections.append(_leaf("injective", PASS, domain=len(domain)))
    if spec.inverse is not None:
        bad = next((z for z in domain if spec.inverse(spec.apply(z)) != z), None)
        sections.append(_leaf("inverse-after-apply", PASS if bad is None else FAIL, counterexample=bad))
        bad = None
        for w in range(N + 1):
            z = spec.inverse(w)
            if z is None or spec.apply(z) != w:
                bad = w
                break
        sections.append(_leaf("apply-after-inverse", PASS if bad is None else FAIL, counterexample=bad))
    missing = next((w for w in range(N // 4 + 1) if w not in seen), None)
    sections.append(_leaf("coverage", PASS if missing is None else FAIL,
                          segment=N // 4, counterexample=missing))
    return aggregate("permutation", sections, N=N)


# ---------------------------------------------------------------------------
# self-constructing sets

def check_self_constructing(handle: SelfConHandle, samples: Sequence[int],
                            budget: CheckBudget = CheckBudget(), N: int = 500,
                            literal_map: bool = False) -> Report:
    """``samples`` are members of B; the check covers A = {c_j : j in B}."""
    if not samples:
        raise ValueError("samples must be a nonempty list of B-members")
    samples = list(samples)
    members = [handle.c(j) for j in samples]
    sections = []
    if handle.mode == FAITHFUL:
        pipe = handle.params["pipeline"]
        problems = oracle.check_pipeline_structure(pipe)
        sections.append(_leaf("pipeline", FAIL if problems else PASS, problems=problems))
        cells = []
        for j, x in zip(samples, members):
            got = oracle.oracle_w(pipe, "self-constructing", x, b=handle.b, fuel=budget.oracle_fuel)
            want = oracle.FamilyFilter(0, handle.b)
            cells.append(_leaf(f"c{j}", PASS if got == want else FAIL, oracle=oracle.describe(got)))
        sections.append(aggregate("oracle", cells))
    else:
        pairs = [expect_in(f"c{i}->c{j}", x, y, budget.run_fuel)
                 for i, x in zip(samples, members) for j, y in zip(samples, members)]
        sections.append(aggregate("all-pairs", pairs))
        rng = random.Random(budget.seed)
        off = [handle.c(3 * j + 1 + rng.randrange(2)) for j in range(budget.probes // 2)]
        off += [x + 1 + rng.randrange(100) for x in members]
        off += [rng.randrange(handle.c(0)) for _ in range(budget.probes - len(off))]
        sections.append(aggregate("off-family", [expect_unknown(f"c{j}", x, off, budget.fuel)
                                                 for j, x in zip(samples, members)], seed=budget.seed))
    perm = (LiteralPermutation if literal_map else RankedPermutation)(handle.c)
    sections.append(check_permutation(permutation_spec(perm), N))
    fixes = [_leaf(f"pi(c{j})", PASS if perm.apply(x) == j else FAIL, image=perm.apply(x))
             for j, x in zip(samples, members)]
    sections.append(aggregate("pi-of-A", fixes))
    return aggregate("self-constructing", sections, b=handle.b, mode=handle.mode, samples=samples)


# ---------------------------------------------------------------------------
# Tot -> S

def check_tot_case(f_e: int, a: Callable[[int], int], members: Sequence[int],
                   non_members: Sequence[int], budget: CheckBudget = CheckBudget()) -> Report:
    """a_n in W_{f(e)} for n in ``members``; Unknown for ``non_members``;
    and when some a_n is missing, a witness that W_{f(e)} is not
    self-constructing: a member a_m of W_{f(e)} whose own W contains a_n."""
    sections = [expect_in(f"a{n}", f_e, a(n), budget.run_fuel) for n in members]
    if non_members:
        sections.append(expect_unknown("absent", f_e, [a(n) for n in non_members], budget.fuel))
        if members:
            m, n = members[0], non_members[-1]
            sections.append(expect_in(f"a{n}-in-W(a{m})", a(m), a(n), budget.run_fuel))
    return aggregate("tot-reduction", sections, f=f_e)
