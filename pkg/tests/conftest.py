import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from kfix.terms import (  # noqa: E402
    Add, Fst, Ifz, Monus, Mu, Num, Pad, Pr, Smn, Snd, Step, Var, X,
)

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def terms(binders=0, max_leaves=12, literal=st.integers(0, 40)):
    """Well-formed terms; Var only appears under enough Mu binders."""

    def leaves(depth):
        options = [st.just(X), literal.map(Num)]
        if depth:
            options.append(st.integers(0, depth - 1).map(Var))
        return st.one_of(options)

    def build(depth, budget):
        if budget <= 1:
            return leaves(depth)
        sub = build(depth, budget // 2)
        under = build(depth + 1, budget // 2)
        return st.one_of(
            leaves(depth),
            st.builds(Add, sub, sub),
            st.builds(Monus, sub, sub),
            st.builds(Ifz, sub, sub, sub),
            st.builds(Pr, sub, sub),
            st.builds(Fst, sub),
            st.builds(Snd, sub),
            st.builds(Mu, under),
            st.builds(Step, sub, sub, sub),
            st.builds(Smn, sub, sub),
            st.builds(Pad, sub, sub),
        )

    return build(binders, max_leaves)


# ---------------------------------------------------------------------------
# acceptance summary: one line per criterion, printed after the run

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
