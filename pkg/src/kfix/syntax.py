"""Parenthesized text syntax for KF programs.

    (num N)  x  (var I)  (add A B)  (monus A B)  (ifz G Z NZ)  (pr A B)
    (fst A)  (snd A)  (mu B)  (step E X S)  (smn P A)  (pad E K)

plus the macros ``(univ E X)``, ``(eq A B)`` and ``diverge``, which expand
on parsing and are never re-sugared when printing. ``;`` starts a comment.
"""

from __future__ import annotations

import re
from typing import List, Tuple

from .terms import (
    DIVERGE, Add, Fst, Ifz, Input, Monus, Mu, Num, Pad, Pr, Smn, Snd, Step, Term,
    Var, X, check, eq, univ,
)


class ProgramSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


_TOKEN = re.compile(r"\s+|;[^\n]*|\(|\)|[^\s()]+")

_FORMS = {
    "add": (Add, 2), "monus": (Monus, 2), "ifz": (Ifz, 3), "pr": (Pr, 2),
    "fst": (Fst, 1), "snd": (Snd, 1), "mu": (Mu, 1), "step": (Step, 3),
    "smn": (Smn, 2), "pad": (Pad, 2), "univ": (univ, 2), "eq": (eq, 2),
}
_NAMES = {cls: name for name, (cls, _) in _FORMS.items() if isinstance(cls, type)}


def _tokens(text: str) -> List[Tuple[str, int, int]]:
    out = []
    line, col = 1, 1
    for m in _TOKEN.finditer(text):
        tok = m.group()
        if tok.strip() and not tok.startswith(";"):
            out.append((tok, line, col))
        newlines = tok.count("\n")
        if newlines:
            line += newlines
            col = len(tok) - tok.rfind("\n")
        else:
            col += len(tok)
    return out


def _natural(tok: str, line: int, col: int) -> int:
    if not tok.isdigit():
        raise ProgramSyntaxError(f"expected a natural number, got {tok!r}", line, col)
    return int(tok)


def parse_program(text: str, validate: bool = True) -> Term:
    """Parse one program; with ``validate``, reject unbound ``var`` indices."""
    toks = _tokens(text)
    end = (text.count("\n") + 1, len(text) - text.rfind("\n"))
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else ("", *end)

    def expr() -> Term:
        nonlocal pos
        tok, line, col = peek()
        if not tok:
            raise ProgramSyntaxError("unexpected end of input", line, col)
        pos += 1
        if tok == "x":
            return X
        if tok == "diverge":
            return DIVERGE
        if tok == ")":
            raise ProgramSyntaxError("unexpected ')'", line, col)
        if tok != "(":
            raise ProgramSyntaxError(f"unknown atom {tok!r}", line, col)
        head, hline, hcol = peek()
        if not head or head in "()":
            raise ProgramSyntaxError("expected a form name", hline, hcol)
        pos += 1
        if head in ("num", "var"):
            ntok, nline, ncol = peek()
            if not ntok:
                raise ProgramSyntaxError("unexpected end of input", nline, ncol)
            pos += 1
            value = _natural(ntok, nline, ncol)
            node = Num(value) if head == "num" else Var(value)
        elif head in _FORMS:
            build, arity = _FORMS[head]
            node = build(*(expr() for _ in range(arity)))
        else:
            raise ProgramSyntaxError(f"unknown form {head!r}", hline, hcol)
        close, cline, ccol = peek()
        if close != ")":
            raise ProgramSyntaxError(f"expected ')' to close {head!r}", cline, ccol)
        pos += 1
        return node

    term = expr()
    if pos < len(toks):
        tok, line, col = toks[pos]
        raise ProgramSyntaxError(f"trailing input {tok!r}", line, col)
    if validate:
        check(term)
    return term


def print_program(t: Term) -> str:
    """Normalized text: single spaces, no macros."""
    out: List[str] = []
    stack: list = [t]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
            continue
        if isinstance(item, Input):
            out.append("x")
        elif isinstance(item, Num):
            out.append(f"(num {item.n})")
        elif isinstance(item, Var):
            out.append(f"(var {item.i})")
        else:
            kids = [getattr(item, f) for f in item.__dataclass_fields__]
            parts = ["(" + _NAMES[type(item)]]
            for k in kids:
                parts += [" ", k]
            parts.append(")")
            stack.extend(reversed(parts))
    return "".join(out)


def normalize(text: str) -> str:
    return print_program(parse_program(text))
