"""Command-line front end.

Exit status: 0 pass / success, 1 verification failure, 2 inconclusive,
3 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import constructions as C
from . import numbering, recursion, verifier
from .enumeration import w_snapshot
from .machine import Halted, run, run_index
from .numbering import from_decimal, to_decimal
from .syntax import ProgramSyntaxError, parse_program, print_program
from .terms import ScopeError

EXIT_INVALID = 3

THEOREMS = {
    "main": C.thm_main,
    "two": C.thm_two,
    "value": C.value_seq,
}
CATALOG = {
    "constant": lambda c: recursion.constant_transform(recursion.CONSTANT_TARGET if c is None else c),
    "pad-by-one": lambda c: recursion.pad_literal_transform(),
    "swap-to-literal": lambda c: recursion.literal_transform(),
    "identity": lambda c: recursion.identity_transform(),
}


class InvalidInput(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def natural(text: str) -> int:
    try:
        return from_decimal(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a natural number: {text[:40]!r}")


def _emit(obj, as_json: bool, text: Optional[str] = None) -> None:
    if as_json or text is None:
        sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text + "\n")


def _program(args) -> int:
    """Index from --program text, --file, or --index."""
    if getattr(args, "index", None) is not None:
        return args.index
    text = args.program
    if text is None and getattr(args, "file", None):
        with open(args.file) as fh:
            text = fh.read()
    if text is None:
        raise InvalidInput("give a program with --program, --file or --index")
    return numbering.encode(parse_program(text))


def _outcome_json(r) -> dict:
    if isinstance(r, Halted):
        return {"halted": True, "value": to_decimal(r.value), "ticks": to_decimal(r.ticks)}
    return {"halted": False, "fuel": to_decimal(r.fuel)}


# ---------------------------------------------------------------------------
# commands

def cmd_parse(args) -> int:
    text = args.text if args.text is not None else _read(args.file)
    t = parse_program(text)
    out = print_program(t)
    _emit({"program": out, "index": to_decimal(numbering.encode(t))}, args.json, out)
    return 0


def _read(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def cmd_print(args) -> int:
    text = print_program(numbering.decode(args.index))
    _emit({"index": to_decimal(args.index), "program": text}, args.json, text)
    return 0


cmd_decode = cmd_print


def cmd_encode(args) -> int:
    e = _program(args)
    _emit({"index": to_decimal(e)}, args.json, to_decimal(e))
    return 0


def cmd_run(args) -> int:
    if args.index is not None:
        r = run_index(args.index, args.input, args.fuel)
    else:
        text = args.program if args.program is not None else _read(args.file)
        r = run(parse_program(text), args.input, args.fuel)
    out = _outcome_json(r)
    human = f"halted value={out['value']} ticks={out['ticks']}" if r.halted else f"out of fuel ({args.fuel})"
    _emit(out, args.json, human)
    return 0


def cmd_snapshot(args) -> int:
    snap = w_snapshot(args.e, args.s)
    out = {"e": to_decimal(args.e), "s": to_decimal(args.s), "members": [to_decimal(y) for y in snap.members]}
    _emit(out, args.json, " ".join(out["members"]) or "(empty)")
    return 0


def _pair_cmd(fwd, back):
    def cmd(args) -> int:
        if args.unpair is not None:
            a, b = back(args.unpair)
            out = {"n": to_decimal(args.unpair), "a": to_decimal(a), "b": to_decimal(b)}
            _emit(out, args.json, f"{out['a']} {out['b']}")
        else:
            if args.a is None or args.b is None:
                raise InvalidInput("give two naturals, or --unpair N")
            n = fwd(args.a, args.b)
            _emit({"a": to_decimal(args.a), "b": to_decimal(args.b), "n": to_decimal(n)}, args.json, to_decimal(n))
        return 0
    return cmd


cmd_pair = _pair_cmd(numbering.pair, numbering.unpair)
cmd_paper_pair = _pair_cmd(numbering.paper_pair, numbering.paper_unpair)


def cmd_smn(args) -> int:
    e = numbering.smn(args.p, args.a)
    _emit({"index": to_decimal(e)}, args.json, to_decimal(e))
    return 0


def cmd_pad(args) -> int:
    e = numbering.pad(args.e, args.k)
    _emit({"index": to_decimal(e)}, args.json, to_decimal(e))
    return 0


def _transform(args) -> int:
    if args.f is not None:
        return args.f
    return CATALOG[args.transform](args.c)


def cmd_fix(args) -> int:
    f_obj = _transform(args)
    e = recursion.fix(f_obj)
    out = {"f": to_decimal(f_obj), "e": to_decimal(e)}
    if args.check:
        image = recursion.apply_transform(f_obj, e, args.fuel)
        report = verifier.check_extensional(e, image, verifier.CheckBudget(fuel=args.fuel, samples=tuple(range(11))))
        out["report"] = report.to_json()
        _emit(out, args.json, f"{out['e']}\n{report.status}")
        return report.exit_code
    _emit(out, args.json, out["e"])
    return 0


def cmd_family(args) -> int:
    fam = recursion.padded_family(_transform(args))
    members = [fam.member(args.x, k) for k in range(args.count)]
    out = dict(fam.to_json())
    out["x"] = to_decimal(args.x)
    out["members"] = [to_decimal(m) for m in members]
    _emit(out, args.json, "\n".join(out["members"]))
    return 0


def _build(args):
    if args.theorem == "self":
        if args.b is None:
            raise InvalidInput("build --theorem self needs --b")
        return C.self_constructing(args.b, args.mode)
    if args.theorem == "cycle":
        if args.mode != C.DIRECT:
            raise InvalidInput("finite cycles are direct-mode only")
        return C.cycle_handle(args.depth)
    if args.theorem == "noncomputable":
        return C.noncomputable_seq(args.b, args.mode, args.b_members or ())
    return THEOREMS[args.theorem](args.mode, args.depth)


def _write_handle(handle, path: Optional[str], as_json: bool) -> None:
    text = json.dumps(handle.to_json(), sort_keys=True)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    if not path or as_json:
        sys.stdout.write(text + "\n")


def cmd_build(args) -> int:
    handle = _build(args)
    _write_handle(handle, args.out, args.json)
    return 0


def _load_handle(path: str):
    try:
        data = json.loads(_read(path))
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read handle: {exc}")
    try:
        if data.get("kind") == "self-constructing":
            return C.SelfConHandle.from_json(data)
        return C.SeqHandle.from_json(data)
    except (KeyError, ValueError, TypeError, AttributeError) as exc:
        raise InvalidInput(f"not a handle: {exc}")


def cmd_verify(args) -> int:
    handle = _load_handle(args.handle)
    budget = verifier.CheckBudget(fuel=args.probe_fuel, probes=args.probes, seed=args.seed,
                                  run_fuel=args.fuel, attempt_runs=args.attempt_runs)
    if isinstance(handle, C.SelfConHandle):
        report = verifier.check_self_constructing(handle, args.samples or [0], budget, N=args.n)
    else:
        report = verifier.check_sequence(handle, args.depth, budget)
    _emit(report.to_json(), True)
    return report.exit_code


def cmd_reduce_tot(args) -> int:
    red = C.tot_reduction()
    f_e = red.f(args.e)
    out = {"e": to_decimal(args.e), "f": to_decimal(f_e),
           "a": [to_decimal(red.a(n)) for n in range(args.count)]}
    _emit(out, args.json, out["f"])
    return 0


def cmd_export(args) -> int:
    handle = _load_handle(args.handle)
    if args.format == "programs":
        elements = getattr(handle, "elements", None)
        if elements is None:
            raise InvalidInput("only sequence handles export programs")
        lines = [print_program(numbering.decode(e)) for e in elements]
        text = "\n".join(lines)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
        else:
            sys.stdout.write(text + "\n")
        return 0
    _write_handle(handle, args.out, args.json)
    return 0


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS keeps a subcommand from resetting a --json given before it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")

    p = _Parser(prog="kfix", description="KF computability workbench")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, fn, help):
        sp = sub.add_parser(name, help=help, parents=[common])
        sp.set_defaults(fn=fn)
        return sp

    def program_source(sp, index=True):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--program", help="program text")
        g.add_argument("--file", help="file holding program text ('-' for stdin)")
        if index:
            g.add_argument("--index", type=natural, help="program index")

    def transform(sp):
        sp.add_argument("--transform", choices=sorted(CATALOG), default="constant")
        sp.add_argument("--c", type=natural, help="target index for --transform constant (default: x -> x + 1)")
        sp.add_argument("--f", type=natural, help="index of a transformation program (overrides --transform)")

    sp = cmd("parse", cmd_parse, "parse program text and print it normalized")
    sp.add_argument("text", nargs="?")
    sp.add_argument("--file")

    for name, fn in (("print", cmd_print), ("decode", cmd_decode)):
        sp = cmd(name, fn, "print the program with a given index")
        sp.add_argument("index", type=natural)

    sp = cmd("encode", cmd_encode, "index of a program")
    program_source(sp, index=False)
    sp.set_defaults(index=None)

    sp = cmd("run", cmd_run, "run a program with bounded fuel")
    program_source(sp)
    sp.add_argument("--input", type=natural, default=0)
    sp.add_argument("--fuel", type=natural, default=10**6)

    sp = cmd("snapshot", cmd_snapshot, "stage-s approximation W_{e,s}")
    sp.add_argument("--e", type=natural, required=True)
    sp.add_argument("--s", type=natural, required=True)

    for name, fn in (("pair", cmd_pair), ("paper-pair", cmd_paper_pair)):
        sp = cmd(name, fn, "pair two naturals, or split one with --unpair")
        sp.add_argument("a", type=natural, nargs="?")
        sp.add_argument("b", type=natural, nargs="?")
        sp.add_argument("--unpair", type=natural)

    sp = cmd("smn", cmd_smn, "s-m-n specialization")
    sp.add_argument("--p", type=natural, required=True)
    sp.add_argument("--a", type=natural, required=True)

    sp = cmd("pad", cmd_pad, "padded index of the same program")
    sp.add_argument("--e", type=natural, required=True)
    sp.add_argument("--k", type=natural, required=True)

    sp = cmd("fix", cmd_fix, "fixed point of a transformation")
    transform(sp)
    sp.add_argument("--check", action="store_true", help="compare fix(f) with f(fix(f)) on inputs 0..10")
    sp.add_argument("--fuel", type=natural, default=10**6)

    sp = cmd("family", cmd_family, "padded fixed-point family")
    transform(sp)
    sp.add_argument("--x", type=natural, default=0)
    sp.add_argument("--count", type=natural, default=3)

    sp = cmd("build", cmd_build, "build a theorem's handle")
    sp.add_argument("--theorem", required=True,
                    choices=["main", "two", "value", "noncomputable", "cycle", "self"])
    sp.add_argument("--mode", choices=list(C.MODES), default=C.DIRECT)
    sp.add_argument("--depth", type=natural, default=6)
    sp.add_argument("--b", type=natural, help="index of B (self, noncomputable)")
    sp.add_argument("--b-members", type=natural, nargs="*", help="known members of B")
    sp.add_argument("--out")

    sp = cmd("verify", cmd_verify, "check a handle; exit 0 pass, 1 fail, 2 inconclusive")
    sp.add_argument("handle")
    sp.add_argument("--fuel", type=natural, default=10**7, help="fuel for positive runs")
    sp.add_argument("--probe-fuel", type=natural, default=10**6, help="fuel for negative probes")
    sp.add_argument("--probes", type=natural, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--depth", type=natural)
    sp.add_argument("--samples", type=natural, nargs="*", help="B-members to sample (self)")
    sp.add_argument("--n", type=natural, default=500, help="permutation segment (self)")
    sp.add_argument("--attempt-runs", action="store_true",
                    help="also try positive runs of faithful programs")

    sp = cmd("reduce-tot", cmd_reduce_tot, "Tot -> S reduction f(e)")
    sp.add_argument("--e", type=natural, required=True)
    sp.add_argument("--count", type=natural, default=3)

    sp = cmd("export", cmd_export, "rewrite a handle canonically, or list its programs")
    sp.add_argument("handle")
    sp.add_argument("--format", choices=["handle", "programs"], default="handle")
    sp.add_argument("--out")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (InvalidInput, ProgramSyntaxError, ScopeError, C.PromiseViolation) as exc:
        sys.stderr.write(f"kfix: error: {exc}\n")
        return EXIT_INVALID
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"kfix: error: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
