"""Command line: generate, reduce, solve, verify certificates and run equivalence suites.

Exit codes: 0 all checks pass, 1 a semantic failure was found, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Dict, List, Optional, Sequence

from ..core import (CertKind, CnfInstance, verify_certificate, verify_hub, verify_path_decomposition,
                    verify_tree_depth_forest)
from .. import oracles as O
from . import registry, serialize
from .generators import KINDS, gen_planted
from .instances import QUESTIONS, decide
from .trials import PIPELINES, check_equivalence, check_pipeline

OK, FAIL, USAGE = 0, 1, 2


def _value(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def _pairs(items: Optional[Sequence[str]]) -> Dict[str, Any]:
    out = {}
    for item in items or ():
        key, eq, val = item.partition("=")
        if not eq:
            raise ValueError(f"expected key=value, got {item!r}")
        out[key] = _value(val)
    return out


def _read(path: str):
    text = sys.stdin.read() if path == "-" else open(path).read()
    return serialize.read(text)


def _write(path: Optional[str], text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_gen(args) -> int:
    inst = gen_planted(args.kind, _pairs(args.params), args.seed)
    if args.dimacs:
        if not isinstance(inst.payload, CnfInstance):
            raise ValueError("--dimacs needs a CNF kind")
        _write(args.out, serialize.to_dimacs(inst.payload))
    else:
        _write(args.out, serialize.dumps(inst) + "\n")
    return OK


def cmd_reduce(args) -> int:
    inst = _read(args.input)
    outcome = registry.get(args.id).run(inst, _pairs(args.opt))
    _write(args.out, serialize.dumps(outcome.instance) + "\n")
    bad = [n for n, ok in outcome.checks if not ok] + [b[0] for b in outcome.bounds if not b[3]]
    for name in bad:
        print(f"violated: {name}", file=sys.stderr)
    return FAIL if bad else OK


def cmd_solve(args) -> int:
    inst = _read(args.input)
    if args.oracle != "auto":
        inst = registry.frame_as(inst, args.oracle)
    verdict = decide(inst)
    print(json.dumps(verdict.as_json()) if args.json else f"{inst.question}: {verdict}")
    return OK


def cmd_verify(args) -> int:
    inst = _read(args.input)
    p = inst.payload
    if isinstance(p, CnfInstance):
        cert = p.certificate
        ok = cert is not None and verify_certificate(p)
    else:
        cert = inst.certificate
        checker = {CertKind.TREE_DEPTH_FOREST: verify_tree_depth_forest, CertKind.HUB: verify_hub,
                   CertKind.PATH_DECOMPOSITION: verify_path_decomposition}.get(cert.kind) if cert else None
        ok = checker is not None and checker(p, cert)
    print(f"{cert.kind.value if cert else 'no certificate'}: {'verified' if ok else 'FAILED'}")
    return OK if ok else FAIL


def _report(result, as_json: bool, verbose: bool) -> int:
    if as_json:
        print(json.dumps(result.as_json(), indent=1))
    else:
        for r in result.reports:
            if verbose or not r.passed:
                print(r.line() + ("" if r.passed else "  " + "; ".join(r.failures())))
        print(f"{result.name}: {len(result.reports) - len(result.failed)}/{len(result.reports)} passed")
    return OK if result.passed else FAIL


def cmd_check(args) -> int:
    result = check_equivalence(args.id, args.trials, args.seed, fault=args.fault, jobs=args.jobs)
    return _report(result, args.json, args.verbose)


def cmd_pipeline(args) -> int:
    result = check_pipeline(args.spec, args.trials, args.seed, fault=args.fault, jobs=args.jobs)
    return _report(result, args.json, args.verbose)


def cmd_list(args) -> int:
    for r in registry.REGISTRY.values():
        print(f"{r.rid:20s} {'|'.join(r.source):16s} -> {r.target:16s} {r.doc}")
    for name, spec in PIPELINES.items():
        print(f"pipeline {name:26s} {spec.name}  ({spec.theorem_tag})")
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sethlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate an instance with planted structure")
    g.add_argument("--kind", required=True, choices=KINDS)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--params", nargs="*", metavar="KEY=VALUE", help="generator and question parameters")
    g.add_argument("--out", help="output file (default stdout)")
    g.add_argument("--dimacs", action="store_true", help="write DIMACS instead of a bundle")
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("reduce", help="apply one reduction to a bundle")
    r.add_argument("--id", required=True, choices=registry.ids())
    r.add_argument("--in", dest="input", required=True)
    r.add_argument("--out")
    r.add_argument("--opt", nargs="*", metavar="KEY=VALUE")
    r.set_defaults(func=cmd_reduce)

    s = sub.add_parser("solve", help="answer a bundle's question with the ground-truth oracle")
    s.add_argument("--oracle", default="auto", choices=["auto", *QUESTIONS])
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify-cert", help="check the structure certificate of a bundle or DIMACS file")
    v.add_argument("--in", dest="input", required=True)
    v.set_defaults(func=cmd_verify)

    for name, func, key, choices in (("check-equivalence", cmd_check, "--id", registry.ids()),
                                     ("pipeline", cmd_pipeline, "--spec", list(PIPELINES))):
        c = sub.add_parser(name, help="oracle equivalence over sampled instances")
        c.add_argument(key, required=True, choices=choices)
        c.add_argument("--trials", type=int, default=50)
        c.add_argument("--seed", type=int, default=0)
        c.add_argument("--jobs", type=int, default=1)
        c.add_argument("--fault", action="store_true", help="corrupt every output; all trials should fail")
        c.add_argument("--json", action="store_true")
        c.add_argument("--verbose", action="store_true")
        c.set_defaults(func=func)

    ls = sub.add_parser("list", help="list reductions and pipelines")
    ls.set_defaults(func=cmd_list)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except serialize.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return USAGE
    except (ValueError, TypeError, OSError, O.TooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
