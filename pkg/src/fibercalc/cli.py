"""Command-line front end.

Exit codes: 0 success, 1 invariant/classification mismatch or failed
expectation, 2 parse error, 3 resource cap.  Given the same inputs and seed
the emitted report bytes are identical run to run.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from .fincat import FinCatError, SizeCapExceeded
from .classify import Classifier, MissingPullback
from .catclasses import analyze_functor, comma_factorization
from .formats import load, ParseError, serialize_text, serialize_json
from .report import render
from .props import run_property_suites
from .corpus import verify_table_row, RowNotFiniteScale


@dataclass
class JobConfig:
    command: str
    inputs: tuple = ()
    ambient: int = None
    bound: int = None
    cap_objects: int = 5000
    cap_arrows: int = 200000
    seed: str = "0"
    fmt: str = "text"
    row: str = None
    extra: dict = None


def _emit(doc, cfg):
    sys.stdout.write(render(doc, cfg.fmt))


def _check_caps(doc, cfg):
    for name, C in doc.categories.items():
        if len(C.objects) > cfg.cap_objects or len(C.arrows) > cfg.cap_arrows:
            raise SizeCapExceeded(f"category {name} exceeds the size caps")


def cmd_validate(cfg):
    doc = load(cfg.inputs[0])
    _check_caps(doc, cfg)
    _emit({"command": "validate", "input": str(cfg.inputs[0]),
           "entities": doc.entity_counts(), "status": "ok"}, cfg)
    return 0


def cmd_classify(cfg):
    doc = load(cfg.inputs[0])
    _check_caps(doc, cfg)
    name = cfg.extra["indexed"]
    arrow = cfg.extra["arrow"]
    X = doc.indexed[name]
    cl = Classifier(X, mode=cfg.extra.get("mode", "nested"))
    try:
        r = cl.classify(arrow)
    except MissingPullback as e:
        _emit({"command": "classify", "indexed": name, "arrow": arrow,
               "error": "MissingPullback", "detail": str(e)}, cfg)
        return 1
    _emit({"command": "classify", "indexed": name, "arrow": arrow,
           "base": r.base, "scope": r.scope, "mode": r.mode,
           "verdicts": {"left_bc": r.left_bc, "right_bc": r.right_bc,
                        "smooth": r.smooth, "proper": r.proper,
                        "pre_acyclic": r.pre_acyclic, "acyclic": r.acyclic,
                        "localic": r.localic},
           "witnesses": {k: repr(v) for k, v in r.witnesses.items()}}, cfg)
    return 0


def cmd_bc(cfg):
    doc = load(cfg.inputs[0])
    _check_caps(doc, cfg)
    name = cfg.extra["indexed"]
    arrow = cfg.extra["arrow"]
    side = cfg.extra.get("side", "left")
    X = doc.indexed[name]
    try:
        rep = Classifier(X).bc(arrow, side)
    except MissingPullback as e:
        _emit({"command": "bc", "error": "MissingPullback",
               "detail": str(e)}, cfg)
        return 1
    _emit({"command": "bc", "indexed": name, "arrow": arrow, "side": side,
           "holds": rep.holds, "squares_checked": rep.squares_checked,
           "scope": rep.scope, "witness": repr(rep.witness)}, cfg)
    return 0


def cmd_functor_class(cfg):
    doc = load(cfg.inputs[0])
    _check_caps(doc, cfg)
    F = doc.functors[cfg.extra["functor"]]
    r = analyze_functor(F)
    _emit({"command": "functor-class", "functor": F.name,
           "flags": {"discrete_opfib": r.discrete_opfib,
                     "discrete_fib": r.discrete_fib,
                     "cart_fib": r.cart_fib, "cocart_fib": r.cocart_fib,
                     "conduche": r.conduche, "initial": r.initial,
                     "final": r.final},
           "witnesses": {k: repr(v) for k, v in r.witnesses.items()}}, cfg)
    return 0


def cmd_factorize(cfg):
    doc = load(cfg.inputs[0])
    _check_caps(doc, cfg)
    F = doc.functors[cfg.extra["functor"]]
    cf = comma_factorization(F, discretize=cfg.extra.get("discretize", False))
    _emit({"command": "factorize", "functor": F.name,
           "middle_objects": len(cf.middle.objects),
           "composite_equals_input": cf.composite_equals_input,
           "certificates": {k: repr(v) for k, v in cf.certificates.items()}},
          cfg)
    return 0 if cf.composite_equals_input else 1


def cmd_corpus(cfg):
    params = {}
    if cfg.bound is not None:
        params["bound"] = cfg.bound
    if cfg.ambient is not None:
        params["ambient"] = cfg.ambient
    row = cfg.row
    if row in ("finite-space-locale",) and "bound" in params:
        params = {"points": params.pop("bound"), **params}
    if row == "codomain-finset" and "ambient" in params:
        params["guard"] = params.pop("ambient")
    if row in ("codomain-m3", "conduche-suite", "left-fib-strict-smooth",
               "kappa-small-injections", "smooth-proper-bounds",
               "represented-empty", "quantifier-adjoints"):
        params.pop("ambient", None)
        if row in ("codomain-m3", "conduche-suite", "left-fib-strict-smooth",
                   "smooth-proper-bounds", "represented-empty"):
            params.pop("bound", None)
        if row == "quantifier-adjoints" and "bound" not in params:
            params["bound"] = 5
    doc = verify_table_row(row, **params)
    _emit(doc, cfg)
    return 0 if doc["passed"] else 1


def cmd_props(cfg):
    doc = run_property_suites(cfg.seed, instances=cfg.extra.get("instances", 200))
    _emit(doc, cfg)
    return 0 if doc["passed"] else 1


def cmd_serialize(cfg):
    doc = load(cfg.inputs[0])
    if cfg.fmt == "structured":
        sys.stdout.write(serialize_json(doc) + "\n")
    else:
        sys.stdout.write(serialize_text(doc))
    return 0


def main(argv=None):
    # SUPPRESS keeps subcommand re-parses from clobbering values given
    # before the subcommand; defaults are applied after parsing
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--format", dest="fmt", choices=["text", "structured"])
    common.add_argument("--ambient", type=int)
    common.add_argument("--bound", type=int)
    common.add_argument("--cap-objects", type=int)
    common.add_argument("--cap-arrows", type=int)
    common.add_argument("--seed")
    p = argparse.ArgumentParser(
        prog="fibercalc",
        description="Exact classification of base maps against finite "
                    "fibered categories.",
        parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", parents=[common],
                        help="parse and certify a .fc/.fc.json file")
    sp.add_argument("input")
    sp = sub.add_parser("classify", parents=[common],
                        help="classify one base arrow")
    sp.add_argument("input")
    sp.add_argument("--indexed", required=True)
    sp.add_argument("--arrow", required=True)
    sp.add_argument("--mode", choices=["nested", "single"], default="nested")
    sp = sub.add_parser("bc", parents=[common],
                        help="one Beck-Chevalley aggregate report")
    sp.add_argument("input")
    sp.add_argument("--indexed", required=True)
    sp.add_argument("--arrow", required=True)
    sp.add_argument("--side", choices=["left", "right"], default="left")
    sp = sub.add_parser("functor-class", parents=[common],
                        help="fibration-condition flags")
    sp.add_argument("input")
    sp.add_argument("--functor", required=True)
    sp = sub.add_parser("factorize", parents=[common],
                        help="comma factorization with certificates")
    sp.add_argument("input")
    sp.add_argument("--functor", required=True)
    sp.add_argument("--discretize", action="store_true")
    sp = sub.add_parser("corpus", parents=[common],
                        help="run a golden table row")
    sp.add_argument("--row", required=True)
    sp = sub.add_parser("props", parents=[common],
                        help="seeded randomized property suites")
    sp.add_argument("--instances", type=int, default=200)
    sp = sub.add_parser("serialize", parents=[common],
                        help="canonical round-trip of a file")
    sp.add_argument("input")

    args = p.parse_args(argv)
    cfg = JobConfig(command=args.command,
                    inputs=(getattr(args, "input", None),),
                    ambient=getattr(args, "ambient", None),
                    bound=getattr(args, "bound", None),
                    cap_objects=getattr(args, "cap_objects", 5000),
                    cap_arrows=getattr(args, "cap_arrows", 200000),
                    seed=getattr(args, "seed", "0"),
                    fmt=getattr(args, "fmt", "text"),
                    row=getattr(args, "row", None),
                    extra={k: v for k, v in vars(args).items()
                           if k in ("indexed", "arrow", "side", "functor",
                                    "discretize", "mode", "instances")})
    handler = {
        "validate": cmd_validate,
        "classify": cmd_classify,
        "bc": cmd_bc,
        "functor-class": cmd_functor_class,
        "factorize": cmd_factorize,
        "corpus": cmd_corpus,
        "props": cmd_props,
        "serialize": cmd_serialize,
    }[cfg.command]
    try:
        return handler(cfg)
    except (ParseError,) as e:
        sys.stdout.write(render({"error": "parse", "detail": str(e)}, cfg.fmt))
        return 2
    except (SizeCapExceeded,) as e:
        sys.stdout.write(render({"error": "resource-cap", "detail": str(e)},
                                cfg.fmt))
        return 3
    except RowNotFiniteScale as e:
        sys.stdout.write(render({"error": "row-not-finite-scale",
                                 "detail": str(e)}, cfg.fmt))
        return 2
    except KeyError as e:
        sys.stdout.write(render({"error": "unknown-entity", "detail": repr(e)},
                                cfg.fmt))
        return 2
    except FinCatError as e:
        sys.stdout.write(render({"error": type(e).__name__, "detail": str(e)},
                                cfg.fmt))
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
