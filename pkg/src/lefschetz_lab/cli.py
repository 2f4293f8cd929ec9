"""Command-line front end: analyze a form, generate a family, run the suite.

Exit codes: 0 success, 1 suite fixtures failed, 2 usage or validation error,
3 only-undetermined verdicts under --strict.  The LEFSCHETZ_LAB_SEED
environment variable supplies the default seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Optional

from . import __version__
from .apolar import hilbert_vector, is_unimodal
from .errors import LefschetzLabError
from .families import FAMILY_KINDS, FamilySpec, generate
from .hessian import hess_profile, is_cone
from .lefschetz import key_criterion, slp_generic, wlp_generic, wlp_obstruction
from .polycore import VariableSet, parse_poly
from .reproduce import SuiteConfig, format_table, run_suite

USAGE_ERROR = 2
STRICT_UNDETERMINED = 3


def _default_seed() -> int:
    raw = os.environ.get("LEFSCHETZ_LAB_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lefschetz-lab",
        description=(
            "Exact analysis of the graded algebra attached to a homogeneous "
            "form: Hilbert vector, higher Hessians, Lefschetz properties, "
            "and certified counterexample families."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="analyze a homogeneous form")
    src = pa.add_mutually_exclusive_group(required=True)
    src.add_argument("--poly", help="polynomial text")
    src.add_argument("--in", dest="infile", help="file with polynomial text or a generated instance (JSON)")
    pa.add_argument("--vars", help="comma-separated variable names")
    pa.add_argument("--split", type=int, help="size of the leading x-block")
    pa.add_argument("--mode", choices=("exact", "prob"), default="prob")
    pa.add_argument("--seed", type=int, default=None)
    pa.add_argument("--json", dest="json_path", help="write the full report as JSON")
    pa.add_argument("--max-k", type=int, default=None, help="cap the Hessian profile order")
    pa.add_argument("--strict", action="store_true", help="exit 3 when the only verdicts are undetermined")

    pg = sub.add_parser("generate", help="generate a family instance")
    pg.add_argument("--family", required=True, choices=FAMILY_KINDS)
    for flag in ("n", "m", "d", "k", "e", "r"):
        pg.add_argument(f"--{flag}", type=int, default=None)
    pg.add_argument("--case", choices=("i", "ii", "iii"), default=None)
    pg.add_argument("--variant", choices=("lemma_m2", "minimal", "maximal"), default="lemma_m2")
    pg.add_argument("--seed", type=int, default=None)
    pg.add_argument("--out", help="write the instance as JSON")

    pr = sub.add_parser("reproduce", help="run the acceptance fixture table")
    pr.add_argument("--suite", default="paper")
    pr.add_argument("--json", dest="json_path", help="write the outcome table as JSON")
    pr.add_argument("--seed", type=int, default=None)
    pr.add_argument("--mode", choices=("exact", "prob"), default="prob")
    return parser


def _long_mode(mode: str) -> str:
    return "exact" if mode == "exact" else "probabilistic"


def _load_input(args) -> tuple[str, VariableSet]:
    if args.infile:
        with open(args.infile, "r", encoding="utf-8") as fh:
            text = fh.read().strip()
        if text.startswith("{"):
            data = json.loads(text)
            names = tuple(data["vars"])
            split = data.get("split")
            return data["poly"], VariableSet(names, split)
        poly_text = text
    else:
        poly_text = args.poly
    if not args.vars:
        raise LefschetzLabError("--vars is required unless --in is a generated instance")
    names = tuple(name.strip() for name in args.vars.split(",") if name.strip())
    return poly_text, VariableSet(names, args.split)


def cmd_analyze(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    mode = _long_mode(args.mode)
    poly_text, vs = _load_input(args)
    f = parse_poly(poly_text, vs)
    if f.is_zero():
        raise LefschetzLabError("the zero polynomial has nothing to analyze")
    d = f.degree
    timing: dict[str, float] = {}

    def stage(name: str, fn):
        start = time.perf_counter()
        value = fn()
        timing[name] = round((time.perf_counter() - start) * 1000.0, 3)
        return value

    hv = stage("hilbert", lambda: hilbert_vector(f))
    unimodal = is_unimodal(hv)
    cone = stage("cone", lambda: is_cone(f))
    profile = stage(
        "hess_profile", lambda: hess_profile(f, mode, seed, max_k=args.max_k)
    )
    full_profile = args.max_k is None or args.max_k >= d // 2
    slp = stage("slp", lambda: slp_generic(f, seed=seed)) if full_profile else None
    wlp = stage("wlp", lambda: wlp_generic(f, seed=seed))
    certificates = []
    if vs.has_split:
        for k in range(1, d // 2 + 1):
            cert = key_criterion(f, k)
            if cert is not None:
                certificates.append(cert.to_json_dict())
        for k in range(1, (d + 1) // 2):
            cert = wlp_obstruction(f, k)
            if cert is not None:
                certificates.append(cert.to_json_dict())

    report = {
        "input": {"poly": f.to_text(), "vars": list(vs.names), "split": vs.n_x},
        "degree": d,
        "seed": seed,
        "mode": mode,
        "tool_version": __version__,
        "hilbert": list(hv.dims),
        "unimodal": unimodal,
        "cone": cone.to_json_dict(),
        "hess_profile": [v.to_json_dict() for v in profile],
        "slp": slp.to_json_dict() if slp else {"verdict": "undetermined", "reason": "profile capped by --max-k"},
        "wlp": wlp.to_json_dict(),
        "certificates": certificates,
        "timing_ms": timing,
    }

    print(f"polynomial      {report['input']['poly']}")
    print(f"variables       {', '.join(vs.names)}" + (f"  (x-block size {vs.n_x})" if vs.has_split else ""))
    print(f"degree          {d}")
    print(f"hilbert vector  {tuple(hv.dims)}  unimodal={unimodal}")
    print(f"cone            {cone.is_cone}")
    for k, verdict in enumerate(profile):
        status = "= 0" if verdict.vanishes else "!= 0"
        print(f"hessian[{k}]      {status}   ({verdict.mode})")
    slp_line = report["slp"]["verdict"]
    if slp and slp.level is not None:
        slp_line += f" at order {slp.level}"
    print(f"strong property {slp_line}")
    wlp_line = wlp.verdict
    if wlp.level is not None:
        wlp_line += f" at map A_{wlp.level} -> A_{wlp.level + 1}"
    print(f"weak property   {wlp_line}")
    print(f"certificates    {len(certificates)}")

    if args.json_path:
        with open(args.json_path, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"report written  {args.json_path}")

    if args.strict and wlp.verdict == "undetermined":
        return STRICT_UNDETERMINED
    return 0


_FAMILY_PARAMS = {
    "ikeda": (),
    "exceptional": ("n", "d", "k"),
    "gnp": ("m", "n", "k", "e"),
    "perazzo": ("m", "n", "d"),
    "permutti": ("m", "n", "e", "d"),
    "gn": ("m", "n", "r", "e", "d"),
    "wlpodd": ("n", "d"),
    "thmwlp": ("n", "d"),
    "prop44": ("case",),
}


def cmd_generate(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    kind = args.family
    params: dict = {}
    for name in _FAMILY_PARAMS[kind]:
        value = getattr(args, name)
        if value is None and not (kind == "gnp" and name == "n"):
            raise LefschetzLabError(f"--family {kind} requires --{name}")
        if value is not None:
            params[name] = value
    if kind == "gnp":
        params["variant"] = args.variant
    if kind in ("wlpodd", "thmwlp"):
        params["N"] = params.pop("n")
    spec = FamilySpec(kind, params, seed)
    instance = generate(spec)
    payload = instance.to_json_dict()
    print(instance.f.to_text())
    print(json.dumps(payload, indent=2, sort_keys=True))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0


def cmd_reproduce(args) -> int:
    if args.suite != "paper":
        print(f"unknown suite {args.suite!r}; available: paper", file=sys.stderr)
        return USAGE_ERROR
    seed = args.seed if args.seed is not None else _default_seed()
    config = SuiteConfig(seed=seed, mode=_long_mode(args.mode))
    outcomes = run_suite(config)
    print(format_table(outcomes))
    if args.json_path:
        with open(args.json_path, "w", encoding="utf-8") as fh:
            json.dump([o.to_json_dict() for o in outcomes], fh, indent=2, sort_keys=True)
            fh.write("\n")
    failed = [o for o in outcomes if not o.passed]
    return 1 if failed else 0


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "analyze":
            return cmd_analyze(args)
        if args.command == "generate":
            return cmd_generate(args)
        return cmd_reproduce(args)
    except (LefschetzLabError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
