"""Command-line interface.

Subcommands: norm, core-norm, rearr, conjugate, cocycle, gns, suite.
Reports go to stdout as JSON with 17-significant-digit floats; a fixed
seed reproduces the suite report byte-for-byte (timing is written to
stderr so it cannot break that).  Exit codes: 0 pass, 1 property
failure, 2 input error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import hashlib
import math
import re
import sys
import time

import numpy as np

from .algebra import Element, make_algebra
from .core_model import core_luxemburg_report
from .errors import ConvergenceError, InputError, ValidationError
from .modular import gns
from .orliczfn import JumpFunction, OrliczFunction, PowerFunction, young_conjugate
from .serialize import (algebra_from_obj, core_from_obj, dumps_report, element_from_obj,
                        element_to_obj, functional_from_obj, isomorphism_from_obj,
                        load_file, orlicz_from_obj, orlicz_to_obj, tabulate)
from .suite import run_suite
from .trace_orlicz import luxemburg_report, rearrangement, rearrangement_csv
from .sampling import SplitMix64
from .functorial import verify_isometry

_DIAG_RE = re.compile(r"^diag\(([^)]*)\)$")


def _parse_args(argv):
    parser = argparse.ArgumentParser(
        prog="ncorlicz",
        description="Orlicz-norm calculus over finite-dimensional trace algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--algebra", help="algebra JSON file")
        p.add_argument("--element", help="element JSON file, or diag(a,b,...) shorthand")
        p.add_argument("--functional", action="append", default=[],
                       help="functional JSON file (repeat for a pair)")
        p.add_argument("--phi", help="Orlicz function JSON file or name (power2, linf, ...)")
        p.add_argument("--core", help="core element JSON file")
        p.add_argument("--iso", help="isomorphism JSON file")
        p.add_argument("--tol", type=float, default=1e-12)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--csv", help="write step data as CSV to this path")
        p.add_argument("--samples", type=int, default=100)
        p.add_argument("--t", type=float, default=0.0, help="cocycle parameter")

    for name in ("norm", "core-norm", "rearr", "conjugate", "cocycle", "gns", "suite"):
        common(sub.add_parser(name))
    return parser.parse_args(argv)


def _need(args, attr, what):
    value = getattr(args, attr)
    if not value:
        raise InputError(f"--{attr} is required for {what}")
    return value


def _load_algebra(args):
    return algebra_from_obj(load_file(_need(args, "algebra", args.command)))


def _load_phi(args) -> OrliczFunction:
    spec = _need(args, "phi", args.command)
    try:
        return orlicz_from_obj(load_file(spec))
    except InputError:
        pass
    try:
        from .orliczfn import from_name
        return from_name(spec)
    except ValidationError as exc:
        raise InputError(str(exc)) from exc


def _load_element(args) -> Element:
    spec = _need(args, "element", args.command)
    m = _DIAG_RE.match(spec.strip())
    if m:
        try:
            entries = [float(tok) for tok in m.group(1).split(",") if tok.strip()]
        except ValueError as exc:
            raise InputError(f"bad diag(...) shorthand: {exc}") from exc
        if not entries:
            raise InputError("diag(...) needs at least one entry")
        if args.algebra:
            alg = _load_algebra(args)
            if alg.nblocks != 1 or alg.block_dims[0] != len(entries):
                raise InputError("diag shorthand needs a single block of matching dimension")
        else:
            alg = make_algebra([len(entries)], [1.0])
        return Element(alg, [np.diag(entries).astype(complex)])
    alg = _load_algebra(args)
    return element_from_obj(alg, load_file(spec))


def _digest(parts) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(str(p).encode())
        h.update(b"\x1f")
    return h.hexdigest()


def _emit(obj) -> None:
    sys.stdout.write(dumps_report(obj) + "\n")


def _cmd_norm(args) -> int:
    x = _load_element(args)
    phi = _load_phi(args)
    rep = luxemburg_report(phi, x, args.tol)
    _emit(rep.to_json_obj())
    return 0


def _cmd_core_norm(args) -> int:
    alg = _load_algebra(args)
    core = core_from_obj(alg, load_file(_need(args, "core", "core-norm")))
    phi = _load_phi(args)
    rep = core_luxemburg_report(phi, core, args.tol)
    _emit(rep.to_json_obj())
    return 0


def _cmd_rearr(args) -> int:
    x = _load_element(args)
    mu = rearrangement(x)
    obj = {"totalMass": mu.total_mass(),
           "steps": [{"start": a, "end": b, "value": v} for a, b, v in mu.boundaries()]}
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(rearrangement_csv(mu))
    _emit(obj)
    return 0


def _cmd_conjugate(args) -> int:
    phi = _load_phi(args)
    conj = young_conjugate(phi)
    try:
        _emit(orlicz_to_obj(conj))
    except InputError:
        _emit(orlicz_to_obj(tabulate(conj)))
    return 0


def _cmd_cocycle(args) -> int:
    alg = _load_algebra(args)
    if len(args.functional) != 2:
        raise InputError("cocycle needs --functional twice: first phi, then omega")
    from .modular import connes_cocycle
    phi = functional_from_obj(alg, load_file(args.functional[0]))
    omega = functional_from_obj(alg, load_file(args.functional[1]))
    _emit(element_to_obj(connes_cocycle(phi, omega, args.t)))
    return 0


def _cmd_gns(args) -> int:
    alg = _load_algebra(args)
    if len(args.functional) != 1:
        raise InputError("gns needs exactly one --functional")
    omega = functional_from_obj(alg, load_file(args.functional[0]))
    data = gns(omega)
    worst = 0.0
    for _, _, _, e in alg.matrix_units():
        lhs = omega(e)
        rhs = np.vdot(data.cyclic_vector, data.represent(e) @ data.cyclic_vector)
        worst = max(worst, abs(lhs - rhs))
    _emit({"dimension": data.dimension, "stateIdentityResidual": worst})
    return 0


def _cmd_suite(args) -> int:
    extra = []
    if args.iso:
        alg = _load_algebra(args)
        iso = isomorphism_from_obj(alg, load_file(args.iso))
        phi = _load_phi(args) if args.phi else PowerFunction(2.0)

        def file_case(rng, samples, tol, _iso=iso, _phi=phi):
            rep = verify_isometry(_iso, _phi, max(3, samples // 10), rng)
            dev = max(rep.max_base_deviation, rep.max_core_deviation)
            return rep.passed, dev, rep.witness

        extra.append(("functorial.file_isometry", file_case))
    t0 = time.perf_counter()
    results = run_suite(args.seed, args.samples, args.tol, extra)
    wall = time.perf_counter() - t0
    failures = [r.case_id for r in results if not r.passed]
    report = {
        "command": "suite",
        "seed": args.seed,
        "samples": args.samples,
        "tol": args.tol,
        "inputsDigest": _digest(["suite", args.seed, args.samples, args.tol,
                                 bool(args.iso)]),
        "model": "restricted step class over the weighted half-line",
        "cases": [r.to_obj() for r in results],
        "pass": not failures,
    }
    _emit(report)
    sys.stderr.write(f"suite: {len(results) - len(failures)}/{len(results)} cases "
                     f"in {wall:.2f}s\n")
    return 0 if not failures else 1


_COMMANDS = {
    "norm": _cmd_norm,
    "core-norm": _cmd_core_norm,
    "rearr": _cmd_rearr,
    "conjugate": _cmd_conjugate,
    "cocycle": _cmd_cocycle,
    "gns": _cmd_gns,
    "suite": _cmd_suite,
}


def main(argv=None) -> int:
    try:
        args = _parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return _COMMANDS[args.command](args)
    except (InputError, ValidationError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2
    except ConvergenceError as exc:
        sys.stderr.write(f"numeric failure: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
