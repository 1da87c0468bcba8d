"""Command-line interface.

Every command prints one JSON report on stdout.  Exit codes: 0 success,
1 internal error, 2 invalid input, 3 size cap exceeded.  Caps and tolerances
default to the ``WEAKISO_*`` environment variables and can be overridden with
``--set name=value``.
"""

from __future__ import annotations

import argparse
import contextlib
import dataclasses
import datetime as _dt
import hashlib
import json
import math
import os
import sys
import warnings
from typing import Dict, List, Optional, Sequence

from . import __version__
from .config import Settings, settings
from .curvature import curvature_set, is_weakly_isometric_via_curvature, reduced_curvature_set
from .diagrams import Diagram, bottleneck_distance, min_rescaled_interleaving, stability_check
from .errors import CapExceeded, InfiniteMismatch, InvalidInput
from .gh import gh_distance, min_rescaled_gh
from .generate import KINDS, random_space
from .io import FORMATS, dumps, file_digest, read_space, write_space
from .isometry import brute_force_weak_isometry, canonicalize, is_weakly_isometric
from .space import FiniteMetricSpace
from .topology import BAR_CONVENTION, persistence

SCHEMA_VERSION = 1
EXIT_OK, EXIT_INTERNAL, EXIT_INVALID, EXIT_CAP = 0, 1, 2, 3


def _jsonable(obj):
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalars
        return _jsonable(obj.item())
    return obj


def _canonical_json(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, separators=(",", ":"))


class Reporter:
    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.inputs: List[Dict[str, str]] = []
        self.conventions: Dict[str, object] = {}

    def load(self, path: str) -> FiniteMetricSpace:
        self.inputs.append({"path": path, "sha256": file_digest(path)})
        return read_space(path, self.args.format)

    def build(self, result: dict, error: Optional[dict] = None) -> dict:
        echo = {k: v for k, v in sorted(vars(self.args).items()) if k not in ("func", "report")}
        body = {
            "schema_version": SCHEMA_VERSION,
            "tool": "weakiso",
            "version": __version__,
            "command": echo,
            "inputs": self.inputs,
            "conventions": {"bar_convention": BAR_CONVENTION, **self.conventions},
            "tolerances": dataclasses.asdict(settings()),
            "result": result,
        }
        if error is not None:
            body["error"] = error
        body = _jsonable(body)
        body["digest"] = hashlib.sha256(_canonical_json(body).encode()).hexdigest()
        body["timestamp"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
        return body


def _labels_map(X: FiniteMetricSpace, Y: FiniteMetricSpace, phi) -> Dict[str, str]:
    return {X.labels[i]: Y.labels[j] for i, j in enumerate(phi)}


def cmd_validate(args, rep: Reporter) -> dict:
    X = rep.load(args.file)
    return {"valid": True, "n": X.n, "labels": list(X.labels)}


def cmd_compare(args, rep: Reporter) -> dict:
    X, Y = rep.load(args.x), rep.load(args.y)
    methods = ["canonical", "brute", "curvature"] if args.method == "all" else [args.method]
    if args.tol < 0:
        raise InvalidInput("--tol must be non-negative")
    if args.tol > 0 and methods != ["canonical"]:
        raise InvalidInput("--tol applies to the canonical method only")
    verdicts = {}
    for m in methods:
        if m == "canonical":
            verdicts[m] = bool(is_weakly_isometric(X, Y, args.tol))
        elif m == "brute":
            verdicts[m] = brute_force_weak_isometry(X, Y)
        else:
            verdicts[m] = is_weakly_isometric_via_curvature(X, Y)
    value = verdicts[methods[0]]
    if len(set(verdicts.values())) != 1:
        raise RuntimeError(f"decision paths disagree: {verdicts}")
    out = {"weakly_isometric": value, "verdicts": verdicts}
    if value:
        w = is_weakly_isometric(X, Y, args.tol)
        cx, cy = canonicalize(X, args.tol), canonicalize(Y, args.tol)
        out["bijection"] = _labels_map(X, Y, w.bijection)
        out["psi_table"] = [[a, b] for a, b in zip(cx.values, cy.values)]
    return out


def _factor(args) -> float:
    return 1.0 if args.distortion_convention else 0.5


def cmd_gh(args, rep: Reporter) -> dict:
    X, Y = rep.load(args.x), rep.load(args.y)
    rep.conventions["distortion_factor"] = _factor(args)
    res = gh_distance(X, Y)
    return {
        "value": res.distortion * _factor(args),
        "distortion": res.distortion,
        "correspondence": [[X.labels[i], Y.labels[j]] for i, j in res.correspondence.sorted_pairs()],
    }


def cmd_dhat(args, rep: Reporter) -> dict:
    X, Y = rep.load(args.x), rep.load(args.y)
    f = _factor(args)
    rep.conventions["distortion_factor"] = f
    sides = {}
    for name, (A, B) in (("x_rescaled", (X, Y)), ("y_rescaled", (Y, X))):
        r = min_rescaled_gh(A, B)
        sides[name] = {
            "value": 2 * r.value * f,
            "attained": r.attained,
            "values": [[a, b] for a, b in r.values],
            "correspondence": [[A.labels[i], B.labels[j]] for i, j in r.correspondence.sorted_pairs()],
        }
    return {"value": sides["x_rescaled"]["value"] + sides["y_rescaled"]["value"], **sides}


def cmd_persistence(args, rep: Reporter) -> dict:
    X = rep.load(args.file)
    rep.conventions["field_char"] = args.field
    out = {}
    if args.canonicalize:
        c = canonicalize(X)
        X = c.space
        out["canonical_distances"] = [[float(v) for v in row] for row in X.dist]
    bc = persistence(X, args.max_dim, args.field)
    out["records"] = bc.records()
    return out


def _diagrams(args, rep: Reporter, dim: int):
    X, Y = rep.load(args.x), rep.load(args.y)
    rep.conventions["field_char"] = args.field
    bx = persistence(X, dim, args.field)
    by = persistence(Y, dim, args.field)
    return Diagram.from_barcode(bx, dim), Diagram.from_barcode(by, dim)


def _diagram_json(D: Diagram) -> list:
    return [[b, d] for b, d in D.points]


def cmd_bottleneck(args, rep: Reporter) -> dict:
    A, B = _diagrams(args, rep, args.dim)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", InfiniteMismatch)
        value = bottleneck_distance(A, B)
    return {"dim": args.dim, "value": value, "x_diagram": _diagram_json(A), "y_diagram": _diagram_json(B),
            "infinite_mismatch": any(issubclass(w.category, InfiniteMismatch) for w in caught)}


def cmd_dtilde(args, rep: Reporter) -> dict:
    A, B = _diagrams(args, rep, args.dim)
    ab, ba = min_rescaled_interleaving(A, B), min_rescaled_interleaving(B, A)
    return {
        "dim": args.dim,
        "value": ab.value + ba.value,
        "y_rescaled": {"value": ab.value, "endpoint_images": [list(p) for p in ab.images]},
        "x_rescaled": {"value": ba.value, "endpoint_images": [list(p) for p in ba.images]},
        "x_diagram": _diagram_json(A),
        "y_diagram": _diagram_json(B),
    }


def cmd_check_stability(args, rep: Reporter) -> dict:
    X, Y = rep.load(args.x), rep.load(args.y)
    rep.conventions["field_char"] = args.field
    rep.conventions["distortion_factor"] = 0.5
    r = stability_check(X, Y, args.max_dim, args.field)
    return {
        "dhat": r.dhat,
        "bound": 2 * r.dhat,
        "dtilde": {str(k): v for k, v in enumerate(r.dtilde)},
        "holds": {str(k): h for k, h in enumerate(r.holds)},
        "all_hold": r.ok,
        "binding_dim": r.binding_dim,
    }


def cmd_gen_random(args, rep: Reporter) -> dict:
    g = random_space(args.n, args.kind, args.seed, repair=args.repair)
    out = {"n": args.n, "kind": args.kind, "seed": args.seed, "repaired": g.repaired, "attempts": g.attempts}
    if args.out:
        write_space(g.space, args.out, args.format)
        out["out"] = args.out
        out["sha256"] = file_digest(args.out)
    else:
        out["space"] = json.loads(dumps(g.space, "json"))
    return out


def cmd_curvature(args, rep: Reporter) -> dict:
    X = rep.load(args.file)
    K = reduced_curvature_set(X, args.m) if args.reduced else curvature_set(X, args.m)
    forms = sorted(K.canonical_forms(), key=lambda M: M.entries)
    return {
        "m": args.m,
        "reduced": args.reduced,
        "raw_count": len(K),
        "count": len(forms),
        "matrices": [M.array().tolist() for M in forms],
    }


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="weakiso", description="Weak isometry of finite metric spaces.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--format", choices=FORMATS, default=None, help="input/output format (default: by extension)")
    p.add_argument("--set", dest="overrides", action="append", default=[], metavar="NAME=VALUE",
                   help="override a cap or tolerance, e.g. gh_cap=6")
    p.add_argument("--report", default=None, help="also write the report to this path")
    sub = p.add_subparsers(dest="command", required=True)

    def pair(name, func, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("x")
        s.add_argument("y")
        s.set_defaults(func=func)
        return s

    s = sub.add_parser("validate", help="check the metric axioms")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = pair("compare", cmd_compare, "decide weak isometry")
    s.add_argument("--method", choices=["canonical", "brute", "curvature", "all"], default="canonical")
    s.add_argument("--tol", type=float, default=0.0, help="merge distances closer than this (canonical method)")

    for name, func in (("gh", cmd_gh), ("dhat", cmd_dhat)):
        s = pair(name, func, f"exact {name}")
        s.add_argument("--distortion-convention", action="store_true",
                       help="report the distortion itself instead of half of it")

    s = sub.add_parser("persistence", help="Rips barcode")
    s.add_argument("file")
    s.add_argument("--max-dim", type=int, default=1)
    s.add_argument("--field", type=int, default=2)
    s.add_argument("--canonicalize", action="store_true")
    s.set_defaults(func=cmd_persistence)

    for name, func in (("dtilde", cmd_dtilde), ("bottleneck", cmd_bottleneck)):
        s = pair(name, func, f"{name} between the dimension-k diagrams")
        s.add_argument("--dim", type=int, default=1)
        s.add_argument("--field", type=int, default=2)

    s = pair("check-stability", cmd_check_stability, "check dtilde_k <= 2 dhat")
    s.add_argument("--max-dim", type=int, default=1)
    s.add_argument("--field", type=int, default=2)

    s = sub.add_parser("gen-random", help="random metric space")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--kind", choices=KINDS, default="uniform")
    s.add_argument("--out", default=None)
    s.add_argument("--repair", action="store_true", help="shortest-path completion instead of resampling")
    s.set_defaults(func=cmd_gen_random)

    s = sub.add_parser("curvature", help="canonical forms of a curvature set")
    s.add_argument("file")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--reduced", action="store_true")
    s.set_defaults(func=cmd_curvature)
    return p


@contextlib.contextmanager
def _overrides(items: Sequence[str]):
    names = {f.name for f in dataclasses.fields(Settings)}
    saved = {}
    try:
        for item in items:
            name, sep, value = item.partition("=")
            name = name.strip().lower()
            if not sep or name not in names:
                raise InvalidInput(f"bad --set {item!r}; known names: {', '.join(sorted(names))}")
            key = "WEAKISO_" + name.upper()
            saved.setdefault(key, os.environ.get(key))
            os.environ[key] = value.strip()
        settings()  # fail early on unparsable values
        yield
    finally:
        for key, old in saved.items():
            if old is None:
                os.environ.pop(key, None)
            else:
                os.environ[key] = old


def _error(exc: BaseException) -> dict:
    out = {"type": type(exc).__name__, "message": str(exc)}
    if getattr(exc, "witness", None) is not None:
        out["witness"] = list(exc.witness)
    return out


def _run(args, rep: Reporter):
    try:
        result = args.func(args, rep)
    except InvalidInput as exc:
        return EXIT_INVALID, {}, _error(exc)
    except CapExceeded as exc:
        return EXIT_CAP, {}, _error(exc)
    except (OSError, ValueError) as exc:
        return EXIT_INVALID, {}, _error(exc)
    except Exception as exc:  # noqa: BLE001 - reported as exit 1
        return EXIT_INTERNAL, {}, _error(exc)
    if args.command == "check-stability" and not result["all_hold"]:
        return EXIT_INTERNAL, result, None
    return EXIT_OK, result, None


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    rep = Reporter(args)
    try:
        with _overrides(args.overrides):
            code, result, error = _run(args, rep)
            report = rep.build(result, error)
    except InvalidInput as exc:
        code, error = EXIT_INVALID, _error(exc)
        report = rep.build({}, error)
    if error is not None:
        print(f"weakiso: {error['type']}: {error['message']}", file=sys.stderr)
    text = json.dumps(report, indent=2, sort_keys=True)
    print(text)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
