"""Command line entry point.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for
configuration or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import derivations as der
from . import descent, lie
from .algebra import WindowExceeded
from .config import SessionConfig, fixture_names, load_and_validate, load_fixture
from .report import ConfigurationError, Report, _jsonable
from .simplicity import simplicity_check, verify_certificate
from .suites import SUITES, build_target, run_suite
from .weyl import WeylAlgebra

OK, CHECK_FAILED, CONFIG_ERROR = 0, 1, 2


class InputError(ValueError):
    pass


def _common(p: argparse.ArgumentParser):
    src = p.add_mutually_exclusive_group()
    src.add_argument("--config", help="TOML or JSON configuration file")
    src.add_argument("--fixture", help="name of a bundled configuration")
    p.add_argument("--seed", type=int)
    p.add_argument("--probes", type=int)
    p.add_argument("--truncate-t", type=int, dest="truncate_t", help="maximum total t-degree in windows")
    p.add_argument("--a-window", type=int, dest="a_window", help="radius of the a-box in windows")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("human", "json"), default="human")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coloralg", description="Exact verification of color algebras and their Witt and Weyl type Lie color algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a configuration")
    _common(p)
    p = sub.add_parser("fixtures", help="list bundled configurations")
    p = sub.add_parser("run", help="run a verification suite")
    _common(p)
    p.add_argument("--suite", choices=SUITES, required=True)
    p = sub.add_parser("dims", help="dimensions of A, W and the Weyl type algebras")
    _common(p)
    p = sub.add_parser("simplicity", help="simplicity verdict with a checked certificate")
    _common(p)
    p.add_argument("--target", choices=("W", "Wbar"), default="Wbar")
    p = sub.add_parser("bracket", help="color bracket of two operators")
    _common(p)
    p.add_argument("left")
    p.add_argument("right")
    p = sub.add_parser("table", help="export a bracket table as JSON")
    _common(p)
    p.add_argument("--target", choices=("W", "Wbar", "Wtilde"), default="W")
    p = sub.add_parser("classify", help="classify a canonical derivation on the window")
    _common(p)
    p.add_argument("--p", type=int, required=True, dest="p")
    p = sub.add_parser("dsimple", help="descent chain from an element to 1")
    _common(p)
    p.add_argument("--element", required=True)
    return parser


def load_config(args) -> SessionConfig:
    if args.config:
        try:
            cfg = load_and_validate(args.config)
        except ConfigurationError:
            raise
        except (ValueError, KeyError, TypeError) as exc:
            raise InputError(f"cannot read {args.config}: {exc}") from None
    elif args.fixture:
        try:
            cfg = load_fixture(args.fixture)
        except FileNotFoundError as exc:
            raise InputError(str(exc)) from None
    else:
        raise InputError("give --config FILE or --fixture NAME")
    return cfg.with_overrides(seed=args.seed, probes=args.probes, max_t_degree=args.truncate_t, a_radius=args.a_window)


def _emit(args, human: str, data: dict):
    text = json.dumps(_jsonable(data), indent=2, sort_keys=True) if args.format == "json" else human
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_validate(args) -> int:
    cfg = load_config(args)
    ks = cfg.structure.ksig
    data = {"config": cfg.name, "ok": True, "k": [ks.k1, ks.k2, ks.k3, ks.k4], "field_order": cfg.structure.field.order}
    _emit(args, f"{cfg.name}: valid, k=({ks.k1},{ks.k2},{ks.k3},{ks.k4}), scalars Q(zeta_{cfg.structure.field.order})", data)
    return OK


def cmd_run(args) -> int:
    res = run_suite(load_config(args), args.suite)
    _emit(args, res.human(), res.to_json())
    return OK if res.ok else CHECK_FAILED


def cmd_dims(args) -> int:
    res = run_suite(load_config(args), "dims")
    d = res.details
    if d.get("finite"):
        lines = [f"{res.config}: n={d['n']}"]
        lines += [f"  dim {k} = {d[k]}" for k in ("A", "W", "Weyl", "Wtilde", "Wbar")]
        lines.append("  Wbar colors: " + ", ".join(f"({c}):{m}" for c, m in d["Wbar_colors"].items()))
        lines += [f"  note: {n}" for n in d.get("notes", [])]
    else:
        lines = [f"{res.config}: infinite-dimensional; window counts {json.dumps(d, sort_keys=True, default=str)}"]
    lines.append("PASS" if res.ok else "FAIL")
    _emit(args, "\n".join(lines), res.to_json())
    return OK if res.ok else CHECK_FAILED


def cmd_simplicity(args) -> int:
    cfg = load_config(args)
    alg = cfg.algebra()
    if not lie.is_finite(alg):
        raise InputError("simplicity needs a finite-dimensional configuration (k1 = k2 = k3 = 0)")
    S = build_target(WeylAlgebra(alg), args.target)
    T = lie.LieTable.build(S)
    res = simplicity_check(T, probes=cfg.probes, seed=cfg.seed)
    rep = verify_certificate(T, res)
    data = {"config": cfg.name, "target": args.target, **res.to_json(), "certificate_check": rep.to_dict()}
    lines = [f"{cfg.name} {args.target}: {res.verdict} (dim {res.dim}, method {res.method})"]
    if "ideal" in res.certificate:
        for vec in res.certificate["ideal"]:
            x = S.element({int(k): T.field.parse(v) for k, v in vec.items()})
            lines.append(f"  ideal generator: {x}")
    lines.append(f"  certificate: {'verified' if rep.ok else 'REJECTED'}")
    _emit(args, "\n".join(lines), data)
    return OK if rep.ok else CHECK_FAILED


def cmd_bracket(args) -> int:
    cfg = load_config(args)
    W = WeylAlgebra(cfg.algebra())
    try:
        x, y = W.parse(args.left), W.parse(args.right)
    except (ValueError, KeyError) as exc:
        raise InputError(f"bad operator literal: {exc}") from None
    br = W.bracket(x, y)
    data = {"left": str(x), "right": str(y), "bracket": str(br)}
    if br and br.is_homogeneous():
        data["color"] = list(br.color)
    _emit(args, str(br), data)
    return OK


def cmd_table(args) -> int:
    cfg = load_config(args)
    alg = cfg.algebra()
    if not lie.is_finite(alg):
        raise InputError("tables need a finite-dimensional configuration")
    T = lie.LieTable.build(build_target(WeylAlgebra(alg), args.target))
    data = T.to_json()
    data["config"] = cfg.name
    text = json.dumps(data, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        print(f"wrote {args.target} table (dim {T.dim}) to {args.out}")
    else:
        print(text)
    return OK


def cmd_classify(args) -> int:
    cfg = load_config(args)
    alg = cfg.algebra()
    if not 1 <= args.p <= alg.k:
        raise InputError(f"--p must lie in 1..{alg.k}")
    d = der.canonical(alg, args.p)
    idx = alg.window(cfg.truncation())
    cls = der.classify(alg, d, idx)
    data = {"config": cfg.name, "derivation": str(d), "classification": cls.value, "window": len(idx), "color": list(der.color(alg, d))}
    _emit(args, f"{d}: {cls.value} (on a window of {len(idx)} basis vectors)", data)
    return OK


def cmd_dsimple(args) -> int:
    cfg = load_config(args)
    alg = cfg.algebra()
    try:
        u = alg.parse(args.element)
        w = descent.d_simplicity_descent(alg, u)
    except descent.DescentError as exc:
        rep = Report("d_simplicity_descent", 1)
        rep.fail("descent.stuck", str(exc))
        _emit(args, str(rep), rep.to_dict())
        return CHECK_FAILED
    except (ValueError, KeyError) as exc:
        raise InputError(f"bad element: {exc}") from None
    rep = descent.replay(alg, w)
    data = {**w.to_json(), "replay": rep.to_dict()}
    text = w.to_script() + f"# replay: {'ok' if rep.ok else 'FAILED'}"
    _emit(args, text, data)
    return OK if rep.ok else CHECK_FAILED


COMMANDS = {
    "validate": cmd_validate,
    "run": cmd_run,
    "dims": cmd_dims,
    "simplicity": cmd_simplicity,
    "bracket": cmd_bracket,
    "table": cmd_table,
    "classify": cmd_classify,
    "dsimple": cmd_dsimple,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "fixtures":
        print("\n".join(fixture_names()))
        return OK
    try:
        return COMMANDS[args.command](args)
    except ConfigurationError as exc:
        diag = {"ok": False, "error": "configuration", "reports": [r.to_dict() for r in exc.reports]}
        if args.format == "json":
            print(json.dumps(_jsonable(diag), indent=2, sort_keys=True))
        else:
            print("invalid configuration:", file=sys.stderr)
            for r in exc.reports:
                for v in r.violations:
                    where = f" at {v.where}" if v.where is not None else ""
                    print(f"  [{v.rule}] {v.message}{where}", file=sys.stderr)
        return CONFIG_ERROR
    except (InputError, WindowExceeded, OSError) as exc:
        if args.format == "json":
            print(json.dumps({"ok": False, "error": "input", "message": str(exc)}))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return CONFIG_ERROR


if __name__ == "__main__":
    sys.exit(main())
