"""Command line front end.

Exit codes: 0 success, 2 bad input, 3 singular matrix or system, 4 solver failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional, Sequence

import jsonschema
import numpy as np

from . import schema
from .charmap import all_poles, char2, char3, diff3, pole, pole_is_eigenvalue, rational_map
from .errors import (
    DifferentialUndefinedError,
    NoRootFoundError,
    PolynomialCaseError,
    RankDeficientError,
    SingularMatrixError,
)
from .linearize import BilateralForm, bilateral_matrix, numeric_rank, solve_bilateral
from .quat import Quaternion, format_quaternion, parse_quaternion, qmatmul, qeye
from .sdet import as_qmatrix, inverse, max_norm, sdet, shift
from .solver import SolverConfig, sigma_oracle, spectrum

EXIT_OK, EXIT_INPUT, EXIT_SINGULAR, EXIT_SOLVER = 0, 2, 3, 4


class InputError(ValueError):
    pass


class _Sci(float):
    """A float written in scientific notation."""


# -- output ----------------------------------------------------------------------------
def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    if isinstance(x, _Sci):
        return format(x, ".16e")
    text = format(x, ".17g")
    if not any(c in text for c in ".en"):
        text += ".0"
    return text


def _is_scalar(v) -> bool:
    return v is None or isinstance(v, (bool, int, float, str))


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """Deterministic JSON: insertion-ordered keys, floats with 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)) and not isinstance(obj, float):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(obj if isinstance(obj, _Sci) else float(obj))
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if all(_is_scalar(v) for v in obj):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _qlist(q) -> list:
    return [float(v) for v in q]


def _header(command: str) -> dict:
    return {"schema": schema.SCHEMA_ID, "command": command}


def _unicode_ok(stream) -> bool:
    try:
        "𝐢𝐣𝐤".encode(getattr(stream, "encoding", None) or "ascii")
    except (UnicodeEncodeError, LookupError):
        return False
    return True


# -- input -----------------------------------------------------------------------------
def _read_json(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc.msg} at line {exc.lineno}") from None


def _validate(doc, sch: dict, what: str) -> None:
    try:
        jsonschema.validate(doc, sch)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "top level"
        raise InputError(f"invalid {what} ({where}): {exc.message}") from None


def load_matrix(path: str, orders: Optional[Sequence[int]] = None) -> np.ndarray:
    """Read and validate a matrix document."""
    doc = _read_json(path)
    _validate(doc, schema.MATRIX_DOCUMENT, "matrix document")
    n, rows = doc["n"], doc["entries"]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise InputError(f"dimension mismatch: n = {n} but entries are not {n}x{n}")
    if orders is not None and n not in orders:
        allowed = " or ".join(str(k) for k in orders)
        raise InputError(f"this command needs a matrix of order {allowed}, got {n}")
    try:
        return as_qmatrix(np.array(rows, dtype=float))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _parse_point(text: Optional[str]) -> Quaternion:
    if text is None:
        raise InputError("--at is required")
    try:
        return parse_quaternion(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _config(args) -> SolverConfig:
    kwargs = {}
    if args.tol is not None:
        kwargs["tol_residual"] = args.tol
    if args.seed is not None:
        kwargs["seed"] = args.seed
    if args.starts is not None:
        kwargs["n_starts"] = args.starts
    if args.max_iter is not None:
        kwargs["max_iter"] = args.max_iter
    try:
        return SolverConfig(**kwargs)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _threshold(a: np.ndarray, cfg: SolverConfig) -> float:
    return cfg.tol_residual * (1.0 + max_norm(a)) ** a.shape[0]


# -- commands --------------------------------------------------------------------------
def cmd_spectrum(args, cfg):
    a = load_matrix(args.file, (2, 3))
    report = spectrum(a, cfg)
    out = _header("spectrum")
    out.update(n=report.n, kind=report.kind, degree=report.degree,
               classification_path=report.classification_path)
    roots = []
    failed = 0
    bound = _threshold(a, cfg)
    for r in report.roots:
        entry = {
            "value": _qlist(r.value),
            "residual": _Sci(r.residual),
            "diff_rank": r.diff_rank,
            "newton_iters": r.newton_iters,
        }
        if args.verify:
            sigma = sigma_oracle(a, r.value)
            entry["sigma"] = _Sci(sigma)
            if abs(sigma) > bound * bound + 1e-12 * bound:
                failed += 1
        roots.append(entry)
    out["roots"] = roots
    out["spherical"] = None if report.spherical is None else report.spherical.to_dict()
    code = EXIT_OK
    if failed:
        print(f"error: {failed} root(s) failed the sigma cross-check", file=sys.stderr)
        code = EXIT_SOLVER
    return out, code


def cmd_sdet(args, cfg):
    a = load_matrix(args.file)
    out = _header("sdet")
    out.update(n=a.shape[0], sdet=sdet(a))
    return out, EXIT_OK


def cmd_inverse(args, cfg):
    a = load_matrix(args.file)
    inv = inverse(a)
    resid = float(np.abs(qmatmul(a, inv) - qeye(a.shape[0])).max())
    out = _header("inverse")
    out.update(n=a.shape[0], entries=[[_qlist(q) for q in row] for row in inv], residual=_Sci(resid))
    return out, EXIT_OK


def cmd_charmap(args, cfg):
    a = load_matrix(args.file, (2, 3))
    cmap = char2(a) if a.shape[0] == 2 else char3(a)
    d = cmap.to_dict()
    out = _header("charmap")
    out.update(
        n=a.shape[0],
        kind=d["kind"],
        base_kind=d["base_kind"],
        degree=d["degree"],
        norm_const=d["norm_const"],
        pole=d["pole"],
        permutation=d["permutation"],
        invert=d["invert"],
        shift=d["shift"],
        coefficients=d["coefficients"],
    )
    return out, EXIT_OK


def cmd_pole(args, cfg):
    a = load_matrix(args.file, (3,))
    out = _header("pole")
    try:
        pi = pole(a)
        out.update(pole=_qlist(pi), eigenvalue=pole_is_eigenvalue(a))
    except PolynomialCaseError:
        out.update(pole=None, eigenvalue=None)
    candidates = None
    if args.all:
        candidates = [
            {
                "permutation": c["permutation"],
                "pole": None if c["pole"] is None else _qlist(c["pole"]),
                "eigenvalue": c["eigenvalue"],
            }
            for c in all_poles(a)
        ]
    out["candidates"] = candidates
    return out, EXIT_OK


def _rank_maps(a: np.ndarray) -> list:
    if a.shape[0] == 2:
        return [char2(a)]
    cmap = char3(a)
    if cmap.kind != "rational3":
        return [cmap]
    perms = [(0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]
    return [cmap] + [rational_map(a, p) for p in perms]


def cmd_rank(args, cfg):
    a = load_matrix(args.file, (2, 3))
    lam = _parse_point(args.at)
    out = _header("rank")
    out["at"] = _qlist(lam)
    for cmap in _rank_maps(a):
        try:
            form = cmap.diff(lam) if a.shape[0] == 2 else diff3(a, lam, cmap)
        except DifferentialUndefinedError:
            continue
        m = bilateral_matrix(form)
        out.update(
            map_kind=cmap.kind,
            permutation=list(cmap.permutation),
            terms=[[_qlist(p), _qlist(q)] for p, q in form.terms],
            matrix=m.tolist(),
            rank=numeric_rank(m, cfg.rank_tol, scale=cmap.jacobian_scale(lam)),
        )
        return out, EXIT_OK
    out.update(map_kind=None, permutation=None, terms=[], matrix=[], rank=None)
    return out, EXIT_OK


def cmd_solve_sylvester(args, cfg):
    doc = _read_json(args.file)
    _validate(doc, schema.SYLVESTER_DOCUMENT, "bilateral equation document")
    form = BilateralForm([(Quaternion(*p), Quaternion(*q)) for p, q in doc["terms"]])
    m = bilateral_matrix(form)
    rank = numeric_rank(m, cfg.rank_tol, scale=max(1.0, float(np.abs(m).max())))
    x = solve_bilateral(form, Quaternion(*doc["rhs"]), cfg.rank_tol)
    out = _header("solve-sylvester")
    out.update(x=_qlist(x), rank=rank)
    return out, EXIT_OK


def cmd_verify(args, cfg):
    a = load_matrix(args.file)
    lam = _parse_point(args.at)
    s = sdet(shift(a, lam))
    bound = _threshold(a, cfg)
    out = _header("verify")
    out.update(at=_qlist(lam), sdet=_Sci(s), sigma=_Sci(sigma_oracle(a, lam)),
               threshold=_Sci(bound), eigenvalue=bool(s <= bound))
    return out, EXIT_OK


COMMANDS = {
    "spectrum": cmd_spectrum,
    "sdet": cmd_sdet,
    "inverse": cmd_inverse,
    "charmap": cmd_charmap,
    "pole": cmd_pole,
    "rank": cmd_rank,
    "solve-sylvester": cmd_solve_sylvester,
    "verify": cmd_verify,
}


# -- text rendering --------------------------------------------------------------------
def render_text(out: dict, ascii_only: bool = True) -> str:
    fq = lambda v: format_quaternion(Quaternion(*v), ascii=ascii_only)  # noqa: E731
    cmd = out["command"]
    lines = []
    if cmd == "spectrum":
        lines.append(f"kind: {out['kind']}  degree: {out['degree']}")
        lines.append(f"path: {out['classification_path']}")
        for r in out["roots"]:
            extra = f"  sigma={r['sigma']:.3e}" if "sigma" in r else ""
            lines.append(
                f"root {fq(r['value'])}  residual={r['residual']:.3e}  "
                f"rank={r['diff_rank']}  iters={r['newton_iters']}{extra}"
            )
        sph = out["spherical"]
        if sph is not None:
            lines.append(f"sphere: center {fq(sph['center'])}  radius {sph['radius']!r}")
    elif cmd == "sdet":
        lines.append(repr(out["sdet"]))
    elif cmd == "inverse":
        for row in out["entries"]:
            lines.append("  ".join(fq(q) for q in row))
        lines.append(f"residual: {out['residual']:.3e}")
    elif cmd == "charmap":
        lines.append(f"kind: {out['kind']} ({out['base_kind']})  degree: {out['degree']}  "
                     f"norm_const: {out['norm_const']!r}")
        if out["pole"] is not None:
            lines.append(f"pole: {fq(out['pole'])}")
        if out["invert"]:
            lines.append(f"back map: rho -> rho^-1 + {fq(out['shift'])}")
        lines.append(f"permutation: {out['permutation']}")
        for name, q in out["coefficients"].items():
            lines.append(f"  {name} = {fq(q)}")
    elif cmd == "pole":
        if out["pole"] is None:
            lines.append("pole: none (polynomial case)")
        else:
            lines.append(f"pole: {fq(out['pole'])}  eigenvalue: {str(out['eigenvalue']).lower()}")
        for c in out["candidates"] or []:
            p = "none" if c["pole"] is None else fq(c["pole"])
            lines.append(f"  permutation {c['permutation']}: pole {p}  eigenvalue: {c['eigenvalue']}")
    elif cmd == "rank":
        lines.append(f"rank: {out['rank']}  map: {out['map_kind']} {out['permutation']}")
        for p, q in out["terms"]:
            lines.append(f"  ({fq(p)}) X ({fq(q)})")
    elif cmd == "solve-sylvester":
        lines.append(f"x: {fq(out['x'])}  rank: {out['rank']}")
    elif cmd == "verify":
        lines.append(f"sdet: {out['sdet']:.3e}  sigma: {out['sigma']:.3e}  "
                     f"eigenvalue: {str(out['eigenvalue']).lower()}")
    return "\n".join(lines)


# -- entry point -----------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, help="residual tolerance (default 1e-10)")
    common.add_argument("--seed", type=int, help="seed for Newton starting points (default 0)")
    common.add_argument("--starts", type=int, help="number of Newton starts (default 64)")
    common.add_argument("--max-iter", type=int, dest="max_iter", help="Newton iteration cap (default 100)")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--verify", action="store_true", help="cross-check every root with the sigma determinant")

    parser = argparse.ArgumentParser(prog="quatspec", description="Left spectra of quaternionic matrices.")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "spectrum": "left eigenvalues of a 2x2 or 3x3 matrix",
        "sdet": "Study determinant",
        "inverse": "matrix inverse",
        "charmap": "characteristic map metadata",
        "pole": "pole of a 3x3 matrix",
        "rank": "rank of the differential of the characteristic map at --at",
        "solve-sylvester": "solve sum P_i X Q_i = rhs",
        "verify": "check whether --at is a left eigenvalue",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("file", help="input JSON document ('-' for stdin)")
        if name in ("rank", "verify"):
            p.add_argument("--at", required=True, help="quaternion, e.g. '1-i+2j' or '1,0,0,0'")
        if name == "pole":
            p.add_argument("--all", action="store_true", help="list the pole of every permuted matrix")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        out, code = COMMANDS[args.command](args, cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SingularMatrixError, RankDeficientError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except NoRootFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    if args.format == "json":
        sys.stdout.write(dumps(out) + "\n")
    else:
        sys.stdout.write(render_text(out, ascii_only=not _unicode_ok(sys.stdout)) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
