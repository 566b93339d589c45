"""Command line front end.

    ccomplex validate FILE
    ccomplex delta FILE
    ccomplex form FILE [--sign lambda|bl]
    ccomplex pair FILE --v "1,0" --w "1,0" [--sign lambda|bl]
    ccomplex transform FILE --op mirror|reverse|stab0|stab2|sum|connected-sum [...]
    ccomplex boundary FILE [--v ... --w ...]

FILE is a JSON link file or ``catalog:NAME`` for a bundled example.
Exit codes: 0 success, 1 invalid input, 2 mathematical domain error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from importlib import resources
from typing import Any, Dict, List, Optional, Sequence

from .blanchfield import blanchfield_matrix, pair, torsion_order
from .errors import ValidationError
from .exactlinalg import RfMatrix, SingularMatrixError
from .laurent import to_text
from .moves import (
    FormIsometry,
    block_sum,
    connected_sum,
    connected_sum_isometry,
    mirror,
    mirror_isometry,
    reverse,
    reverse_isometry,
    stabilize0,
    stabilize2,
)
from .ratfield import QmodLS, RatFunc, parse_ratfunc, qls_canonical, to_text_rf
from .seifert import (
    BoundarySeifert,
    CMatrix,
    SeifertFamily,
    assemble,
    boundary_matrix,
    boundary_pairing_value,
    closed_form_matrix,
    u_factor,
)

SCHEMA_VERSION = 1
MODES = ("family", "boundary", "matrix")


# ---------------------------------------------------------------------------
# Link files


@dataclass
class LinkFile:
    mode: str
    H: CMatrix
    label: str = ""
    family: Optional[SeifertFamily] = None
    boundary: Optional[BoundarySeifert] = None
    witness: Optional[dict] = None

    @property
    def mu(self) -> int:
        return self.H.mu


def catalog_names() -> List[str]:
    files = resources.files("ccomplex") / "data"
    return sorted(p.name[:-5] for p in files.iterdir() if p.name.endswith(".json"))


def read_text(path: str) -> str:
    if path.startswith("catalog:"):
        name = path[len("catalog:"):]
        res = resources.files("ccomplex") / "data" / f"{name}.json"
        if not res.is_file():
            raise ValidationError(f"no bundled example {name!r}; available: {', '.join(catalog_names())}")
        return res.read_text()
    try:
        with open(path) as f:
            return f.read()
    except OSError as e:
        raise ValidationError(f"cannot read {path}: {e.strerror}") from None


def _int_entry(x, where: str) -> int:
    if isinstance(x, bool):
        raise ValidationError(f"{where}: booleans are not integers")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip())
        except ValueError:
            pass
    raise ValidationError(f"{where}: expected an integer or decimal string, got {x!r}")


def _int_matrix(rows, where: str) -> List[List[int]]:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ValidationError(f"{where}: expected an array of arrays")
    return [[_int_entry(x, f"{where}[{i + 1}][{j + 1}]") for j, x in enumerate(r)] for i, r in enumerate(rows)]


def _require(d: dict, key: str, where: str = "file"):
    if key not in d:
        raise ValidationError(f"{where}: missing field {key!r}")
    return d[key]


def parse_link(data: Dict[str, Any]) -> LinkFile:
    if not isinstance(data, dict):
        raise ValidationError("top level must be a JSON object")
    schema = data.get("schema", SCHEMA_VERSION)
    if schema != SCHEMA_VERSION:
        raise ValidationError(f"unsupported schema version {schema!r}")
    mode = _require(data, "mode")
    label = data.get("label", "")
    if mode == "family":
        mu, n = _require(data, "mu"), _require(data, "n")
        if not isinstance(mu, int) or not isinstance(n, int):
            raise ValidationError("mu and n must be integers")
        mats = _require(data, "matrices")
        if not isinstance(mats, dict):
            raise ValidationError("matrices must be an object keyed by sign strings")
        for key in mats:
            if len(key) != mu or any(ch not in "+-−" for ch in key):
                raise ValidationError(f"bad sign key {key!r}: expected {mu} characters from '+' and '-'")
        fam = SeifertFamily(mu, n, {k: _int_matrix(m, f"matrices[{k!r}]") for k, m in mats.items()}, label)
        return LinkFile(mode, assemble(fam), label, family=fam)
    if mode == "boundary":
        genera = _require(data, "genera")
        if not isinstance(genera, list):
            raise ValidationError("genera must be an array")
        genera = tuple(_int_entry(g, "genera") for g in genera)
        A = _int_matrix(_require(data, "A"), "A")
        b = BoundarySeifert(len(genera), genera, A, label)
        return LinkFile(mode, boundary_matrix(b), label, boundary=b)
    if mode == "matrix":
        mu, n = _require(data, "mu"), _require(data, "n")
        rows = _require(data, "H")
        if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
            raise ValidationError(f"H must be a {n}x{n} array of strings")
        entries = []
        for i, r in enumerate(rows):
            row = []
            for j, x in enumerate(r):
                try:
                    row.append(parse_ratfunc(str(x), mu))
                except (ValueError, ZeroDivisionError) as e:
                    raise ValidationError(f"H[{i + 1}][{j + 1}]: {e}") from None
            entries.append(row)
        H = CMatrix(mu, n, RfMatrix(entries, mu, n))
        return LinkFile(mode, H, label, witness=data.get("witness"))
    raise ValidationError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")


def load_link(path: str) -> LinkFile:
    text = read_text(path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"{path}: malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None
    return parse_link(data)


def matrix_json(M: RfMatrix) -> List[List[str]]:
    return [[to_text_rf(x) for x in row] for row in M.entries]


def link_to_json(H: CMatrix, label: str = "", witness: Optional[dict] = None) -> Dict[str, Any]:
    out = {"schema": SCHEMA_VERSION, "mode": "matrix", "label": label, "mu": H.mu, "n": H.n,
           "H": matrix_json(H.entries)}
    if witness is not None:
        out["witness"] = witness
    return out


def parse_vector(text: str, nvars: int) -> List[RatFunc]:
    parts = [p for p in text.split(",")]
    if not text.strip():
        return []
    try:
        return [parse_ratfunc(p, nvars) for p in parts]
    except (ValueError, ZeroDivisionError) as e:
        raise ValidationError(f"cannot parse vector {text!r}: {e}") from None


# ---------------------------------------------------------------------------
# Text helpers


def delta_text(td) -> str:
    """Symmetrized delta as ``unit*(core)``, e.g. ``t^-1*(t^2 - t + 1)``."""
    unit, core = td.delta_unit, td.delta_core
    if unit.is_one():
        return to_text(core)
    if core.is_one():
        return str(unit)
    body = to_text(core)
    return f"{unit}*({body})" if len(core) > 1 else f"{unit}*{body}"


def _qls_text(q: QmodLS) -> str:
    return to_text_rf(qls_canonical(q))


# ---------------------------------------------------------------------------
# Commands; each returns (exit code, text, json payload)


def cmd_validate(path: str):
    lf = load_link(path)
    info = {"valid": True, "mode": lf.mode, "label": lf.label, "mu": lf.mu, "n": lf.H.n}
    text = f"valid: {lf.label or path} ({lf.mode}, mu = {lf.mu}, n = {lf.H.n}, hermitian)"
    return 0, text, info


def cmd_delta(path: str):
    lf = load_link(path)
    td = torsion_order(lf.H)
    lines = [f"rank = {td.rho}", f"free rank = {td.free_rank}",
             f"delta = {delta_text(td)}", f"delta expanded = {to_text(td.delta)}"]
    payload = {"rank": td.rho, "free_rank": td.free_rank, "delta": to_text(td.delta),
               "delta_factored": delta_text(td), "delta_core": to_text(td.delta_core),
               "delta_unit": str(td.delta_unit)}
    return 0, "\n".join(lines), payload


def cmd_form(path: str, sign: str = "bl"):
    lf = load_link(path)
    td = torsion_order(lf.H)
    if td.rho < td.n:
        raise SingularMatrixError(td.rho, td.n)
    form = blanchfield_matrix(td, sign)
    conv = "-lambda_H (Blanchfield)" if sign == "bl" else "lambda_H"
    cells = [[_qls_text(q) for q in row] for row in form.values]
    lines = [f"# {td.n}x{td.n} form over Q/Lambda_S, convention {conv}",
             f"# delta = {to_text(td.delta)}"]
    for i, row in enumerate(cells):
        for j, c in enumerate(row):
            lines.append(f"[{i + 1},{j + 1}] {c}")
    return 0, "\n".join(lines), {"sign": sign, "delta": to_text(td.delta), "matrix": cells}


def cmd_pair(path: str, v: str, w: str, sign: str = "lambda"):
    lf = load_link(path)
    nv = lf.mu
    vv, ww = parse_vector(v, nv), parse_vector(w, nv)
    td = torsion_order(lf.H)
    q = pair(td, vv, ww, sign)
    text = f"[{_qls_text(q)}]"
    return 0, text, {"sign": sign, "value": _qls_text(q), "delta": to_text(td.delta)}


def _witness_json(iso: FormIsometry, op: str) -> dict:
    return {"op": op, "map": matrix_json(iso.map), "sign": iso.sign, "conjugate": iso.conjugate,
            "source": matrix_json(iso.source.entries)}


def cmd_transform(path: str, op: str, other: Optional[str] = None, xi: Optional[str] = None,
                  lam: str = "0", alpha: str = "1", shared: bool = True):
    lf = load_link(path)
    H = lf.H
    nv = H.mu
    if op in ("sum", "connected-sum"):
        if other is None:
            raise ValidationError(f"--op {op} needs --other FILE")
        H2 = load_link(other).H
    if op == "mirror":
        out, iso = mirror(H), mirror_isometry(H)
    elif op == "reverse":
        out, iso = reverse(H), reverse_isometry(H)
    elif op == "stab0":
        out, iso = stabilize0(H)
    elif op == "stab2":
        xs = parse_vector(xi, nv) if xi else [RatFunc.zero(nv)] * H.n
        out, iso = stabilize2(H, xs, parse_ratfunc(lam, nv), parse_ratfunc(alpha, nv))
    elif op == "sum":
        if H2.mu != nv:
            raise ValidationError(f"cannot sum matrices in {nv} and {H2.mu} variables")
        out = block_sum(H, H2)
        iso = None
    elif op == "connected-sum":
        out = connected_sum(H, H2, shared)
        iso = connected_sum_isometry(H, H2, shared)
    else:
        raise ValidationError(f"unknown transform {op!r}")
    label = f"{op}({lf.label or path})"
    witness = _witness_json(iso, op) if iso is not None else {"op": op, "map": "identity"}
    doc = link_to_json(out, label, witness)
    return 0, json.dumps(doc, indent=2), doc


def cmd_boundary(path: str, v: Optional[str] = None, w: Optional[str] = None):
    lf = load_link(path)
    if lf.boundary is None:
        raise ValidationError("boundary needs a file in boundary mode")
    b, H = lf.boundary, lf.H
    nv = H.mu
    td = torsion_order(H)
    lines = [f"# H = u*conj(u)*(I - tau)^-1*(A - tau*A^T), {H.n}x{H.n} in {nv} variable(s)"]
    for i in range(H.n):
        for j in range(H.n):
            lines.append(f"H[{i + 1},{j + 1}] = {to_text_rf(H[i, j])}")
    lines += [f"rank = {td.rho}", f"free rank = {td.free_rank}", f"delta = {delta_text(td)}"]
    payload = {"H": matrix_json(H.entries), "rank": td.rho, "delta": to_text(td.delta)}
    if (v is None) != (w is None):
        raise ValidationError("give both --v and --w or neither")
    if v is not None:
        vv, ww = parse_vector(v, nv), parse_vector(w, nv)
        general = pair(td, vv, ww, "bl")
        payload["general"] = _qls_text(general)
        lines.append(f"general path -lambda_H(v, w) = [{payload['general']}]")
        try:
            closed = closed_form_matrix(b)
        except SingularMatrixError:
            lines.append("notice: A - tau*A^T is singular; closed form unavailable")
            payload["closed"] = None
        else:
            uinv = RatFunc.from_poly(u_factor(nv)).inverse()
            value = boundary_pairing_value(b, [uinv * x for x in vv], [uinv * x for x in ww], closed)
            verdict = "MATCH" if value == general else "MISMATCH"
            payload["closed"] = _qls_text(value)
            payload["verdict"] = verdict
            lines.append(f"closed form at (v/u, w/u) = [{payload['closed']}]")
            lines.append(f"verdict: {verdict}")
    return 0, "\n".join(lines), payload


# ---------------------------------------------------------------------------
# Entry point


class _Parser(argparse.ArgumentParser):
    """Usage errors are validation errors (exit 1), not argparse's exit 2."""

    def error(self, message):
        raise ValidationError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ccomplex", description="Linking forms from C-complex matrices.")
    sub = p.add_subparsers(dest="verb", required=True)

    def add(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("file", help="JSON link file or catalog:NAME")
        sp.add_argument("--json", action="store_true", help="machine readable output")
        return sp

    add("validate", "check a link file")
    add("delta", "rank, free rank and symmetrized torsion order")
    sp = add("form", "full form matrix (nonsingular H only)")
    sp.add_argument("--sign", choices=("lambda", "bl"), default="bl")
    sp = add("pair", "pairing of two torsion vectors")
    sp.add_argument("--v", required=True, help="comma separated entries")
    sp.add_argument("--w", required=True, help="comma separated entries")
    sp.add_argument("--sign", choices=("lambda", "bl"), default="lambda")
    sp = add("transform", "apply a move and write a matrix-mode file")
    sp.add_argument("--op", required=True,
                    choices=("mirror", "reverse", "stab0", "stab2", "sum", "connected-sum"))
    sp.add_argument("--other", help="second file for sum / connected-sum")
    sp.add_argument("--xi", help="stab2: comma separated column")
    sp.add_argument("--lam", default="0", help="stab2: self-conjugate diagonal entry")
    sp.add_argument("--alpha", default="1", help="stab2: unit")
    sp.add_argument("--disjoint", action="store_true", help="connected-sum without a shared variable")
    sp.add_argument("-o", "--output", help="write the result here instead of stdout")
    sp = add("boundary", "boundary link: H, delta and closed-form comparison")
    sp.add_argument("--v")
    sp.add_argument("--w")
    return p


def dispatch(args: argparse.Namespace):
    if args.verb == "validate":
        return cmd_validate(args.file)
    if args.verb == "delta":
        return cmd_delta(args.file)
    if args.verb == "form":
        return cmd_form(args.file, args.sign)
    if args.verb == "pair":
        return cmd_pair(args.file, args.v, args.w, args.sign)
    if args.verb == "transform":
        return cmd_transform(args.file, args.op, args.other, args.xi, args.lam, args.alpha,
                             shared=not args.disjoint)
    return cmd_boundary(args.file, args.v, args.w)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = None
    try:
        args = build_parser().parse_args(argv)
        code, text, payload = dispatch(args)
    except ValueError as e:
        code, text, payload = 1, f"invalid: {e}", {"error": str(e), "kind": "validation"}
    except SingularMatrixError as e:
        msg = f"{e}; the form matrix needs nonsingular H, use `pair` with explicit torsion vectors"
        code, text, payload = 2, f"error: {msg}", {"error": msg, "kind": "domain"}
    except ArithmeticError as e:
        code, text, payload = 2, f"error: {e}", {"error": str(e), "kind": "domain"}
    as_json = bool(args is not None and args.json)
    out_path = getattr(args, "output", None) if code == 0 else None
    if out_path:
        with open(out_path, "w") as f:
            f.write(json.dumps(payload, indent=2) + "\n")
        body = json.dumps({"written": out_path}) if as_json else f"wrote {out_path}"
    else:
        body = json.dumps(payload, indent=2) if as_json else text
    print(body, file=sys.stdout if code == 0 else sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
