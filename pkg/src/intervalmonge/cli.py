"""Command-line front end.

Exit codes: 0 positive verdict / success, 1 negative verdict (not Monge,
infeasible, not permutable, or inconclusive), 2 input error, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from . import generate as gen
from .errors import MatrixFormatError, MongeError, NegativeEntry, NotMonge
from .interval import Interval, IntervalMatrix, loads_matrix, matrix_to_dict, rational
from .monge import decompose_monge, reconstruct
from .permutation import permute_general, permute_special
from .strong import STRONG_METHODS, first_strong_violation, is_strong_monge
from .weak import CLOSURE_OPS, interval_residual, is_weak_monge, iwm_closure, run_conditions, validate_witness

EXIT_YES, EXIT_NO, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3

log = logging.getLogger("intervalmonge")


class InputError(Exception):
    pass


def _read(path: str) -> IntervalMatrix:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return loads_matrix(text)
    except MatrixFormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _selfcheck(ok: bool, what: str) -> None:
    if not ok:
        raise AssertionError(f"self-check failed: {what}")


# --- rendering -------------------------------------------------------------


def _render_matrix(doc: dict) -> list[str]:
    if "entries" in doc:
        cells = [[str(x) for x in row] for row in doc["entries"]]
    else:
        cells = [
            [f"[{a}, {b}]" if a != b else str(a) for a, b in zip(r, s)]
            for r, s in zip(doc["lower"], doc["upper"])
        ]
    width = max(len(c) for row in cells for c in row)
    return ["  " + "  ".join(c.rjust(width) for c in row) for row in cells]


def _is_matrix_doc(v) -> bool:
    return isinstance(v, dict) and "rows" in v and "cols" in v


def render_human(payload: dict) -> str:
    lines = []
    for key, value in payload.items():
        if _is_matrix_doc(value):
            lines.append(f"{key}:")
            lines.extend(_render_matrix(value))
        elif isinstance(value, dict):
            lines.append(f"{key}:")
            for k, v in value.items():
                lines.append(f"  {k}: {json.dumps(v)}")
        elif isinstance(value, (list, tuple)):
            lines.append(f"{key}: {', '.join(str(x) for x in value) if value else '-'}")
        elif value is None:
            lines.append(f"{key}: -")
        elif isinstance(value, bool):
            lines.append(f"{key}: {'yes' if value else 'no'}")
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "human":
        print(render_human(payload))
    else:
        print(json.dumps(payload))


# --- commands --------------------------------------------------------------


def cmd_check_strong(args) -> tuple[dict, int]:
    mat = _read(args.path)
    methods = list(STRONG_METHODS) if args.method == "all" else [args.method]
    verdicts = {name: STRONG_METHODS[name](mat) for name in methods}
    verdict = verdicts[methods[0]]
    _selfcheck(len(set(verdicts.values())) == 1, "strong Monge characterizations disagree")
    payload = {"command": "check-strong", "shape": [mat.m, mat.n], "method": args.method,
               "strong_monge": verdict}
    if len(methods) > 1:
        payload["verdicts"] = verdicts
    if not verdict:
        i, j = first_strong_violation(mat)
        payload["violation"] = [i + 1, j + 1]
    return payload, EXIT_YES if verdict else EXIT_NO


def cmd_check_weak(args) -> tuple[dict, int]:
    mat = _read(args.path)
    report = run_conditions(mat)
    payload = {
        "command": "check-weak",
        "shape": [mat.m, mat.n],
        "necessary_nonneg_residual": report.necessary,
        "conditions_fired": report.fired,
    }
    witness = report.witness
    if args.conditions_only:
        verdict = report.verdict
        payload["lp"] = None
    else:
        lp = is_weak_monge(mat)
        verdict = lp.feasible
        payload["lp"] = {"feasible": lp.feasible}
        if lp.feasible and witness is None:
            witness = lp.witness
        _selfcheck(not (report.verdict is True and not lp.feasible), "sufficient condition vs LP")
        _selfcheck(not (lp.feasible and report.necessary is False), "LP vs necessary condition")
    payload["weak_monge"] = verdict
    if verdict is None:
        payload["note"] = "inconclusive: no cheap condition decides this matrix"
    if witness is not None and verdict:
        _selfcheck(validate_witness(mat, witness), "witness revalidation")
        payload["witness"] = matrix_to_dict(witness)
    return payload, EXIT_YES if verdict else EXIT_NO


def cmd_residual(args) -> tuple[dict, int]:
    mat = _read(args.path)
    res = interval_residual(mat)
    payload = {"command": "residual", "residual": matrix_to_dict(res)}
    return payload, EXIT_YES


def cmd_permute(args) -> tuple[dict, int]:
    mat = _read(args.path)
    found = permute_special(mat) if args.special else permute_general(mat)
    payload = {"command": "permute", "algorithm": "special" if args.special else "general",
               "permutable": found is not None}
    if found is None:
        return payload, EXIT_NO
    pair, permuted = found
    _selfcheck(is_strong_monge(permuted), "permuted matrix revalidation")
    _selfcheck(mat.permuted(pair.sigma, pair.pi) == permuted, "permutation consistency")
    payload.update(pair.to_dict())
    payload["permuted"] = matrix_to_dict(permuted)
    return payload, EXIT_YES


def cmd_decompose(args) -> tuple[dict, int]:
    mat = _read(args.path)
    if not mat.is_degenerate:
        raise InputError("decompose needs a real matrix (lower == upper)")
    real = mat.lower_matrix()
    payload = {"command": "decompose", "shape": [mat.m, mat.n]}
    try:
        d = decompose_monge(real)
    except (NotMonge, NegativeEntry) as exc:
        payload.update({"decomposable": False, "reason": str(exc)})
        return payload, EXIT_NO
    _selfcheck(reconstruct(d, mat.m, mat.n) == real, "reconstruction")
    payload["decomposable"] = True
    payload.update(d.to_dict())
    return payload, EXIT_YES


def _parse_alpha(text: str):
    try:
        if "," in text:
            lo, hi = text.split(",", 1)
            return Interval(rational(lo), rational(hi))
        return rational(text)
    except (ValueError, TypeError) as exc:
        raise InputError(f"bad --alpha {text!r}: {exc}") from None


def cmd_closure(args) -> tuple[dict, int]:
    op = args.op
    unary = op in ("scale", "interval_scale")
    if unary:
        if args.alpha is None:
            raise InputError(f"{op} needs --alpha")
        if len(args.paths) != 1:
            raise InputError(f"{op} takes exactly one matrix")
        alpha = _parse_alpha(args.alpha)
        if op == "interval_scale" and not isinstance(alpha, Interval):
            alpha = Interval.point(alpha)
        if op == "scale" and isinstance(alpha, Interval):
            raise InputError("scale takes a real --alpha; use interval_scale for intervals")
        call = (alpha, _read(args.paths[0]))
    else:
        if len(args.paths) != 2:
            raise InputError(f"{op} takes exactly two matrices")
        call = (_read(args.paths[0]), _read(args.paths[1]))
    result = iwm_closure(op, *call)
    payload = {
        "command": "closure",
        "op": op,
        "verdict": result.verdict,
        "lp_verdict": result.lp_verdict,
    }
    if result.criterion is not None:
        payload["criterion"] = result.criterion
        payload["criterion_agrees_with_lp"] = result.criterion == result.lp_verdict
    payload["matrix"] = matrix_to_dict(result.matrix)
    if result.witness is not None:
        _selfcheck(validate_witness(result.matrix, result.witness), "closure witness revalidation")
        payload["witness"] = matrix_to_dict(result.witness)
    return payload, EXIT_YES if result.verdict else EXIT_NO


def cmd_gen(args) -> tuple[dict, int]:
    if args.rows < 1 or args.cols < 1:
        raise InputError("--rows and --cols must be positive")
    try:
        mat = gen.generate(args.kind, args.rows, args.cols, args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return matrix_to_dict(mat), EXIT_YES


# --- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("json", "human"), default="json")
    common.add_argument("--seed", type=int, default=gen.DEFAULT_SEED,
                        help=f"generator seed (default {gen.DEFAULT_SEED})")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="intervalmonge",
        description="Strong/weak Monge recognition and permutation for interval matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-strong", parents=[common], help="decide the strong Monge property")
    p.add_argument("path", help="matrix JSON file, or - for stdin")
    p.add_argument("--method", choices=(*STRONG_METHODS, "all"), default="adjacent")
    p.set_defaults(func=cmd_check_strong)

    p = sub.add_parser("check-weak", parents=[common], help="decide the weak Monge property")
    p.add_argument("path")
    p.add_argument("--conditions-only", action="store_true",
                   help="only run the necessary/sufficient conditions, skip the LP")
    p.set_defaults(func=cmd_check_weak)

    p = sub.add_parser("residual", parents=[common], help="interval residual matrix")
    p.add_argument("path")
    p.set_defaults(func=cmd_residual)

    p = sub.add_parser("permute", parents=[common], help="find permutations making the matrix strongly Monge")
    p.add_argument("path")
    p.add_argument("--special", action="store_true",
                   help="use the special-case algorithm (all radii positive)")
    p.set_defaults(func=cmd_permute)

    p = sub.add_parser("decompose", parents=[common], help="cone decomposition of a nonnegative Monge matrix")
    p.add_argument("path")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("closure", parents=[common], help="weak Monge closure operations")
    p.add_argument("op", choices=tuple(CLOSURE_OPS))
    p.add_argument("paths", nargs="+")
    p.add_argument("--alpha", help="scalar, or lo,hi for interval_scale")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("gen", parents=[common], help="seeded instance generator")
    p.add_argument("kind", choices=gen.GEN_KINDS)
    p.add_argument("--rows", type=int, default=4)
    p.add_argument("--cols", type=int, default=4)
    p.set_defaults(func=cmd_gen)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_YES
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        payload, code = args.func(args)
    except (InputError, MongeError) as exc:
        # malformed input, bad dimensions, or an operand outside the required class
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        log.debug("internal error", exc_info=True)
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    _emit(payload, args.output)
    return code


def main() -> None:
    sys.exit(run())
