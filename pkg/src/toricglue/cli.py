"""Command-line front end.

Input documents are JSON objects with exact integer literals, read from a
file path or standard input:

    {"n": 3, "c": 2, "a": [2, 0, 3], "b": [0, 2, 5]}        # codim-2 form
    {"generators": [[3, 0, 3], [0, 4, 2], [6, 0, 0]]}         # generic form

An optional "config" object may override kmax, lambda_max, coeff_bound and
seed.  Exit codes: 0 success, 1 check/assertion failure, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import product
from typing import Any, Optional, Sequence

from . import __version__
from .arith import factorize, is_prime
from .codim2 import CaseKind, SimplicialCodim2, classify, classify_case, emit_binomials
from .errors import ToricGlueError
from .oracle import run_suite
from .report import (
    binomials_to_dict,
    classification_to_dict,
    envelope,
    gluing_to_dict,
    tree_to_dict,
    verify_document,
)
from .semigroup import (
    DEFAULT_KMAX,
    DEFAULT_SIZE_LIMIT,
    GeneratorSet,
    Partition,
    check_gluing,
    check_p_gluing,
    complete_intersection_tree,
    completely_p_glued,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
KMAX_ENV = "TORICGLUE_KMAX"
CONFIG_KEYS = {"kmax", "lambda_max", "coeff_bound", "seed"}


class InputError(ToricGlueError):
    pass


def _reject_float(text: str):
    raise InputError(f"non-integer number {text!r}; only exact integers are accepted")


def parse_document(text: str) -> dict[str, Any]:
    try:
        doc = json.loads(text, parse_float=_reject_float, parse_constant=_reject_float)
    except json.JSONDecodeError as exc:
        raise InputError(f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise InputError("input must be a JSON object")
    config = doc.get("config", {})
    if not isinstance(config, dict) or set(config) - CONFIG_KEYS:
        raise InputError(f"config may only contain {sorted(CONFIG_KEYS)}")
    for key, val in config.items():
        _int(val, f"config.{key}")
    return doc


def _int(x: Any, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"{where} must be an integer, got {x!r}")
    return x


def _int_list(x: Any, where: str) -> list[int]:
    if not isinstance(x, list):
        raise InputError(f"{where} must be a list of integers")
    return [_int(v, f"{where}[{i}]") for i, v in enumerate(x)]


def codim2_from_doc(doc: dict[str, Any]) -> SimplicialCodim2:
    for key in ("c", "a", "b"):
        if key not in doc:
            raise InputError(f"codim-2 input needs the field {key!r}")
    a, b = _int_list(doc["a"], "a"), _int_list(doc["b"], "b")
    if "n" in doc and _int(doc["n"], "n") != len(a):
        raise InputError(f"n = {doc['n']} but a has {len(a)} entries")
    projective = doc.get("projective", False)
    if not isinstance(projective, bool):
        raise InputError("projective must be true or false")
    return SimplicialCodim2(_int(doc["c"], "c"), tuple(a), tuple(b), projective)


def generators_from_doc(doc: dict[str, Any]) -> GeneratorSet:
    if "generators" in doc:
        gens = doc["generators"]
        if not isinstance(gens, list):
            raise InputError("generators must be a list of integer lists")
        return GeneratorSet.of(_int_list(g, f"generators[{i}]") for i, g in enumerate(gens))
    # a codim-2 document is accepted too: generators a, b, c e_1, ..., c e_n
    return codim2_from_doc(doc).generators()


def _read_input(path: Optional[str]) -> dict[str, Any]:
    if path in (None, "-"):
        return parse_document(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())


def _default_kmax() -> int:
    raw = os.environ.get(KMAX_ENV)
    if raw is None:
        return DEFAULT_KMAX
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{KMAX_ENV}={raw!r} is not an integer") from None


def _kmax(args: argparse.Namespace, doc: dict[str, Any]) -> int:
    if args.kmax is not None:
        return args.kmax
    return doc.get("config", {}).get("kmax", _default_kmax())


# --- rendering ---------------------------------------------------------------

def _emit(args: argparse.Namespace, doc: dict[str, Any], text: str) -> None:
    if args.format == "json":
        print(json.dumps(doc, indent=2, sort_keys=False))
    else:
        print(text)


def _render_classification(d: dict[str, Any]) -> str:
    lines = [
        f"T: c={d['input']['c']} a={d['input']['a']} b={d['input']['b']}"
        + (f"  (normalized by delta={d['delta']})" if d["delta"] != 1 else ""),
        f"support relation: {d['support']}" + (f"  [fast path]" if d["fast_path"] else ""),
        f"alpha={d['alpha']} c'={d['c_prime']} g(T)={d['gT']} omega={d['omega']}",
    ]
    case = d["case"]
    if case == "exactly_one":
        lines.append(f"verdict: binomial set-theoretic complete intersection exactly in characteristic {d['prime']}")
    elif case == "every":
        lines.append("verdict: binomial set-theoretic complete intersection in every positive characteristic")
    else:
        lines.append("verdict: binomial set-theoretic complete intersection in no positive characteristic")
    if d["complete_intersection"] is not None:
        lines.append(f"complete intersection: {'yes' if d['complete_intersection'] else 'no'}")
    if d["certificate"]:
        c = d["certificate"]
        lines.append(f"certificate: partition {c['left']} | {c['right']}, w={c['w']}, k={c['k']}, prime={c['prime']}")
    for c in d["prime_certificates"]:
        lines.append(f"{c['prime']}-gluing: partition {c['left']} | {c['right']}, w={c['w']}, k={c['k']}")
    if d["binomials"]:
        lines.append(f"F1 = {d['binomials']['F1']}")
        lines.append(f"F2 = {d['binomials']['F2']}")
    return "\n".join(lines)


def _render_tree(d: Optional[dict[str, Any]], indent: str = "") -> list[str]:
    if d is None:
        return [indent + "(none)"]
    if "free" in d:
        return [indent + f"free {d['free']}"]
    c = d["certificate"]
    head = f"glued {c['left']} | {c['right']}: w={c['w']} k={c['k']}"
    return [indent + head] + _render_tree(d["left"], indent + "  ") + _render_tree(d["right"], indent + "  ")


# --- subcommands -------------------------------------------------------------

def cmd_classify(args: argparse.Namespace) -> int:
    doc = _read_input(args.input)
    t = codim2_from_doc(doc)
    report = classify(t)
    out = envelope(classification_to_dict(report), doc.get("config", {}).get("seed"))
    prime = getattr(args, "prime", None)
    if prime is None and getattr(args, "binomials_only", False) and out["binomials"] is None:
        # every characteristic admissible but k depends on p: show p = 2
        if report.case.kind is CaseKind.EVERY:
            prime = 2
    if prime is not None:
        out["binomials"] = binomials_to_dict(emit_binomials(t, prime))
    assert verify_document(json.loads(json.dumps(out))), "report failed its round-trip check"
    if getattr(args, "binomials_only", False) and args.format != "json":
        b = out["binomials"]
        print("(none: no admissible characteristic)" if b is None else f"F1 = {b['F1']}\nF2 = {b['F2']}")
        return EXIT_OK
    _emit(args, out, _render_classification(out))
    return EXIT_OK


def cmd_binomials(args: argparse.Namespace) -> int:
    args.binomials_only = True
    return cmd_classify(args)


def _parse_indices(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"partition must be comma-separated indices, got {text!r}") from None


def cmd_glue(args: argparse.Namespace) -> int:
    doc = _read_input(args.input)
    gens = generators_from_doc(doc)
    part = Partition.from_left(_parse_indices(args.partition), len(gens))
    kmax = _kmax(args, doc)
    if args.prime is None:
        res = check_gluing(gens, part)
    else:
        res = check_p_gluing(gens, part, args.prime, kmax)
    out = envelope(gluing_to_dict(gens, part, args.prime, kmax, res))
    assert verify_document(json.loads(json.dumps(out))), "report failed its round-trip check"
    text = f"{res.status.value}" + (f" ({res.reason})" if res.reason else "")
    if res.certificate:
        c = out["certificate"]
        text += f"\nw={c['w']} k={c['k']}\nT1 coefficients {c['left_coefficients']}\nT2 coefficients {c['right_coefficients']}"
    _emit(args, out, text)
    return EXIT_OK


def cmd_completely_glued(args: argparse.Namespace) -> int:
    doc = _read_input(args.input)
    gens = generators_from_doc(doc)
    kmax = _kmax(args, doc)
    if args.prime is None:
        tree = complete_intersection_tree(gens, args.limit)
    else:
        tree = completely_p_glued(gens, args.prime, kmax, args.limit)
    tree_doc = tree_to_dict(tree) if tree is not None else None
    verdict = "free" if tree_doc and "free" in tree_doc else ("glued" if tree_doc else "no witness within bounds")
    out = envelope({
        "kind": "completely_glued",
        "generators": [list(g) for g in gens],
        "prime": args.prime,
        "kmax": kmax,
        "verdict": verdict,
        "tree": tree_doc,
    })
    assert verify_document(json.loads(json.dumps(out))), "report failed its round-trip check"
    _emit(args, out, "\n".join([f"verdict: {verdict}"] + (_render_tree(tree_doc) if tree_doc else [])))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    rep = run_suite(args.trials, args.seed, args.kmax)
    out = envelope({
        "kind": "verify",
        "trials": rep.trials,
        "ok": rep.ok,
        "checks": [
            {"name": c.name, "passed": c.passed, "failed": c.failed, "first_failure": c.first_failure}
            for c in rep.checks
        ],
    }, args.seed)
    lines = [f"{'check':34} {'pass':>6} {'fail':>6}"]
    for c in rep.checks:
        lines.append(f"{c.name:34} {c.passed:>6} {c.failed:>6}  {'ok' if not c.failed else 'FAIL: ' + str(c.first_failure)}")
    lines.append(f"trials={rep.trials} seed={rep.seed}: {'all checks pass' if rep.ok else 'FAILURES'}")
    _emit(args, out, "\n".join(lines))
    return EXIT_OK if rep.ok else EXIT_FAIL


def _parse_range(text: str) -> list[int]:
    vals: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            if "-" in part:
                lo, hi = part.split("-")
                vals.extend(range(int(lo), int(hi) + 1))
            else:
                vals.append(int(part))
    except ValueError:
        raise InputError(f"bad range {text!r}; use e.g. 2-9 or 2,3,5") from None
    return vals


def sweep_instances(cs: Sequence[int], n: int, bound: int):
    """All valid (c, a, b) with entries in [0, bound], a < b lexicographically."""
    vecs = [v for v in product(range(bound + 1), repeat=n) if any(v)]
    for c in cs:
        for a in vecs:
            for b in vecs:
                if a >= b or any(x == 0 and y == 0 for x, y in zip(a, b)):
                    continue
                axes = {tuple(c * int(i == j) for j in range(n)) for i in range(n)}
                if a in axes or b in axes:
                    continue
                yield c, a, b


def _sweep_row(inst: tuple[int, tuple[int, ...], tuple[int, ...]]) -> tuple:
    c, a, b = inst
    case, fast, gT = classify_case(SimplicialCodim2(c, a, b))
    return c, a, b, case.kind.value, case.prime, fast.value if fast else "", gT


def is_prime_power(c: int) -> bool:
    return len(factorize(c)) <= 1


def run_sweep(cs: Sequence[int], n: int, bound: int, jobs: int = 1) -> list[tuple]:
    insts = list(sweep_instances(cs, n, bound))
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            return list(ex.map(_sweep_row, insts, chunksize=512))
    return [_sweep_row(i) for i in insts]


def cmd_sweep(args: argparse.Namespace) -> int:
    cs = _parse_range(args.c_range)
    if not cs or args.entry_bound < 1 or args.n < 1 or any(c < 1 for c in cs):
        raise InputError("empty grid")
    rows = run_sweep(cs, args.n, args.entry_bound, args.jobs)
    if not rows:
        raise InputError("empty grid")
    header = ["c", "a", "b", "case", "prime", "fast_path", "gT"]
    lines = ["\t".join(header)]
    for c, a, b, case, prime, fast, gT in rows:
        lines.append("\t".join(map(str, [c, list(a), list(b), case, prime or "", fast, gT if gT else ""])))
    table = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(table)
    counts: dict[int, dict[str, int]] = {}
    for c, _, _, case, *_ in rows:
        counts.setdefault(c, {k.value: 0 for k in CaseKind})[case] += 1
    violations = [c for c in counts if is_prime_power(c) and counts[c][CaseKind.NO_PRIME.value]]
    summary = {
        "kind": "sweep",
        "n": args.n,
        "entry_bound": args.entry_bound,
        "rows": len(rows),
        "counts": {str(c): v for c, v in counts.items()},
        "prime_power_no_prime_violations": violations,
    }
    text = "\n".join(
        [f"{'c':>4} {'every':>8} {'exactly_one':>12} {'no_prime':>9}"]
        + [f"{c:>4} {v['every']:>8} {v['exactly_one']:>12} {v['no_prime']:>9}" for c, v in counts.items()]
        + [f"{len(rows)} rows" + (f", table written to {args.out}" if args.out else "")]
        + ([f"FAIL: no_prime rows for prime-power c in {violations}"] if violations else [])
    )
    if args.format == "json":
        print(json.dumps(envelope(summary), indent=2))
    elif not args.out and args.table:
        sys.stdout.write(table)
    else:
        print(text)
    return EXIT_FAIL if violations else EXIT_OK


# --- entry point ---------------------------------------------------------------

def _positive_prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not a prime")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toricglue", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"toricglue {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify a codim-2 simplicial set")
    p.add_argument("input", nargs="?", help="input file (default: stdin)")
    p.add_argument("--emit", dest="prime", type=_positive_prime, metavar="P",
                   help="also emit the binomials for characteristic P")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("binomials", parents=[common], help="defining binomials (classify --emit)")
    p.add_argument("input", nargs="?")
    p.add_argument("--prime", type=_positive_prime, help="characteristic (default: from the verdict)")
    p.set_defaults(func=cmd_binomials)

    p = sub.add_parser("glue", parents=[common], help="test one partition for (p-)gluing")
    p.add_argument("input", nargs="?")
    p.add_argument("--partition", required=True, help="comma-separated indices of T1")
    p.add_argument("--prime", type=_positive_prime, help="omit for a plain gluing test")
    p.add_argument("--kmax", type=int)
    p.set_defaults(func=cmd_glue)

    p = sub.add_parser("completely-glued", parents=[common], help="search a complete p-gluing tree")
    p.add_argument("input", nargs="?")
    p.add_argument("--prime", type=_positive_prime, help="omit to test for a complete intersection")
    p.add_argument("--kmax", type=int)
    p.add_argument("--limit", type=int, default=DEFAULT_SIZE_LIMIT)
    p.set_defaults(func=cmd_completely_glued)

    p = sub.add_parser("verify", parents=[common], help="randomized oracle-vs-formula suite")
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kmax", type=int, default=8)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", parents=[common], help="tabulate cases over a parameter grid")
    p.add_argument("--c-range", required=True, help="e.g. 2-9 or 2,3,4,5,7")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--entry-bound", type=int, default=6)
    p.add_argument("--out", help="write the full tab-separated table here")
    p.add_argument("--table", action="store_true", help="print the full table instead of the summary")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (ToricGlueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as exc:
        print(f"assertion failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
