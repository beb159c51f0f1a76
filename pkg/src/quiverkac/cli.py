"""Command-line interface.

    quiverkac <apoly|mult|char|betti|verify> --quiver FILE --bound CSV
              [--w CSV] [--primes CSV] [--format plain|json|csv]
              [--jobs N] [--guard N]

Exit codes: 0 success / all checks passed, 1 a verification check failed,
2 usage or input error, 3 internal invariant breach (e.g. a non-polynomial
A-polynomial).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from . import __version__
from .exactalg import ExactArithmeticError, IntPoly, box
from .quiver import (
    LoopNotAllowed,
    Quiver,
    QuiverSyntaxError,
    load_quiver,
    parse_dimvector,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

COMMANDS = ("apoly", "mult", "char", "betti", "verify")
DEFAULT_PRIMES = (3, 5)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    quiver_path: str
    quiver: Quiver
    bound: Tuple[int, ...]
    w: Optional[Tuple[int, ...]] = None
    primes: Tuple[int, ...] = DEFAULT_PRIMES
    fmt: str = "plain"
    guard: Optional[int] = None
    jobs: int = 1


def _vec(v: Sequence[int]) -> str:
    return "(" + ",".join(map(str, v)) + ")"


def _poly_json(p: IntPoly) -> dict:
    return {"coeffs": p.coeffs(), "poly": str(p)}


# ---------------------------------------------------------------------------
# table builders: each returns (columns, rows) with rows as plain dicts


def _apoly_rows(cfg: RunConfig):
    from .hua import kac_a_polynomials

    table = kac_a_polynomials(cfg.quiver, cfg.bound, jobs=cfg.jobs)
    rows = []
    for alpha in box(cfg.bound):
        if any(alpha):
            rows.append({"alpha": list(alpha), **_poly_json(table[alpha])})
    return rows


def _mult_rows(cfg: RunConfig):
    from .weyl import root_multiplicities

    m = root_multiplicities(cfg.quiver, cfg.bound)
    return [{"alpha": list(a), "multiplicity": m[a]} for a in box(cfg.bound) if any(a)]


def _char_rows(cfg: RunConfig):
    from .weyl import character_multiplicities

    m = character_multiplicities(cfg.quiver, cfg.w, cfg.bound)
    return [{"alpha": list(a), "multiplicity": m[a]} for a in box(cfg.bound)]


def _betti_rows(cfg: RunConfig):
    from .betti import betti_numbers, poincare_series

    table = poincare_series(cfg.quiver, cfg.w, cfg.bound, jobs=cfg.jobs)
    rows = []
    for v in box(cfg.bound):
        rows.append({
            "v": list(v),
            "d": table.half_dimension(v),
            **_poly_json(table[v]),
            "betti": betti_numbers(table, v),
        })
    return rows


def _verify_rows(cfg: RunConfig):
    from .betti import expected_orbit_count, poincare_series, top_betti_equals_weight_multiplicity
    from .ffcount import (
        CharacteristicTooSmall,
        SearchSpaceTooLarge,
        count_bruteforce,
        count_fourier,
        group_order,
    )
    from .hua import constant_terms, kac_a_polynomials
    from .weyl import root_multiplicities

    q = cfg.quiver
    rows = []

    ct = constant_terms(kac_a_polynomials(q, cfg.bound, jobs=cfg.jobs))
    mult = root_multiplicities(q, cfg.bound)
    for a in box(cfg.bound):
        if any(a):
            rows.append(_check("kac", a, None, ct[a], mult[a]))

    w = cfg.w
    for r in top_betti_equals_weight_multiplicity(q, w, cfg.bound, jobs=cfg.jobs):
        rows.append(_check("chain", r.v, None, r.poincare_at_zero, r.multiplicity))

    table = poincare_series(q, w, cfg.bound, jobs=cfg.jobs)
    for p in cfg.primes:
        for v in box(cfg.bound):
            counts = {}
            for name, fn in (("bruteforce", count_bruteforce), ("fourier", count_fourier)):
                try:
                    counts[name] = fn(q, v, w, p, guard=cfg.guard, jobs=cfg.jobs)
                except (CharacteristicTooSmall, SearchSpaceTooLarge) as exc:
                    counts[name] = exc
            ok = {k: c for k, c in counts.items() if isinstance(c, int)}
            if "bruteforce" in ok and "fourier" in ok:
                rows.append(_check("fourier", v, p, ok["fourier"], ok["bruteforce"]))
            else:
                rows.append(_skip("fourier", v, p, _reason(counts)))
            if ok:
                count = ok.get("bruteforce", ok.get("fourier"))
                g = group_order(v, p)
                lhs = count // g if count % g == 0 else f"{count}/{g}"
                rows.append(_check("poincare", v, p, lhs, expected_orbit_count(table, v, p)))
            else:
                rows.append(_skip("poincare", v, p, _reason(counts)))
    return rows


def _reason(counts) -> str:
    for c in counts.values():
        if not isinstance(c, int):
            return type(c).__name__
    return ""


def _check(name, item, p, lhs, rhs):
    return {"check": name, "item": list(item), "p": p, "lhs": lhs, "rhs": rhs,
            "status": "pass" if lhs == rhs else "fail"}


def _skip(name, item, p, why):
    return {"check": name, "item": list(item), "p": p, "lhs": None, "rhs": None,
            "status": "skip", "reason": why}


# ---------------------------------------------------------------------------
# rendering


def _render_plain(cfg: RunConfig, rows) -> str:
    lines = []
    if cfg.command == "apoly":
        lines = [f"α={_vec(r['alpha'])}: {r['poly']}" for r in rows]
    elif cfg.command in ("mult", "char"):
        lines = [f"α={_vec(r['alpha'])}: {r['multiplicity']}" for r in rows]
    elif cfg.command == "betti":
        for r in rows:
            betti = ",".join(map(str, r["betti"]))
            lines.append(f"v={_vec(r['v'])}: {r['poly']}    d={r['d']} betti=[{betti}]")
    elif cfg.command == "verify":
        for r in rows:
            where = _vec(r["item"]) + (f" p={r['p']}" if r["p"] is not None else "")
            if r["status"] == "skip":
                lines.append(f"{r['check']:<9} {where}: SKIP ({r['reason']})")
            else:
                lines.append(f"{r['check']:<9} {where}: {r['lhs']} vs {r['rhs']} {r['status'].upper()}")
        npass = sum(r["status"] == "pass" for r in rows)
        nfail = sum(r["status"] == "fail" for r in rows)
        nskip = sum(r["status"] == "skip" for r in rows)
        lines.append(f"summary: {npass} pass, {nfail} fail, {nskip} skip")
    return "\n".join(lines) + ("\n" if lines else "")


def _render_json(cfg: RunConfig, rows) -> str:
    doc = {
        "command": cfg.command,
        "quiver": {"vertices": cfg.quiver.n, "edges": [[s + 1, t + 1] for s, t in cfg.quiver.edges]},
        "bound": list(cfg.bound),
        "w": list(cfg.w) if cfg.w is not None else None,
        "rows": rows,
    }
    if cfg.command == "verify":
        doc["primes"] = list(cfg.primes)
        doc["all_pass"] = not any(r["status"] == "fail" for r in rows)
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _csv_cell(x):
    if x is None:
        return ""
    if isinstance(x, list):
        return " ".join(map(str, x))
    return str(x)


def _render_csv(cfg: RunConfig, rows) -> str:
    buf = io.StringIO()
    if not rows:
        return ""
    cols = list(rows[0].keys())
    for r in rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for r in rows:
        writer.writerow([_csv_cell(r.get(c)) for c in cols])
    return buf.getvalue()


RENDERERS = {"plain": _render_plain, "json": _render_json, "csv": _render_csv}
BUILDERS = {"apoly": _apoly_rows, "mult": _mult_rows, "char": _char_rows,
            "betti": _betti_rows, "verify": _verify_rows}


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="quiverkac",
        description="Kac A-polynomials, root and weight multiplicities, and Betti numbers "
                    "of Nakajima quiver varieties, with finite-field cross-checks.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--quiver", required=True, metavar="FILE", help="quiver description file")
    ap.add_argument("--bound", required=True, metavar="CSV", help="dimension-vector box, e.g. 2,2")
    ap.add_argument("--w", metavar="CSV", help="framing vector (required for char and betti)")
    ap.add_argument("--primes", metavar="CSV", help="primes for finite-field checks (verify)")
    ap.add_argument("--format", dest="fmt", choices=tuple(RENDERERS), default="plain")
    ap.add_argument("--jobs", type=int, default=1, metavar="N", help="worker processes")
    ap.add_argument("--guard", type=int, default=None, metavar="N",
                    help="max enumeration size (default $QUIVERKAC_GUARD or 10^8)")
    return ap


def make_config(args) -> RunConfig:
    try:
        quiver = load_quiver(args.quiver)
    except OSError as exc:
        raise UsageError(f"cannot read quiver file: {exc}") from None
    except (QuiverSyntaxError, ValueError) as exc:
        raise UsageError(f"{args.quiver}: {exc}") from None
    try:
        bound = quiver.check_dim(parse_dimvector(args.bound), "--bound")
        w = quiver.check_dim(parse_dimvector(args.w), "--w") if args.w is not None else None
        primes = parse_dimvector(args.primes) if args.primes else DEFAULT_PRIMES
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    from .ffcount import is_prime

    bad = [p for p in primes if not is_prime(p)]
    if bad:
        raise UsageError(f"--primes: not prime: {bad}")
    if args.command in ("char", "betti") and w is None:
        raise UsageError(f"{args.command} requires --w")
    if args.command == "verify" and w is None:
        w = (1,) * quiver.n
    if args.command in ("mult", "char", "betti", "verify") and quiver.has_loops:
        raise UsageError(f"{args.command} needs a quiver without loops")
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    if args.guard is not None and args.guard < 1:
        raise UsageError("--guard must be positive")
    return RunConfig(args.command, args.quiver, quiver, bound, w, tuple(primes), args.fmt,
                     args.guard, args.jobs)


def run(cfg: RunConfig, out=None) -> int:
    out = out if out is not None else sys.stdout
    rows = BUILDERS[cfg.command](cfg)
    out.write(RENDERERS[cfg.fmt](cfg, rows))
    if cfg.command == "verify" and any(r["status"] == "fail" for r in rows):
        return EXIT_FAIL
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        cfg = make_config(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"quiverkac: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return run(cfg)
    except (ExactArithmeticError, ArithmeticError, LoopNotAllowed, RuntimeError) as exc:
        print(f"quiverkac: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
