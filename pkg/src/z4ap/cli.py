"""Command line entry point: ``z4ap <subcommand> [options]``.

Exit status is 0 on success, 1 when a reported check fails and 2 on usage
or input errors.  JSON output carries ``schema: 1`` and echoes the
effective configuration.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from contextlib import contextmanager
from datetime import datetime, timezone
from typing import List, Optional

from . import bounds, cosets, lemma, poly, search
from .group import PointSet, find_progression
from .io import SetFileError, read_set, write_set
from .poly import PolyFormatError

SCHEMA = 1
PRECISION_ENV = "Z4AP_PRECISION"


class CheckFailed(Exception):
    """Raised by a subcommand whose report contains a failed check."""


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("json", "csv", "text"), default="json")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--precision", type=int, default=None,
                        help="decimal digits for high-precision paths (default 50)")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--no-timestamp", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="z4ap", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gamma", help="compute the exponent gamma")
    p.add_argument("--tol", type=float, default=1e-12)
    _common(p)

    p = sub.add_parser("bound", help="size bounds for Z_4^n (and optionally a general group)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--factors", default=None,
                   help="invariant factors m_1|...|m_k, comma separated, for the corollary bound")
    _common(p)

    p = sub.add_parser("entropy-table", help="sweep the binomial/entropy inequality")
    p.add_argument("--max-n", type=int, default=64)
    _common(p)

    p = sub.add_parser("search", help="search for large progression-free sets")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", default="bnb",
                   choices=("exhaustive", "bnb", "branch_and_bound", "greedy", "restart", "random_restart"))
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--out", default=None, help="write the witness as a set file")
    _common(p)

    p = sub.add_parser("verify", help="check a set file")
    p.add_argument("--file", required=True)
    _common(p)

    p = sub.add_parser("cosets", help="rich-coset report for a set file")
    p.add_argument("--file", required=True)
    p.add_argument("--eps", required=True, help="epsilon in (0, 1/4), decimal or p/q")
    p.add_argument("--replay", action="store_true")
    _common(p)

    p = sub.add_parser("lemma-demo", help="build and check a lemma certificate")
    p.add_argument("--poly", default=None, help="polynomial text file")
    p.add_argument("--points", default=None, help="set file of 0/1 points in F_2^n")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--d", type=int, default=None, help="declared degree bound (default deg P)")
    p.add_argument("--size", type=int, default=None, help="random point count (default 2m + 1)")
    p.add_argument("--dump", action="store_true", help="include the polynomial text")
    p.add_argument("--gram-csv", default=None, help="write the full Gram matrix as CSV")
    _common(p)
    return parser


@contextmanager
def _precision(digits: Optional[int]):
    saved = os.environ.get(PRECISION_ENV)
    if digits is not None:
        os.environ[PRECISION_ENV] = str(digits)
    try:
        yield
    finally:
        if digits is not None:
            if saved is None:
                os.environ.pop(PRECISION_ENV, None)
            else:
                os.environ[PRECISION_ENV] = saved


def _config(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in ("threads", "no_timestamp")}
    cfg["precision"] = bounds.working_precision()
    return cfg


def _resolve_seed(args) -> int:
    if args.seed is None:
        args.seed = random.SystemRandom().randrange(2 ** 32)
    return args.seed


# -- subcommands ----------------------------------------------------------------

def cmd_gamma(args) -> dict:
    res = bounds.compute_gamma(args.tol)
    out = {"gamma": res.gamma, "eps_star": res.eps_star, "tolerance": args.tol,
           "tolerance_achieved": res.tolerance_achieved, "iterations": res.iterations}
    if round(res.gamma, 3) != 0.926:
        raise CheckFailed(out)
    return out


def cmd_bound(args) -> dict:
    if args.n < 1:
        raise ValueError("--n must be positive")
    out = {"n": args.n, "gamma": bounds.gamma(),
           "theorem": bounds.theorem_bound(args.n), "finite": bounds.finite_bound(args.n)}
    if args.factors:
        factors = [int(t) for t in args.factors.split(",")]
        c = bounds.corollary_bound(factors)
        out["corollary"] = {"factors": list(c.factors), "order": c.order, "rk4": c.rk4, "bound": c.bound}
    return out


def cmd_entropy_table(args) -> dict:
    rows = bounds.entropy_table(args.max_n)
    table = [{"n": r.n, "z": int(r.z), "lhs": r.lhs, "lhs_log2_upper": r.lhs_log2_upper,
              "rhs_log2_lower": r.rhs_log2_lower, "holds": r.holds} for r in rows]
    out = {"rows": table, "failures": sum(not r.holds for r in rows)}
    if out["failures"]:
        raise CheckFailed(out)
    return out


def _search_dict(res: search.SearchResult) -> dict:
    return {"n": res.n, "method": res.method, "best_size": res.best_size, "exact": res.exact,
            "nodes_explored": res.nodes_explored, "seed": res.seed,
            "witness": ["".join(map(str, r)) for r in res.witness.digit_rows()]}


def cmd_search(args) -> dict:
    method = search.canonical_method(args.method)
    if method in ("greedy", "random_restart"):
        _resolve_seed(args)
    res = search.search(args.n, method, seed=args.seed, budget=args.budget, threads=args.threads)
    if args.out:
        write_set(args.out, res.witness, [f"{res.method} n={res.n} size={res.best_size} exact={res.exact}"])
    return _search_dict(res)


def cmd_verify(args) -> dict:
    report = search.verify_file(args.file)
    if not report["ok"]:
        raise CheckFailed(report)
    return report


def cmd_cosets(args) -> dict:
    A = read_set(args.file)
    if A.n == 0:
        raise ValueError("cosets needs a nonempty set")
    rep = cosets.rich_coset_report(A, args.eps)
    dec_keys = [r for r, _ in cosets.coset_decompose(A).items()]
    out = {"n": A.n, "epsilon": str(rep.epsilon), "threshold": rep.threshold,
           "rich_count": rep.rich_count, "bound": rep.bound, "vacuous": rep.vacuous,
           "holds": rep.holds, "disjointness_ok": cosets.disjointness_holds(A, dec_keys)}
    if args.replay:
        out["trace"] = cosets.replay_proposition(A, rep.epsilon).as_dict()
    progression_free = find_progression(A) is None
    if progression_free and not (rep.holds and out["disjointness_ok"]
                                 and out.get("trace", {"ok": True})["ok"]):
        raise CheckFailed(out)
    return out


def _random_instance(args):
    rng = random.Random(_resolve_seed(args))
    n = args.n
    d = args.d if args.d is not None else min(2, n)
    monos = poly.monomials_upto(n, d)
    coeffs = {m: 1 for m in monos if rng.random() < 0.5}
    coeffs[0] = 1
    P = poly.MultilinearPoly(n, coeffs, 2)
    m = bounds.binom_sum(n, d // 2)
    size = args.size if args.size is not None else min(2 * m + 1, 2 ** n)
    pts = rng.sample(range(2 ** n), size)
    return P, PointSet(n, pts, binary=True), d


def cmd_lemma_demo(args) -> dict:
    if args.poly:
        with open(args.poly, encoding="utf-8") as fh:
            P = poly.loads_poly(fh.read())
        if args.points:
            A = read_set(args.points, binary=True)
        else:
            rng = random.Random(_resolve_seed(args))
            A = PointSet(P.n, rng.sample(range(2 ** P.n), min(2 ** P.n, 2 * bounds.binom_sum(P.n, P.degree // 2) + 1)), binary=True)
        d = args.d
    else:
        P, A, d = _random_instance(args)
        if args.points:
            A = read_set(args.points, binary=True)
    if P.p != 2 and args.points:
        raise ValueError("point files hold F_2 points; use p=2 polynomials")
    cert = lemma.build_certificate(P, A, d)
    k = cert.size
    off = [(i, j) for i in range(k) for j in range(k) if i != j and cert.gram[i][j]]
    identity_ok = all(cert.gram[i][j] == poly.evaluate(P, [(a - b) % P.p for a, b in zip(cert.points[i], cert.points[j])])
                      for i in range(k) for j in range(k))
    rep = lemma.check_lemma(P, A, d)
    out = {
        "n": P.n, "p": P.p, "d": cert.d, "m": cert.m, "two_m": 2 * cert.m, "size": k,
        "p0": cert.p0, "gram_diagonal_equals_p0": all(cert.gram[i][i] == cert.p0 for i in range(k)),
        "gram_offdiagonal_nonzero": len(off), "scalar_product_identity": identity_ok,
        "u_rank": rep.u_rank, "size_ok": rep.size_ok, "hypothesis_ok": rep.hypothesis_ok,
        "p0_zero": rep.p0_zero, "consistent": rep.consistent,
        "points": ["".join(map(str, x)) for x in cert.points],
    }
    if args.dump:
        out["poly"] = poly.dumps_poly(P)
    if args.gram_csv:
        with open(args.gram_csv, "w", newline="", encoding="utf-8") as fh:
            csv.writer(fh).writerows(cert.gram)
    if not (identity_ok and rep.consistent):
        raise CheckFailed(out)
    return out


COMMANDS = {
    "gamma": cmd_gamma,
    "bound": cmd_bound,
    "entropy-table": cmd_entropy_table,
    "search": cmd_search,
    "verify": cmd_verify,
    "cosets": cmd_cosets,
    "lemma-demo": cmd_lemma_demo,
}


# -- rendering ------------------------------------------------------------------

def _flatten(prefix: str, value, out: list) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else k, v, out)
    else:
        out.append((prefix, value))


def render(envelope: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(envelope, indent=2) + "\n"
    result = envelope["result"]
    buf = io.StringIO()
    if fmt == "csv":
        rows = result.get("rows") if isinstance(result, dict) else None
        writer = csv.writer(buf, lineterminator="\n")
        if rows:
            writer.writerow(rows[0].keys())
            for r in rows:
                writer.writerow(r.values())
        else:
            flat: list = []
            _flatten("", result, flat)
            writer.writerow(["key", "value"])
            writer.writerows(flat)
        return buf.getvalue()
    flat = []
    _flatten("", envelope, flat)
    return "".join(f"{k}: {v}\n" for k, v in flat)


def main(argv: Optional[List[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads < 1:
        print("z4ap: --threads must be at least 1", file=sys.stderr)
        return 2
    with _precision(args.precision):
        status = 0
        try:
            result = COMMANDS[args.command](args)
        except CheckFailed as exc:
            result, status = exc.args[0], 1
        except (SetFileError, PolyFormatError, ValueError, OSError) as exc:
            print(f"z4ap {args.command}: {exc}", file=sys.stderr)
            return 2
        envelope = {"schema": SCHEMA, "command": args.command, "config": _config(args)}
        if not args.no_timestamp:
            envelope["timestamp"] = datetime.now(timezone.utc).isoformat()
        envelope["status"] = "ok" if status == 0 else "check_failed"
        envelope["result"] = result
        stdout.write(render(envelope, args.format))
    return status


if __name__ == "__main__":
    sys.exit(main())
