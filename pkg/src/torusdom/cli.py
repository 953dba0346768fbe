"""Command line front end.

Subcommands: value (closed forms and bound intervals), construct (emit a
pattern certificate), verify (re-validate a certificate file), solve
(exact computation with certificate output and result caching), table
(sweep a rectangle of instances to CSV or JSON) and audit (end-to-end
cross-checks for one instance).

Exit codes: 0 success or verified, 1 verification failure, mismatch or
unsupported request, 2 usage error, 3 instance too large.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Optional

from .certificates import Certificate, ResultCache, load_certificate
from .construct import best_upper_witness
from .errors import (
    CertificateError,
    CongruenceError,
    ConstructionInvalidError,
    InstanceTooLargeError,
    InvalidDimensionsError,
    InvalidInputError,
    OutOfRangeError,
    UnsupportedClassError,
)
from .formulas import known_value, lower_bound_regular, upper_bounds
from .solve import (
    ORACLE_AUTO_CAP,
    ORACLE_CAP,
    solve,
    solve_oracle,
    solve_paired,
    solve_profile_dp,
)
from .torus import make_torus
from .validate import (
    DominationKind,
    column_profile,
    domination_multiplicity,
    satisfies,
)

_KINDS = {
    "plain": DominationKind.PLAIN,
    "total": DominationKind.TOTAL,
    "paired": DominationKind.PAIRED,
}

_GAMMA = {
    DominationKind.PLAIN: "gamma",
    DominationKind.TOTAL: "gamma_t",
    DominationKind.PAIRED: "gamma_p",
}

PAIRED_EXACT_CAP = 36


def _parse_range(text: str) -> range:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return range(int(lo), int(hi) + 1)
    v = int(text)
    return range(v, v + 1)


def _kind(args: argparse.Namespace) -> DominationKind:
    return _KINDS[args.kind]


def cmd_value(args: argparse.Namespace) -> int:
    kind = _kind(args)
    report = upper_bounds(args.n, args.m, kind)
    name = f"{_GAMMA[kind]}({args.n},{args.m})"
    if report.exact is not None:
        print(f"{name} = {report.exact}")
    else:
        print(f"{name} in [{report.lower_bound}, {report.best_upper()}]")
    print(f"  lower {report.lower_bound} (degree bound)")
    for value, provenance in report.upper_bounds:
        print(f"  upper {value} ({provenance})")
    return 0


def cmd_construct(args: argparse.Namespace) -> int:
    kind = _kind(args)
    if kind is DominationKind.PLAIN:
        raise UnsupportedClassError(
            "no pattern catalog exists for plain domination; use total or paired"
        )
    result = best_upper_witness(args.n, args.m, kind)
    cert = Certificate.from_vertex_set(result.vertex_set, kind, result.provenance)
    cert.check()
    if args.out:
        cert.save(args.out)
        print(
            f"wrote {args.out}: {kind.value} set of {cert.cardinality} vertices "
            f"on {args.n}x{args.m} ({result.provenance})"
        )
    else:
        sys.stdout.write(cert.to_json())
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    cert = load_certificate(args.file)
    claimed = _KINDS[args.kind] if args.kind else cert.kind
    try:
        cert_vs = cert.vertex_set()
    except (InvalidDimensionsError, OutOfRangeError, InvalidInputError) as exc:
        print(f"structural failure: {exc}", file=sys.stderr)
        return 1
    print(
        f"certificate {cert.n}x{cert.m} {cert.kind.value} "
        f"cardinality {cert.cardinality} ({cert.provenance})"
    )
    if cert.cardinality != len(cert_vs):
        print(
            f"structural failure: cardinality {cert.cardinality} != "
            f"vertex count {len(cert_vs)}",
            file=sys.stderr,
        )
        return 1
    g = make_torus(cert.n, cert.m)
    verdicts = {}
    for kind in DominationKind:
        verdicts[kind] = satisfies(g, cert_vs, kind)
        print(f"  {kind.value}: {'yes' if verdicts[kind] else 'no'}")
    counts = domination_multiplicity(g, cert_vs)
    histogram: dict[int, int] = {}
    for c in counts:
        histogram[c] = histogram.get(c, 0) + 1
    line = ", ".join(f"{k}x{histogram[k]}" for k in sorted(histogram))
    print(f"  multiplicity histogram (dominators x vertices): {line}")
    profile_g, profile_vs = g, cert_vs
    if cert.m != 3 and cert.n == 3:
        profile_g, profile_vs = make_torus(cert.m, cert.n), cert_vs.transposed()
    profile = column_profile(profile_g, profile_vs)
    if profile.applicable:
        print(
            f"  column profile: alpha = {profile.alpha}, "
            f"identity {'ok' if profile.identity_ok else 'FAIL'}, "
            f"surplus {'ok' if profile.surplus_ok else 'FAIL'}, "
            f"demand {'ok' if profile.demand_ok else 'FAIL'}"
        )
    ok = verdicts[claimed]
    print(f"claimed {claimed.value}: {'VERIFIED' if ok else 'FAILED'}")
    return 0 if ok else 1


def _canonical_certificate(res_value: int, res_set, n: int, m: int, kind: DominationKind):
    """Lexicographically least certificate: exact over the oracle range,
    otherwise the least member of the certificate's rotation orbit."""
    if n * m <= ORACLE_CAP:
        return solve_oracle(n, m, kind).certificate
    best = None
    for di in range(n):
        for dj in range(m):
            cand = res_set.rotated(di, dj)
            key = [s for s in range(n * m) if cand.mask >> s & 1]
            if best is None or key < best[0]:
                best = (key, cand)
    return best[1]


def cmd_solve(args: argparse.Namespace) -> int:
    kind = _kind(args)
    res = solve(args.n, args.m, kind, args.method)
    cert_set = res.certificate
    if args.canonical:
        cert_set = _canonical_certificate(res.value, cert_set, args.n, args.m, kind)
    cert = Certificate.from_vertex_set(cert_set, kind, f"solver:{res.method.value}")
    cert.check()
    cache = ResultCache(args.cache_dir)
    prior = cache.get(args.n, args.m, kind, args.method)
    if prior is not None and prior[0] != res.value:
        print(
            f"cache mismatch: stored value {prior[0]} != computed {res.value}",
            file=sys.stderr,
        )
        return 1
    cache.put(args.n, args.m, kind, args.method, res.value, cert.digest())
    print(
        f"{_GAMMA[kind]}({args.n},{args.m}) = {res.value} "
        f"[method {res.method.value}, {res.elapsed:.3f}s]"
    )
    print(f"  certificate digest {cert.digest()}")
    if args.out:
        cert.save(args.out)
        print(f"  wrote {args.out}")
    return 0


def _table_exact(n: int, m: int, kind: DominationKind) -> Optional[tuple[int, str]]:
    """Exact value when an engine is comfortably in range, else None."""
    order = n * m
    width = min(n, m)
    try:
        if order <= ORACLE_AUTO_CAP:
            res = solve(n, m, kind, "auto")
        elif kind is DominationKind.PAIRED:
            if order > PAIRED_EXACT_CAP:
                witness = best_upper_witness(n, m, kind).vertex_set
                lo = lower_bound_regular(n, m)
                lo += lo % 2
                if len(witness) != lo:
                    return None
            res = solve_paired(n, m)
        elif width <= 5:
            res = solve_profile_dp(n, m, kind)
        else:
            if kind is not DominationKind.TOTAL:
                return None
            witness = best_upper_witness(n, m, kind).vertex_set
            if len(witness) != lower_bound_regular(n, m):
                return None
            res = solve(n, m, kind, "auto")
    except (InstanceTooLargeError, ConstructionInvalidError):
        return None
    return res.value, res.method.value


def cmd_table(args: argparse.Namespace) -> int:
    kind = _kind(args)
    rows = []
    for n in args.n:
        for m in args.m:
            report = upper_bounds(n, m, kind)
            formula = known_value(n, m, kind)
            best_up = report.best_upper()
            exact = _table_exact(n, m, kind)
            if exact is not None:
                value, method = exact
                agree = (
                    report.lower_bound <= value <= best_up
                    and (formula is None or formula == value)
                )
            else:
                value, method = None, ""
                agree = formula is None or report.lower_bound <= formula <= best_up
            rows.append(
                {
                    "n": n,
                    "m": m,
                    "kind": kind.value,
                    "lower_bound": report.lower_bound,
                    "exact": value,
                    "method": method,
                    "formula": formula,
                    "best_upper": best_up,
                    "agreement": agree,
                }
            )
    header = [
        "n", "m", "kind", "lower_bound", "exact", "method",
        "formula", "best_upper", "agreement",
    ]
    out = Path(args.out) if args.out else None
    if args.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
        if out:
            out.write_text(text)
        else:
            sys.stdout.write(text)
    else:
        handle = out.open("w", newline="") if out else sys.stdout
        try:
            writer = csv.writer(handle)
            writer.writerow(header)
            for row in rows:
                writer.writerow(
                    ["" if row[col] is None else row[col] for col in header]
                )
        finally:
            if out:
                handle.close()
    if out:
        print(f"wrote {out}: {len(rows)} rows")
    return 0


def cmd_audit(args: argparse.Namespace) -> int:
    n, m = args.n, args.m
    checks: list[tuple[str, bool, str]] = []

    def record(name: str, ok: bool, detail: str) -> None:
        checks.append((name, ok, detail))
        print(f"  {'ok  ' if ok else 'FAIL'} {name}: {detail}")

    print(f"audit {n}x{m}")
    witnesses: dict[DominationKind, int] = {}
    for kind in (DominationKind.TOTAL, DominationKind.PAIRED):
        try:
            result = best_upper_witness(n, m, kind)
            witnesses[kind] = result.claimed_cardinality
            record(
                f"construction:{kind.value}",
                True,
                f"{result.provenance} gives {result.claimed_cardinality} vertices",
            )
        except (ConstructionInvalidError, UnsupportedClassError, CongruenceError) as exc:
            record(f"construction:{kind.value}", False, str(exc))

    values: dict[DominationKind, int] = {}
    cache = ResultCache(args.cache_dir)
    for kind in (DominationKind.PLAIN, DominationKind.TOTAL, DominationKind.PAIRED):
        exact = _table_exact(n, m, kind)
        if exact is None:
            record(f"solve:{kind.value}", True, "skipped (beyond comfortable caps)")
            continue
        value, method = exact
        values[kind] = value
        detail = f"{value} via {method}"
        report = upper_bounds(n, m, kind)
        ok = report.lower_bound <= value <= report.best_upper()
        if report.exact is not None and report.exact != value:
            ok = False
            detail += f", formula says {report.exact}"
        if kind in witnesses and value > witnesses[kind]:
            ok = False
            detail += f", exceeds witness {witnesses[kind]}"
        if kind is DominationKind.PAIRED and value % 2:
            ok = False
            detail += ", odd paired value"
        prior = cache.get(n, m, kind, "auto")
        if prior is not None and prior[0] != value:
            ok = False
            detail += f", cache holds {prior[0]}"
        record(f"solve:{kind.value}", ok, detail)
        if ok:
            res = solve(n, m, kind, "auto")
            cert = Certificate.from_vertex_set(
                res.certificate, kind, f"solver:{res.method.value}"
            )
            cache.put(n, m, kind, "auto", value, cert.digest())

    if DominationKind.PLAIN in values and DominationKind.TOTAL in values:
        record(
            "chain:plain<=total",
            values[DominationKind.PLAIN] <= values[DominationKind.TOTAL],
            f"{values[DominationKind.PLAIN]} <= {values[DominationKind.TOTAL]}",
        )
    if DominationKind.TOTAL in values and DominationKind.PAIRED in values:
        record(
            "chain:total<=paired",
            values[DominationKind.TOTAL] <= values[DominationKind.PAIRED],
            f"{values[DominationKind.TOTAL]} <= {values[DominationKind.PAIRED]}",
        )
    failed = [name for name, ok, _ in checks if not ok]
    print(f"audit {'passed' if not failed else 'FAILED: ' + ', '.join(failed)}")
    return 0 if not failed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torusdom",
        description="Total and paired domination numbers of toroidal meshes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_instance(p: argparse.ArgumentParser) -> None:
        p.add_argument("--n", type=int, required=True, help="first cycle length")
        p.add_argument("--m", type=int, required=True, help="second cycle length")

    p_value = sub.add_parser("value", help="closed-form value or bound interval")
    add_instance(p_value)
    p_value.add_argument("--kind", choices=sorted(_KINDS), default="total")
    p_value.set_defaults(func=cmd_value)

    p_construct = sub.add_parser("construct", help="emit a pattern certificate")
    add_instance(p_construct)
    p_construct.add_argument("--kind", choices=sorted(_KINDS), default="total")
    p_construct.add_argument("--out", help="certificate path (default: stdout)")
    p_construct.set_defaults(func=cmd_construct)

    p_verify = sub.add_parser("verify", help="re-validate a certificate file")
    p_verify.add_argument("file", help="certificate path")
    p_verify.add_argument(
        "--kind", choices=sorted(_KINDS), help="override the claimed kind"
    )
    p_verify.set_defaults(func=cmd_verify)

    p_solve = sub.add_parser("solve", help="exact value with certificate")
    add_instance(p_solve)
    p_solve.add_argument("--kind", choices=sorted(_KINDS), default="total")
    p_solve.add_argument("--method", choices=["auto", "oracle", "dp"], default="auto")
    p_solve.add_argument("--out", help="write the certificate here")
    p_solve.add_argument("--cache-dir", help="result cache directory")
    p_solve.add_argument(
        "--canonical",
        action="store_true",
        help="emit the lexicographically least certificate "
        "(exact on small grids, rotation-orbit representative beyond)",
    )
    p_solve.set_defaults(func=cmd_solve)

    p_table = sub.add_parser("table", help="sweep instances to csv or json")
    p_table.add_argument(
        "--n", type=_parse_range, required=True, help="value or range like 3..13"
    )
    p_table.add_argument(
        "--m", type=_parse_range, required=True, help="value or range like 3..13"
    )
    p_table.add_argument("--kind", choices=sorted(_KINDS), default="total")
    p_table.add_argument("--format", choices=["csv", "json"], default="csv")
    p_table.add_argument("--out", help="output path (default: stdout)")
    p_table.set_defaults(func=cmd_table)

    p_audit = sub.add_parser("audit", help="end-to-end cross-checks")
    add_instance(p_audit)
    p_audit.add_argument("--cache-dir", help="result cache directory")
    p_audit.set_defaults(func=cmd_audit)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (
        InvalidDimensionsError,
        OutOfRangeError,
        InvalidInputError,
        CongruenceError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InstanceTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ConstructionInvalidError, UnsupportedClassError, CertificateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
