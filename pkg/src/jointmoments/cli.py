"""Command-line front end: ``coeff``, ``table``, ``verify`` and ``mc``.

Exit codes: 0 ok, 1 invalid query or usage, 2 backend mismatch,
3 identity failure, 4 unsupported oracle request.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from fractions import Fraction
from typing import Sequence

from .coefficients import CoeffQuery, Ensemble, InvalidQuery, coefficient

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_MISMATCH = 2
EXIT_IDENTITY = 3
EXIT_ORACLE = 4

ENSEMBLES = [e.value for e in Ensemble]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which is reserved for backend mismatch
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


# --- rational rendering --------------------------------------------------


def format_rational(x: Fraction) -> str:
    """``p/q``, or ``p`` when the denominator is 1; parses back with ``Fraction``."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def factorize(n: int, limit: int = 10**6) -> list[tuple[int, int]]:
    """Prime factorization by trial division up to ``limit``; a leftover
    cofactor is returned as a single (possibly composite) factor."""
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    out = []
    p = 2
    while p * p <= n and p <= limit:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def _product_string(n: int) -> tuple[str, int]:
    parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in factorize(n)]
    return "·".join(parts) if parts else "1", len(parts)


def format_factored(x: Fraction) -> str:
    """Render as e.g. ``23/(2^7·3·5·7)`` or ``-1/(2·5)``."""
    x = Fraction(x)
    if x == 0:
        return "0"
    sign = "-" if x < 0 else ""
    num, _ = _product_string(abs(x.numerator))
    if x.denominator == 1:
        return sign + num
    den, count = _product_string(x.denominator)
    if count > 1:
        den = f"({den})"
    return f"{sign}{num}/{den}"


# --- argument helpers ----------------------------------------------------


def parse_range(text: str) -> list[int]:
    """``"3"``, ``"0..4"`` (inclusive), ``"0:4"`` or ``"1,3,5"``; ``"2..1"`` is empty."""
    text = str(text).strip()
    try:
        if ".." in text or ":" in text:
            lo, hi = text.replace(":", "..").split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        if "," in text:
            return [int(t) for t in text.split(",") if t.strip()]
        if not text:
            return []
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; use N, A..B, A:B or a comma list") from None


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def load_config(path: str) -> dict[str, str]:
    """Read ``key = value`` lines; ``#`` starts a comment.  Keys use flag
    names with dashes or underscores (``n2-range = 0..3``)."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = line.split("=", 1)
            out[key.strip().replace("-", "_")] = value.strip()
    return out


def _query(args) -> CoeffQuery:
    return CoeffQuery(Ensemble.parse(args.ensemble), args.k1, args.k2, args.n1, args.n2).validate()


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- records -------------------------------------------------------------


def _coeff_record(q: CoeffQuery, backends: Sequence[str], factored: bool, decimal: bool) -> tuple[dict, bool]:
    values = {b: coefficient(q, backend=b) for b in backends}
    first = values[backends[0]]
    mismatch = len({r.value for r in values.values()}) > 1
    rec = {
        "ensemble": q.ensemble.value,
        "k1": q.k1,
        "k2": q.k2,
        "n1": q.n1,
        "n2": q.n2,
        "exponent": first.exponent,
    }
    for b, r in values.items():
        rec[f"value_{b}"] = format_rational(r.value)
    rec["backend"] = "+".join(backends)
    rec["mismatch"] = "MISMATCH" if mismatch else "ok"
    if factored:
        rec["factored"] = format_factored(first.value)
    if decimal:
        rec["float_value"] = float(first.value)
    return rec, mismatch


def _csv_text(records: list[dict], header: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    for rec in records:
        writer.writerow(rec)
    return buf.getvalue()


def _backends(choice: str) -> list[str]:
    return ["det", "comb"] if choice == "both" else [choice]


# --- commands ------------------------------------------------------------


def cmd_coeff(args) -> int:
    q = _query(args)
    backends = _backends(args.backend)
    rec, mismatch = _coeff_record(q, backends, args.factor, args.decimal)
    if args.format == "json":
        text = json.dumps(rec, indent=2) + "\n"
    elif args.format == "csv":
        text = _csv_text([rec], list(rec))
    else:
        if mismatch:
            text = "".join(f"{b}: {rec[f'value_{b}']} · (2N)^{rec['exponent']}\n" for b in backends)
        else:
            shown = rec["factored"] if args.factor else rec[f"value_{backends[0]}"]
            text = f"{shown} · (2N)^{rec['exponent']}\n"
    _emit(text, args.out)
    if mismatch:
        print("error: det and comb backends disagree", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def table_queries(ensemble, k1s, k2s, n1s, n2s) -> list[CoeffQuery]:
    """Valid queries of the grid, ordered by (k1, k2, n2, n1); invalid points are skipped."""
    out = []
    for k1 in k1s:
        for k2 in k2s:
            for n2 in n2s:
                for n1 in n1s:
                    q = CoeffQuery(Ensemble.parse(ensemble), k1, k2, n1, n2)
                    try:
                        q.validate()
                    except InvalidQuery:
                        continue
                    out.append(q)
    return out


def cmd_table(args) -> int:
    queries = table_queries(args.ensemble, args.k1_range, args.k2_range, args.n1_range, args.n2_range)
    backends = _backends(args.backend)
    records, bad = [], False
    for q in queries:
        rec, mismatch = _coeff_record(q, backends, args.factor, args.decimal)
        records.append(rec)
        bad |= mismatch
    if args.format == "json":
        text = json.dumps(records, indent=2) + "\n"
    else:
        header = ["ensemble", "k1", "k2", "n1", "n2", "exponent"]
        header += [f"value_{b}" for b in backends] + ["backend", "mismatch"]
        if args.factor:
            header.append("factored")
        if args.decimal:
            header.append("float_value")
        text = _csv_text(records, header)
    _emit(text, args.out)
    if bad:
        print("error: det and comb backends disagree on at least one row", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_verify(args) -> int:
    from .oracle import run_suite

    results = run_suite(args.suite, max_k=args.max_k, max_n=args.max_n, seed=args.seed)
    failed = [r for r in results if not r.passed]
    report = {
        "suite": args.suite,
        "total": len(results),
        "passed": len(results) - len(failed),
        "failed": len(failed),
        "results": [r.to_json() for r in results],
    }
    _emit(json.dumps(report, indent=1) + "\n", args.out)
    return EXIT_IDENTITY if failed else EXIT_OK


def cmd_mc(args) -> int:
    from .rmt_mc import asymptotic_report

    q = _query(args)
    if args.N < 1:
        raise InvalidQuery(f"N must be >= 1, got {args.N}")
    if args.oracle and args.N > 2:
        print(f"error: --oracle supports N <= 2, got N={args.N}", file=sys.stderr)
        return EXIT_ORACLE
    if args.samples < 2:
        raise InvalidQuery("--samples must be at least 2")
    rep = asymptotic_report(q, args.N, args.samples, args.seed, threads=args.threads, backend=args.backend)
    out = rep.to_json()
    out["backend"] = args.backend
    if args.oracle:
        from .oracle import weyl_quadrature_moment

        ref = weyl_quadrature_moment(q, args.N)
        est = rep.estimate
        out["oracle"] = ref
        out["oracle_z"] = (est.mean - ref) / est.stderr if est.stderr > 0 else (0.0 if est.mean == ref else None)
    _emit(json.dumps(out, indent=2) + "\n", args.out)
    return EXIT_OK


# --- parser --------------------------------------------------------------


def _add_query_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ensemble", required=True, choices=ENSEMBLES)
    for name in ("k1", "k2", "n1", "n2"):
        p.add_argument(f"--{name}", type=_nonneg, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="jointmoments", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="key=value file of default flag values")
    parser.add_argument("-v", "--verbose", action="store_true", help="log sampler diagnostics")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("coeff", help="one leading-order coefficient")
    _add_query_flags(p)
    p.add_argument("--backend", choices=["det", "comb", "both"], default="comb")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.add_argument("--factor", action="store_true", help="prime-factorized rendering")
    p.add_argument("--decimal", action="store_true", help="add a tagged float rendering")
    p.add_argument("--out")
    p.set_defaults(func=cmd_coeff)

    p = sub.add_parser("table", help="grid of coefficients from both backends")
    p.add_argument("--ensemble", required=True, choices=ENSEMBLES)
    p.add_argument("--k1-range", type=parse_range, default="0..2")
    p.add_argument("--k2-range", type=parse_range, default="1..2")
    p.add_argument("--n1-range", type=parse_range, default="0..3")
    p.add_argument("--n2-range", type=parse_range, default="0..3")
    p.add_argument("--backend", choices=["det", "comb", "both"], default="both")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--factor", action="store_true")
    p.add_argument("--decimal", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run an identity suite and print a JSON report")
    p.add_argument("--suite", required=True, choices=["props", "lemmas", "gamma", "closed", "cross"])
    p.add_argument("--max-k", type=_nonneg)
    p.add_argument("--max-n", type=_nonneg)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mc", help="Haar Monte Carlo moment and asymptotic ratio")
    _add_query_flags(p)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oracle", action="store_true", help="compare with exact quadrature (N <= 2)")
    p.add_argument("--backend", choices=["lapack", "jacobi", "metropolis"], default="lapack")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_mc)
    return parser


def _apply_config(parser: argparse.ArgumentParser, config: dict[str, str]) -> None:
    for action in parser._subparsers._group_actions:
        for sp in action.choices.values():
            dests = {a.dest: a for a in sp._actions}
            defaults = {}
            for key, value in config.items():
                if key in dests:
                    a = dests[key]
                    if isinstance(a, argparse._StoreTrueAction):
                        defaults[key] = value.lower() in ("1", "true", "yes", "on")
                    else:
                        defaults[key] = value
                        a.required = False
            sp.set_defaults(**defaults)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    try:
        if known.config:
            _apply_config(parser, load_config(known.config))
    except (OSError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    # string defaults from a config file still need their type conversion
    for key in ("k1_range", "k2_range", "n1_range", "n2_range"):
        if isinstance(getattr(args, key, None), str):
            setattr(args, key, parse_range(getattr(args, key)))
    for key in ("k1", "k2", "n1", "n2", "N", "samples", "seed", "threads", "max_k", "max_n"):
        value = getattr(args, key, None)
        if isinstance(value, str):
            try:
                setattr(args, key, int(value))
            except ValueError:
                print(f"error: {key} must be an integer, got {value!r}", file=sys.stderr)
                return EXIT_INVALID
    try:
        return args.func(args)
    except InvalidQuery as exc:
        print(f"error: invalid query: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
