"""Command-line front end.

Subcommands
-----------
degrees   closed-form and census degrees side by side for a family spec
census    full subgroup census of a family spec or a Cayley-table file
verify    formula-vs-oracle sweep over parameter ranges
table     reproduce the bundled degree tables (keys: ex54, appendix)
limits    cataloged limit of a degree function plus a convergence probe
density   greedy product approximation of a target in (0, 1]

Exit codes: 0 success, 1 usage/parse error, 2 resource cap, 3 verification
mismatch. Machine formats (json lines, csv) carry exact fraction strings and
are byte-deterministic for a fixed invocation.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from fractions import Fraction
from typing import Optional

from . import density as density_mod
from . import families, formulas, groupcore
from .errors import DomainError, ResourceLimitError, SubdegError
from .families import (
    C2npxC2,
    C2nPlus1xC2,
    CpByCqn,
    CpnByC4,
    CpnByQ2m,
    CqmCpnByC4,
    CqmCpnByQ2r,
    Cyclic,
    Dicyclic,
    Dihedral,
    Dihedral2,
    Hamiltonian,
    ModularP3,
    Quaternion2,
    Semidihedral2,
    parse_spec,
    spec_string,
)
from .numtheory import DEFAULT_DECIMAL_DIGITS, decimal_str, parse_exact

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RESOURCE = 2
EXIT_MISMATCH = 3

_DEGREE_FIELDS = ("alpha", "beta", "cdeg", "ndeg", "jdeg")


def _frac(value: Optional[Fraction]) -> Optional[str]:
    return None if value is None else str(value)


def _dec(value: Optional[Fraction], digits: int) -> Optional[str]:
    return None if value is None else decimal_str(value, digits)


def _parse_range(text: str) -> list[int]:
    """Inclusive 'a..b', comma list 'a,b,c', or single integer."""
    text = text.strip()
    if ".." in text:
        lo, _, hi = text.partition("..")
        try:
            lo_i, hi_i = int(lo), int(hi)
        except ValueError:
            raise DomainError(f"bad range {text!r}; expected a..b") from None
        if hi_i < lo_i:
            raise DomainError(f"empty range {text!r}")
        return list(range(lo_i, hi_i + 1))
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise DomainError(f"bad integer list {text!r}") from None


class _Output:
    """Collects homogeneous row dicts and emits them in the selected format."""

    def __init__(self, fmt: str, stream):
        self.fmt = fmt
        self.stream = stream

    def emit(self, rows: list[dict], pretty_fn) -> None:
        if self.fmt == "json":
            for row in rows:
                print(json.dumps(row), file=self.stream)
        elif self.fmt == "csv":
            if not rows:
                return
            fields = list(rows[0].keys())
            writer = csv.DictWriter(self.stream, fieldnames=fields,
                                    lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow({k: _csv_cell(row.get(k)) for k in fields})
        else:
            pretty_fn(rows, self.stream)


def _csv_cell(value):
    if value is None:
        return ""
    if isinstance(value, dict):
        return ";".join(f"{k}:{v}" for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return ";".join(map(str, value))
    return value


def _degree_cells(values: dict, digits: int) -> dict:
    row = {}
    for name, value in values.items():
        row[name] = _frac(value)
        row[f"{name}_decimal"] = _dec(value, digits)
    return row


# ---------------------------------------------------------------------------
# degrees / census
# ---------------------------------------------------------------------------

def _load_target_group(args):
    if getattr(args, "input", None):
        G = groupcore.load_group(args.input)
        return G, None
    if not args.spec:
        raise DomainError("a family spec or --input FILE is required")
    spec = parse_spec(args.spec)
    return families.construct(spec), spec


def _cmd_degrees(args, out: _Output) -> int:
    G, spec = _load_target_group(args)
    oracle = groupcore.group_degrees(G, args.cap)
    row = {
        "spec": spec_string(spec) if spec is not None else None,
        "input": getattr(args, "input", None),
        "order": G.order,
    }
    formula_values = {name: None for name in ("alpha", "beta", "cdeg", "ndeg")}
    provenance: list[str] = []
    if spec is not None:
        res = formulas.evaluate(spec)
        formula_values = res.values()
        provenance = list(res.provenance)
    row["formula"] = _degree_cells(formula_values, args.digits)
    row["formula_provenance"] = provenance
    row["oracle"] = _degree_cells(
        {name: getattr(oracle, name) for name in _DEGREE_FIELDS}, args.digits)

    def pretty(rows, stream):
        r = rows[0]
        title = r["spec"] or r["input"]
        print(f"group {title}  (order {r['order']})", file=stream)
        print(f"{'function':>8}  {'formula':>12}  {'oracle':>12}", file=stream)
        for name in _DEGREE_FIELDS:
            f = r["formula"].get(name) or "-"
            o = r["oracle"].get(name) or "-"
            od = r["oracle"].get(f"{name}_decimal") or ""
            print(f"{name:>8}  {f:>12}  {o:>12}  ({od})", file=stream)
        if r["formula_provenance"]:
            print("provenance: " + ", ".join(r["formula_provenance"]), file=stream)

    out.emit([row], pretty)
    return EXIT_OK


def _cmd_census(args, out: _Output) -> int:
    G, spec = _load_target_group(args)
    c = groupcore.census(G, args.cap)
    d = groupcore.degrees(c)
    row = {
        "spec": spec_string(spec) if spec is not None else None,
        "input": getattr(args, "input", None),
        "order": c.group_order,
        "total": c.total,
        "cyclic": c.cyclic,
        "normal": c.normal,
        "nilpotent": c.nilpotent,
        "by_order": {str(k): v for k, v in c.by_order.items()},
    }
    row.update(_degree_cells(
        {name: getattr(d, name) for name in _DEGREE_FIELDS}, args.digits))

    def pretty(rows, stream):
        r = rows[0]
        title = r["spec"] or r["input"]
        print(f"group {title}  (order {r['order']})", file=stream)
        print(f"subgroups: total {r['total']}, cyclic {r['cyclic']},"
              f" normal {r['normal']}, nilpotent {r['nilpotent']}", file=stream)
        pairs = " ".join(f"{k}:{v}" for k, v in r["by_order"].items())
        print(f"by order: {pairs}", file=stream)
        for name in _DEGREE_FIELDS:
            print(f"{name:>8} = {r[name]:>12}  ({r[name + '_decimal']})",
                  file=stream)

    out.emit([row], pretty)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

_VERIFY_FAMILIES = {
    "D": (Dihedral2, ("n",)),
    "Q": (Quaternion2, ("n",)),
    "SD": (Semidihedral2, ("n",)),
    "D2n": (Dihedral, ("n",)),
    "CxC2": (C2nPlus1xC2, ("n",)),
    "CpxC2": (C2npxC2, ("n", "p")),
    "Dic": (Dicyclic, ("k",)),
    "M": (ModularP3, ("p",)),
    "PQ": (CpByCqn, ("p", "q", "n", "s")),
    "DicC4": (CpnByC4, ("p", "n")),
    "DicQ": (CpnByQ2m, ("p", "n", "m")),
    "DicPQC4": (CqmCpnByC4, ("p", "n", "q", "m")),
    "DicPQQ": (CqmCpnByQ2r, ("p", "n", "q", "m", "r")),
}


def _verify_specs(args) -> list:
    if args.family == "Ham":
        if args.n is None:
            raise DomainError("verify Ham requires --n")
        odd = tuple(parse_spec(text) for text in (args.odd or []))
        return [Hamiltonian(n, odd) for n in _parse_range(args.n)]
    if args.family not in _VERIFY_FAMILIES:
        raise DomainError(
            f"unknown verify family {args.family!r}; choose from "
            + ", ".join(sorted(_VERIFY_FAMILIES) + ["Ham"]))
    cls, params = _VERIFY_FAMILIES[args.family]
    axes = []
    for param in params:
        raw = getattr(args, param, None)
        if raw is None:
            raise DomainError(f"verify {args.family} requires --{param}")
        axes.append(_parse_range(raw))
    specs = []
    for combo in itertools.product(*axes):
        specs.append(cls(**dict(zip(params, combo))))
    return specs


def _cmd_verify(args, out: _Output) -> int:
    specs = _verify_specs(args)
    rows = []
    any_mismatch = False
    any_skipped = False
    for spec in specs:
        report = formulas.verify(spec, cap=args.cap)
        any_mismatch |= not report.passed and not report.oracle_skipped
        any_skipped |= report.oracle_skipped
        rows.append(report.to_dict())

    def pretty(rows_, stream):
        for r in rows_:
            if r["oracle_skipped"]:
                status = "SKIP"
            else:
                status = "PASS" if r["pass"] else "FAIL"
            checked = [
                f"{c['function']} {c['formula']}{'==' if c['match'] else '!='}{c['oracle']}"
                for c in r["comparisons"] if c["match"] is not None
            ]
            detail = "; ".join(checked) if checked else "no formulas"
            print(f"{status}  {r['spec']}  (order {r['order']})  {detail}",
                  file=stream)

    if out.fmt == "csv":
        flat = []
        for r in rows:
            for c in r["comparisons"]:
                flat.append({
                    "spec": r["spec"], "order": r["order"],
                    "function": c["function"], "formula": c["formula"],
                    "oracle": c["oracle"], "match": c["match"],
                    "oracle_skipped": r["oracle_skipped"],
                })
        out.emit(flat, lambda *_: None)
    else:
        out.emit(rows, pretty)
    if any_mismatch:
        return EXIT_MISMATCH
    if any_skipped:
        return EXIT_RESOURCE
    return EXIT_OK


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------

def _cmd_table(args, out: _Output) -> int:
    if args.which == "ex54":
        return _table_semidirect(args, out)
    return _table_appendix(args, out)


def _table_semidirect(args, out: _Output) -> int:
    rows = []
    for p in _parse_range(args.p):
        for n in _parse_range(args.n):
            for spec in (CpnByC4(p, n), CpnByQ2m(p, n, 3)):
                res = formulas.evaluate(spec)
                rows.append({
                    "group": spec_string(spec),
                    "p": p,
                    "n": n,
                    "alpha": _frac(res.alpha),
                    "beta": _frac(res.beta),
                    "cdeg": _frac(res.cdeg),
                    "ndeg": _frac(res.ndeg),
                })

    def pretty(rows_, stream):
        for r in rows_:
            print(f"{r['group']:>16}  p={r['p']} n={r['n']}  alpha={r['alpha']}"
                  f"  beta={r['beta']}  cdeg={r['cdeg']}  ndeg={r['ndeg']}",
                  file=stream)

    out.emit(rows, pretty)
    return EXIT_OK


def _appendix_entries(args) -> list[tuple]:
    """(family spec, varying parameter) columns of the bundled summary table."""
    try:
        n, p = int(args.n), int(args.p)
    except ValueError:
        raise DomainError("the appendix table takes single integers for --n/--p")

    odd = tuple(parse_spec(text) for text in (args.odd or ["C(3)"]))
    return [
        (Dihedral2(n), "n"),
        (Quaternion2(n), "n"),
        (Semidihedral2(n), "n"),
        (C2nPlus1xC2(n), "n"),
        (C2npxC2(n, p), "n"),
        (Hamiltonian(args.ham_n, odd), None),
        (Dicyclic(args.k), None),
        (CpnByC4(p, args.dic_n), "n"),
        (CpnByQ2m(p, args.dic_n, 3), "n"),
        (ModularP3(p), "p"),
    ]


def _as_int_or_frac(value: Fraction):
    return int(value) if value.denominator == 1 else str(value)


def _table_appendix(args, out: _Output) -> int:
    rows = []
    for spec, vary in _appendix_entries(args):
        family = spec_string(spec)
        res = formulas.evaluate(spec)
        order = families.declared_order(spec)
        entries = [("order", order)]
        count = res.beta * order if res.beta is not None else None
        cyc = res.alpha * order if res.alpha is not None else None
        entries.append(("subgroup_count",
                        None if count is None else _as_int_or_frac(count)))
        entries.append(("cyclic_count",
                        None if cyc is None else _as_int_or_frac(cyc)))
        for name in ("alpha", "beta", "cdeg", "ndeg"):
            entries.append((name, _frac(getattr(res, name))))
        for name in ("alpha", "beta", "cdeg"):
            if vary is None:
                entries.append((f"{name}_limit", None))
                continue
            lim = formulas.limit(spec, name, vary)
            entries.append((f"{name}_limit", None if lim is None else _frac(lim.value)))
        for prop, value in entries:
            rows.append({"property": prop, "family": family,
                         "value": "-" if value is None else value})

    def pretty(rows_, stream):
        for r in rows_:
            print(f"{r['property']:>16}  {r['family']:>20}  {r['value']}",
                  file=stream)

    out.emit(rows, pretty)
    return EXIT_OK


# ---------------------------------------------------------------------------
# limits
# ---------------------------------------------------------------------------

def _cmd_limits(args, out: _Output) -> int:
    spec = parse_spec(args.spec)
    entry = formulas.limit(spec, args.function, args.vary)
    if entry is None:
        print(f"no cataloged limit for {args.function} of {spec_string(spec)}"
              f" as {args.vary} grows", file=sys.stderr)
        return EXIT_OK
    rows = []
    base = {
        "spec": spec_string(spec),
        "function": entry.function,
        "vary": entry.vary,
        "limit": _frac(entry.value),
        "limit_decimal": _dec(entry.value, args.digits),
    }
    if args.values:
        probe = formulas.limit_convergence_probe(entry, _parse_range(args.values))
        for value, gap in probe:
            row = dict(base)
            row["parameter"] = value
            row["gap"] = _frac(gap)
            row["gap_decimal"] = _dec(gap, args.digits)
            rows.append(row)
    else:
        rows.append(base)

    def pretty(rows_, stream):
        r0 = rows_[0]
        print(f"limit of {r0['function']} for {r0['spec']} as {r0['vary']} -> inf:"
              f" {r0['limit']}  ({r0['limit_decimal']})", file=stream)
        for r in rows_:
            if "parameter" in r:
                print(f"  {r['vary']}={r['parameter']:>6}  gap {r['gap']}"
                      f"  ({r['gap_decimal']})", file=stream)

    out.emit(rows, pretty)
    return EXIT_OK


# ---------------------------------------------------------------------------
# density
# ---------------------------------------------------------------------------

def _cmd_density(args, out: _Output) -> int:
    target = parse_exact(args.target)
    epsilon = parse_exact(args.eps)
    try:
        approx = density_mod.approximate(target, epsilon, args.prime_bound)
    except ResourceLimitError as exc:
        best = exc.partial
        if best is not None:
            # huge exact fractions are withheld; decimals describe the result
            row = best.to_dict(args.digits, exact=False)
            row["converged"] = False
            out.emit([row], _density_pretty)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    row = approx.to_dict(args.digits)
    row["converged"] = True
    out.emit([row], _density_pretty)
    return EXIT_OK


def _density_pretty(rows, stream):
    r = rows[0]
    print(f"target {r['target']}  epsilon {r['epsilon']}", file=stream)
    primes = r["primes"]
    shown = ",".join(map(str, primes[:12])) + (",..." if len(primes) > 12 else "")
    print(f"primes ({r['prime_count']}): [{shown}]", file=stream)
    if "product" in r:
        print(f"product = {r['product']}", file=stream)
        print(f"error   = {r['error']}", file=stream)
    print(f"product ~ {r['product_decimal']}", file=stream)
    print(f"error   ~ {r['error_decimal']}  after {r['steps']} primes examined",
          file=stream)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_common(sub, cap=False, digits=True):
    sub.add_argument("--format", choices=("pretty", "json", "csv"),
                     default="pretty", help="output format")
    sub.add_argument("--json", dest="format", action="store_const", const="json",
                     help="shorthand for --format json")
    if cap:
        sub.add_argument("--cap", type=int, default=None,
                         help="enumeration cap override (hard maximum 2048)")
    if digits:
        sub.add_argument("--digits", type=int, default=DEFAULT_DECIMAL_DIGITS,
                         help="significant digits for decimal rendering")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subdeg",
        description="Exact subgroup-degree functions of finite groups:"
                    " closed-form catalog vs. brute-force lattice census.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("degrees", help="formula and oracle degrees side by side")
    p.add_argument("spec", nargs="?", help="family spec, e.g. 'Q(16)' or 'C(12)xC(2)'")
    p.add_argument("--input", help="Cayley-table JSON file instead of a spec")
    _add_common(p, cap=True)

    p = subs.add_parser("census", help="full subgroup census")
    p.add_argument("spec", nargs="?", help="family spec")
    p.add_argument("--input", help="Cayley-table JSON file instead of a spec")
    _add_common(p, cap=True)

    p = subs.add_parser("verify", help="formula-vs-oracle sweep")
    p.add_argument("family", help="family key: " + ", ".join(
        sorted(_VERIFY_FAMILIES) + ["Ham"]))
    for flag in ("n", "p", "q", "m", "r", "k", "s"):
        p.add_argument(f"--{flag}", help=f"range for {flag} (a..b, list, or single)")
    p.add_argument("--odd", action="append",
                   help="odd component spec for Ham (repeatable)")
    _add_common(p, cap=True, digits=False)

    p = subs.add_parser("table", help="reproduce the bundled degree tables")
    p.add_argument("which", choices=("ex54", "appendix"))
    p.add_argument("--p", default="3", help="odd prime (range allowed for ex54)")
    p.add_argument("--n", default="4", type=_int_for_table,
                   help="2-power exponent (appendix) / range (ex54)")
    p.add_argument("--q", default="5", type=int, help="second odd prime (appendix)")
    p.add_argument("--m", default="1", type=int)
    p.add_argument("--r", default="3", type=int)
    p.add_argument("--k", default="6", type=int, help="dicyclic index (appendix)")
    p.add_argument("--ham-n", default=1, type=int, dest="ham_n",
                   help="2-power rank of the Hamiltonian column")
    p.add_argument("--dic-n", default=1, type=int, dest="dic_n",
                   help="exponent n of the two semidirect columns (appendix)")
    p.add_argument("--odd", action="append",
                   help="odd component of the Hamiltonian column (default C(3))")
    _add_common(p)

    p = subs.add_parser("limits", help="cataloged limit plus convergence probe")
    p.add_argument("spec", help="family spec with the fixed parameters")
    p.add_argument("--function", required=True,
                   choices=("alpha", "beta", "cdeg", "ndeg"))
    p.add_argument("--vary", default="n", help="which parameter grows (default n)")
    p.add_argument("--values", help="probe range a..b")
    _add_common(p)

    p = subs.add_parser("density", help="greedy product approximation in (0, 1]")
    p.add_argument("target", help="target in (0,1], e.g. 0.8 or 4/5")
    p.add_argument("--eps", default="1/1000", help="tolerance (default 1/1000)")
    p.add_argument("--prime-bound", type=int, dest="prime_bound",
                   default=density_mod.DEFAULT_PRIME_BOUND,
                   help="largest prime value the scan may use")
    _add_common(p)
    return parser


def _int_for_table(text: str):
    # the appendix table needs a plain int while ex54 accepts a range string;
    # keep the raw string and let each path parse it
    return text


_COMMANDS = {
    "degrees": _cmd_degrees,
    "census": _cmd_census,
    "verify": _cmd_verify,
    "table": _cmd_table,
    "limits": _cmd_limits,
    "density": _cmd_density,
}


def run(argv=None, stdout=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    stream = stdout if stdout is not None else sys.stdout
    out = _Output(args.format, stream)
    handler = _COMMANDS[args.command]
    try:
        return handler(args, out)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SubdegError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
