"""
Command-line front end.

    modrep build  --prime 5 --rep psu2 --format json
    modrep verify --primes 5..50 --suite identities
    modrep report --primes 5..23

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or precondition
error, 3 resource guard refusal.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from modrep.cyclotomic import CycNum, is_prime
from modrep.eisenstein import UnsupportedPrime, check_prime
from modrep.matrix import CycMatrix
from modrep.weil import RepPair

SCHEMA = 1
REPS = ("unfolded", "psu3", "psu2", "psu2conj")
SUITES = ("relations", "symmetries", "parity", "identities", "svalue", "theorem2", "commutant")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    primes: list
    rep: str = "psu3"
    suite: str = "all"
    mode: str = "exact"
    field_order: int | None = None
    crosscheck: bool = False
    fmt: str = "pretty"
    out: str | None = None
    jobs: int = 1
    inputs: tuple = ()


# -- matrix files ------------------------------------------------------------


def build_rep(r: int, rep: str) -> RepPair:
    from modrep.psu2 import build_psu2, build_psu2_conjugated
    from modrep.weil import build_restricted, build_unfolded

    if rep not in REPS:
        raise UsageError(f"unknown rep {rep!r}; choose from {', '.join(REPS)}")
    if rep in ("unfolded", "psu3"):
        check_prime(r)
    elif r < 3 or not is_prime(r):
        raise UsageError(f"r = {r} must be an odd prime")
    return {
        "unfolded": build_unfolded,
        "psu3": build_restricted,
        "psu2": build_psu2,
        "psu2conj": build_psu2_conjugated,
    }[rep](r)


def _to_field(rep: RepPair, m: int | None):
    m = m or rep.field_order
    if m % rep.field_order:
        raise UsageError(f"field order {m} is not a multiple of {rep.field_order}")
    return rep.S.to_order(m), rep.T.to_order(m), m


def rep_to_json(rep: RepPair, field_order: int | None = None) -> dict:
    S, T, m = _to_field(rep, field_order)
    return {
        "schema": SCHEMA,
        "prime": rep.r,
        "label": rep.label,
        "dim": rep.dim,
        "field_order": m,
        "basis_labels": list(rep.basis_labels),
        "S": [[x.to_json() for x in row] for row in S.entries()],
        "T": [T[i, i].to_json() for i in range(rep.dim)],
    }


def rep_from_json(obj: dict) -> RepPair:
    if obj.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {obj.get('schema')!r}")
    m = obj["field_order"]
    S = CycMatrix.from_entries([[CycNum.from_json(x) for x in row] for row in obj["S"]], order=m)
    t = [CycNum.from_json(x) for x in obj["T"]]
    T = CycMatrix.from_entries([[t[i] if i == j else 0 for j in range(len(t))] for i in range(len(t))], order=m)
    return RepPair(obj["prime"], obj["label"], S, T, tuple(obj["basis_labels"]))


def rep_to_csv(rep: RepPair) -> str:
    S, T = rep.S.to_complex(), rep.T.to_complex()
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["matrix", "row", "col", "re", "im"])
    for name, M in (("S", S), ("T", T)):
        for i in range(rep.dim):
            for j in range(rep.dim):
                if name == "T" and i != j:
                    continue
                w.writerow([name, i, j, repr(float(M[i, j].real)), repr(float(M[i, j].imag))])
    return buf.getvalue()


def rep_to_pretty(rep: RepPair) -> str:
    lines = [f"{rep.label}  r={rep.r}  dim={rep.dim}  Q(zeta_{rep.field_order})"]
    for name, M in (("S", rep.S), ("T", rep.T)):
        lines.append(f"{name}:")
        for row in M.entries():
            lines.append("  " + "  ".join(_fmt_cyc(x) for x in row))
    return "\n".join(lines)


def _fmt_cyc(x: CycNum, show_order: bool = False) -> str:
    if x.is_zero():
        return "0"
    if show_order:
        return f"{_fmt_cyc(x)} [m={x.order}]"
    # whichever of the stored and power-basis forms is shorter
    terms = min(list(x.items()), list(x.reduced().items()), key=len)
    parts = []
    for k, c in terms:
        coef = "" if c == 1 and k else ("-" if c == -1 and k else str(c))
        mono = "z" if k == 1 else f"z^{k}"
        parts.append(f"{coef}{mono}" if k else str(c))
    return "+".join(parts).replace("+-", "-")


def cmd_build(cfg: RunConfig) -> int:
    if len(cfg.primes) != 1:
        raise UsageError("build takes a single --prime")
    rep = build_rep(cfg.primes[0], cfg.rep)
    if cfg.fmt == "json":
        text = json.dumps(rep_to_json(rep, cfg.field_order))
    elif cfg.fmt == "csv":
        text = rep_to_csv(rep)
    else:
        text = rep_to_pretty(rep)
    _emit(text, cfg.out)
    return EXIT_OK


# -- verification suites -----------------------------------------------------


def _suite_applies(suite: str, r: int) -> bool:
    if suite == "identities":
        return is_prime(r) and r >= 3
    try:
        check_prime(r)
    except UnsupportedPrime:
        return False
    return True


def run_suite(suite: str, r: int, cfg: RunConfig):
    from modrep import charsums, repcheck
    from modrep.weil import all_symmetry_operators, build_unfolded

    report = repcheck.VerifyReport(prime=r)
    if suite == "relations":
        rep = build_rep(r, cfg.rep)
        rel = repcheck.projective_relations(rep)
        report.extend(rel)
        try:
            lifted = repcheck.lift(rep, field_order=cfg.field_order, relations=rel)
        except repcheck.LiftError as exc:
            report.add("lift", False, str(exc))
        else:
            for name, ok in lifted.honest_relations().items():
                report.add(f"lifted {name}", ok, claim="honest SL(2,Z) relation")
            report.scalars.update({"c1": lifted.c1, "c2": lifted.c2})
    elif suite == "symmetries":
        U = build_unfolded(r)
        for name, op in all_symmetry_operators(r).items():
            report.add(f"{name} commutes with S", op.commutes_with(U.S), claim="symmetry commutes with SL(2,Z)")
            report.add(f"{name} commutes with T", op.commutes_with(U.T))
        C = repcheck.charge_conjugation(r).to_matrix(U.S.order)
        report.add("S^2 = r^2 C", U.S @ U.S == C * (r * r), claim="S^2 is charge conjugation up to r^2")
    elif suite == "parity":
        _, _, rep = repcheck.parity_split(build_unfolded(r))
        report.extend(rep)
        report.parity_dims = rep.parity_dims
    elif suite == "identities":
        for name, (ok, n) in charsums.identity_suite(r).items():
            report.add(f"{name} identity", ok, {"cases": n})
        if _suite_applies("svalue", r):
            half = (r - 1) // 2
            pairs = [(i, j) for i in range(1, half + 1) for j in range(1, half + 1) if i != j]
            ok = all(charsums.alpha_beta_identity(r, i, j).equal for i, j in pairs)
            report.add("alpha/beta identity", ok, {"cases": len(pairs)})
    elif suite == "svalue":
        res = charsums.s_value(r)
        report.add("s direct = closed form", res.equal, res.lhs)
        report.scalars["s"] = res.lhs
    elif suite == "theorem2":
        report = repcheck.theorem2_verify(r, crosscheck=cfg.crosscheck)
    elif suite == "commutant":
        rep = build_rep(r, cfg.rep)
        report = repcheck.commutant_report(rep, mode=cfg.mode)
    else:
        raise UsageError(f"unknown suite {suite!r}")
    return report


def _verify_one(args):
    suite, r, cfg = args
    return suite, r, run_suite(suite, r, cfg).to_json()


def cmd_verify(cfg: RunConfig) -> int:
    from modrep.repcheck import ResourceGuardError

    suites = [s for s in SUITES if s != "commutant"] if cfg.suite == "all" else [cfg.suite]
    if cfg.suite == "all":
        suites.append("commutant")
    single = len(cfg.primes) == 1
    jobs = []
    for r in cfg.primes:
        for s in suites:
            if _suite_applies(s, r):
                jobs.append((s, r, cfg))
            elif single and cfg.suite != "all":
                check_prime(r)  # raises with the reason
    results, code = [], EXIT_OK
    try:
        if cfg.jobs > 1:
            with ProcessPoolExecutor(cfg.jobs) as pool:
                results = list(pool.map(_verify_one, jobs))
        else:
            for job in jobs:
                results.append(_verify_one(job))
    except ResourceGuardError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        code = EXIT_GUARD
    results.sort(key=lambda t: (t[1], t[0]))
    if code == EXIT_OK and not all(rep["passed"] for _, _, rep in results):
        code = EXIT_FAIL
    doc = {"schema": SCHEMA, "mode": cfg.mode, "results": [{"suite": s, **rep} for s, _, rep in results]}
    if cfg.fmt == "json":
        text = json.dumps(doc, indent=1)
    else:
        text = _pretty_verify(doc)
    _emit(text, cfg.out)
    return code


def _pretty_verify(doc) -> str:
    lines = []
    for res in doc["results"]:
        lines.append(f"== r={res['prime']} {res['suite']}: {'PASS' if res['passed'] else 'FAIL'}")
        for c in res["checks"]:
            tag = "ok  " if c["passed"] else "FAIL"
            claim = f"  [{c['claim']}]" if c["claim"] else ""
            lines.append(f"  {tag} {c['name']}{claim}")
        if res["parity_dims"]:
            lines.append(f"  parity dims (+, -): {tuple(res['parity_dims'])}")
        if res["commutant_dim"] is not None:
            lines.append(f"  commutant dim: {res['commutant_dim']}")
        for k, v in res["scalars"].items():
            lines.append(f"  {k} = {_fmt_value(v)}")
    return "\n".join(lines)


def _fmt_value(v):
    if isinstance(v, dict) and "numeric" in v:
        re, im = (0.0 if abs(t) < 1e-12 else t for t in v["numeric"])
        if im == 0:
            return f"{re:.6g}"
        return f"{im:.6g}i" if re == 0 else f"{re:.6g}{im:+.6g}i"
    if isinstance(v, list):
        return "(" + ", ".join(_fmt_value(x) for x in v) + ")"
    return str(v)


# -- report ------------------------------------------------------------------

COLUMNS = ("r", "eps", "c (exact)", "c (numeric)", "c^2", "S S' scalar", "commutant psu3/psu2", "parity dims", "lift c1, c2")


def report_row(r: int, mode: str = "exact") -> dict:
    from modrep import repcheck
    from modrep.weil import build_unfolded

    th = repcheck.theorem2_verify(r, crosscheck=False)
    c = th.proportionality_constant
    psu3, psu2 = repcheck.comparison_pair(r)
    dims = [repcheck.commutant_dim(rep, mode=mode) for rep in (psu3, psu2)]
    _, _, par = repcheck.parity_split(build_unfolded(r))
    tag = "" if mode == "exact" else f" (float, tol={repcheck.FLOAT_TOL:g})"
    return {
        "r": r,
        "eps": th.scalars["epsilon"],
        "c (exact)": _fmt_cyc(c, True) if c is not None else "none",
        "c (numeric)": _fmt_value(repcheck._jsonable(c)) if c is not None else "",
        "c^2": _fmt_cyc(th.scalars["c^2"]) if "c^2" in th.scalars else "",
        "S S' scalar": _fmt_value(repcheck._jsonable(th.scalars.get("product: product_scalar"))),
        "commutant psu3/psu2": f"{dims[0]}/{dims[1]}{tag}",
        "parity dims": f"{par.parity_dims[0]}+{par.parity_dims[1]}",
        "lift c1, c2": f"{_fmt_cyc(th.scalars['psu3 c1'])}, {_fmt_cyc(th.scalars['psu3 c2'], True)}"
        if "psu3 c1" in th.scalars
        else "failed",
    }


def _rows_from_files(paths):
    rows = []
    for p in paths:
        doc = json.loads(Path(p).read_text() or "{}")
        for res in doc.get("results", []):
            if res.get("suite") != "theorem2":
                continue
            sc = res["scalars"]
            c = res["proportionality_constant"]
            rows.append(
                {
                    "r": res["prime"],
                    "eps": sc.get("epsilon"),
                    "c (exact)": _fmt_cyc(CycNum.from_json(c["exact"]), True) if c else "none",
                    "c (numeric)": _fmt_value(c) if c else "",
                    "c^2": _fmt_cyc(CycNum.from_json(sc["c^2"]["exact"])) if "c^2" in sc else "",
                    "S S' scalar": _fmt_value(sc.get("product: product_scalar")),
                    "commutant psu3/psu2": "",
                    "parity dims": "",
                    "lift c1, c2": ", ".join(_fmt_value(sc[k]) for k in ("psu3 c1", "psu3 c2") if k in sc),
                }
            )
    return rows


def render_table(rows) -> str:
    widths = {c: max([len(c)] + [len(str(row[c])) for row in rows]) for c in COLUMNS}
    out = [" | ".join(c.ljust(widths[c]) for c in COLUMNS), "-+-".join("-" * widths[c] for c in COLUMNS)]
    for row in rows:
        out.append(" | ".join(str(row[c]).ljust(widths[c]) for c in COLUMNS))
    return "\n".join(out)


def cmd_report(cfg: RunConfig) -> int:
    if cfg.inputs:
        rows = _rows_from_files(cfg.inputs)
    else:
        rows = [report_row(r, cfg.mode) for r in cfg.primes if _suite_applies("theorem2", r)]
    rows.sort(key=lambda row: row["r"])
    if cfg.fmt == "json":
        text = json.dumps({"schema": SCHEMA, "rows": rows}, indent=1)
    else:
        text = render_table(rows)
    _emit(text, cfg.out)
    return EXIT_OK


# -- argument handling -------------------------------------------------------


def _emit(text, out):
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def parse_primes(prime, primes):
    if prime is not None and primes is not None:
        raise UsageError("give --prime or --primes, not both")
    if prime is not None:
        return [prime]
    if primes is None:
        return []
    try:
        lo, hi = (int(x) for x in primes.split(".."))
    except ValueError:
        raise UsageError(f"--primes expects A..B, got {primes!r}") from None
    return [p for p in range(lo, hi + 1) if is_prime(p)]


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int)
    common.add_argument("--primes", metavar="A..B")
    common.add_argument("--rep", choices=REPS, default="psu3")
    common.add_argument("--mode", choices=("exact", "float"), default="exact")
    common.add_argument("--field-order", type=int, metavar="M")
    common.add_argument("--crosscheck", action="store_true")
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "pretty"), default=None)
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for prime sweeps")

    p = argparse.ArgumentParser(prog="modrep", description="Exact SL(2,Z) modular data for quantum PSU(3) and PSU(2).")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common], help="write S and T of a representation")
    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    rp = sub.add_parser("report", parents=[common], help="per-prime summary table")
    rp.add_argument("inputs", nargs="*", help="verify JSON files (default: live run)")
    return p


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    from modrep.repcheck import ResourceGuardError

    try:
        primes = parse_primes(args.prime, args.primes)
        if args.command != "report" and not primes:
            raise UsageError("need --prime or --primes")
        cfg = RunConfig(
            primes=primes,
            rep=args.rep,
            suite=getattr(args, "suite", "all"),
            mode=args.mode,
            field_order=args.field_order,
            crosscheck=args.crosscheck,
            fmt=args.fmt or ("json" if args.command == "build" else "pretty"),
            out=args.out,
            jobs=args.jobs,
            inputs=tuple(getattr(args, "inputs", ())),
        )
        return {"build": cmd_build, "verify": cmd_verify, "report": cmd_report}[args.command](cfg)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceGuardError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
