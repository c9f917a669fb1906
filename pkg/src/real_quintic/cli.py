"""Command-line front end: ``real-quintic periods|graphs|solve|bps|verify``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import flint

from . import geometry as geo
from . import reference_data
from .cache import AmplitudeCache, CacheError, default_root
from .exact_series import SeriesError
from .feynman import BASE_SET, GraphError, count_graphs, enumerate_graphs
from .field import FieldElement
from .solver import (
    BASE_ORDER,
    FLAGGED,
    IN_SCOPE,
    Solver,
    SolverConfig,
    SolverError,
    ambiguity_basis,
    verify_appendix_b,
)

log = logging.getLogger("real_quintic")

GRAPH_COUNTS = {(0, 3): 4, (1, 1): 4, (0, 4): 19, (0, 5): 83, (1, 2): 29, (2, 1): 97}
SUITES = ("graphs", "periods", "pde", "published-04", "tables", "integrality", "cache")


# -- configuration ------------------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    order: Fraction
    d_max: int = 20
    g_max: int = 0
    h: int = 0
    cache_dir: Path | None = None
    output: str = "text"
    allow_flagged: bool = False

    def __post_init__(self):
        if self.order <= Fraction(self.d_max, 2):
            raise SystemExit(
                f"error: --order {self.order} must exceed dmax/2 = {Fraction(self.d_max, 2)} "
                "(q-expansions up to q^(dmax/2) are needed)"
            )

    def solver_config(self) -> SolverConfig:
        return SolverConfig(order=self.order, d_max=self.d_max, allow_flagged=self.allow_flagged)

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        d_max = getattr(args, "dmax", None)
        d_max = 20 if d_max is None else d_max
        order = getattr(args, "order", None)
        order = Fraction(d_max + 1, 2) if order is None else Fraction(order)
        return cls(
            order=order,
            d_max=d_max,
            g_max=getattr(args, "gmax", 0) or 0,
            h=getattr(args, "h", 0) or 0,
            cache_dir=default_root(getattr(args, "cache", None)),
            output=getattr(args, "out", "text"),
            allow_flagged=getattr(args, "allow_flagged", False),
        )


# -- formatting helpers ------------------------------------------------------------


def fmt_q(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _poly_text(coeffs) -> str:
    parts = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return head + "".join(f" {s} {b}" for s, b in parts[1:])


def _den_text(coeffs) -> str:
    """Factor ``v z^c (1 - 3125 z)^k`` out of a denominator when possible."""
    c = 0
    while c < len(coeffs) - 1 and coeffs[c] == 0:
        c += 1
    p = flint.fmpq_poly(coeffs[c:])
    disc = flint.fmpq_poly([1, -3125])
    k = 0
    while p.degree() > 0:
        quo, rem = divmod(p, disc)
        if rem != 0:
            break
        p, k = quo, k + 1
    factors = []
    if p.degree() > 0:
        factors.append(f"({_poly_text([int(x) for x in p.coeffs()])})")
    elif p[0] != 1:
        factors.append(str(p[0]))
    if c:
        factors.append("z" if c == 1 else f"z^{c}")
    if k:
        factors.append("(1 - 3125*z)" + ("" if k == 1 else f"^{k}"))
    return "*".join(factors) or "1"


def format_field(fe: FieldElement) -> str:
    (pe, qe), (po, qo) = fe.rational_parts()
    out = []
    if any(pe):
        out.append(f"({_poly_text(pe)})/({_den_text(qe)})")
    if any(po):
        out.append(f"sqrt(z)*({_poly_text(po)})/({_den_text(qo)})")
    return " + ".join(out) or "0"


def emit_rows(rows, header, fmt: str, title: str = "") -> str:
    """Render ``rows`` (lists of strings) as csv or text."""
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    width = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    lines = [title] if title else []
    lines.append("  ".join(h.rjust(n) for h, n in zip(header, width)))
    lines += ["  ".join(str(x).rjust(n) for x, n in zip(r, width)) for r in rows]
    return "\n".join(lines) + "\n"


# -- cached solving ------------------------------------------------------------------


def _key_order(gh):
    return BASE_ORDER.get(gh, 0)


def solve_with_cache(solver: Solver, g: int, h: int, cache: AmplitudeCache | None) -> list:
    """Solve ``(g,h)`` reusing/extending ``cache``; returns the closure written."""
    solver.check_allowed(g, h)
    targets = solver.closure(g, h) + [(g, h)]
    store = solver.store
    if cache is not None:
        for gh in targets:
            if gh in BASE_SET or store.resolved(*gh):
                continue
            n = _key_order(gh)
            if cache.has_amplitude(*gh, n) and cache.has_ambiguity(*gh):
                e = cache.load_amplitude(*gh, n)
                coeffs = cache.load_ambiguity(*gh)
                try:
                    store.put(*gh, n, e)
                except SolverError as exc:
                    raise CacheError(cache.amplitude_path(*gh, n).name, str(exc)) from exc
                store.ambiguity[gh] = coeffs
                log.info("loaded (%d,%d) from cache", *gh)
    solver.solve(g, h)
    if cache is not None:
        for gh in targets:
            n = _key_order(gh)
            cache.store_amplitude(*gh, n, store.amplitude(*gh, n))
            if gh in store.ambiguity:
                cache.store_ambiguity(*gh, store.ambiguity[gh])
    return targets


def make_solver(cfg: RunConfig) -> tuple:
    cache = AmplitudeCache(cfg.cache_dir) if cfg.cache_dir else None
    return Solver(cfg.solver_config()), cache


# -- subcommands ---------------------------------------------------------------------


def cmd_periods(args) -> int:
    n = 4 if args.order is None else int(args.order)
    if n < 0:
        raise SystemExit("error: --order must be non-negative")
    ps = geo.compute_periods(max(n + 2, 4))
    rows = {}
    for i in range(4):
        rows[f"omega{i}"] = [ps.omega[i].coeff(k) for k in range(n + 1)]
    rows["t-log(z)"] = [ps.mirror_t.coeff(k) for k in range(n + 1)]
    rows["z(q)"] = [ps.z_of_q.coeff(k) for k in range(1, n + 2)]
    labels = {name: ("q^1.." if name == "z(q)" else "z^0..") for name in rows}
    if args.out == "json":
        print(json.dumps({"order": n, "rows": {k: [fmt_q(c) for c in v] for k, v in rows.items()}}, indent=1))
    elif args.out == "csv":
        out = [[k, str(e + (1 if k == "z(q)" else 0)), fmt_q(c)] for k, v in rows.items() for e, c in enumerate(v)]
        sys.stdout.write(emit_rows(out, ["series", "exponent", "coefficient"], "csv"))
    else:
        print("log-free parts (omega_i = sum_k omega_i[k] z^k + log terms)")
        for k, v in rows.items():
            print(f"{k:9s} [{labels[k]}]: " + ", ".join(fmt_q(c) for c in v))
    return 0


def cmd_graphs(args) -> int:
    g, h = args.g, args.h
    if (g, h) in BASE_SET:
        print(
            f"error: (g,h)=({g},{h}) is in the excluded base set {sorted(BASE_SET)}; "
            "these amplitudes are given in closed form and have no diagram expansion",
            file=sys.stderr,
        )
        return 2
    try:
        t0 = time.perf_counter()
        graphs = enumerate_graphs(g, h)
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.list:
        for G in graphs:
            print(G.dump())
    else:
        print(len(graphs))
    log.info("enumerated %d graphs in %.3fs", len(graphs), time.perf_counter() - t0)
    return 0


def cmd_solve(args) -> int:
    cfg = RunConfig.from_args(args)
    solver, cache = make_solver(cfg)
    g, h = args.g, args.h
    solve_with_cache(solver, g, h, cache)
    st = solver.store
    if (g, h) in BASE_SET:
        f_text, coeffs, info = "closed form (no ambiguity)", [], {}
    else:
        coeffs = st.ambiguity[(g, h)]
        f = FieldElement()
        for a, fi in zip(coeffs, ambiguity_basis(g, h)):
            f = f + fi * a
        f_text = format_field(f)
        info = st.provenance.get((g, h), {"conditions": "loaded from cache"})
    F = st.amplitude(g, h, _key_order((g, h)))
    report = {
        "g": g,
        "h": h,
        "f": f_text,
        "coefficients": [fmt_q(c) for c in coeffs],
        "conditions": info.get("conditions"),
        "terms": F.nterms,
    }
    if args.out == "json":
        print(json.dumps(report, indent=1))
    elif args.out == "csv":
        sys.stdout.write(emit_rows([[str(i), fmt_q(c)] for i, c in enumerate(coeffs)], ["i", "a_i"], "csv"))
    else:
        print(f"f^({g},{h}) = {f_text}")
        for i, c in enumerate(coeffs):
            print(f"  a_{i} = {fmt_q(c)}")
        if report["conditions"]:
            print(f"  conditions: {report['conditions']}")
        print(f"  F^({g},{h}) has {report['terms']} terms in the J generators")
    return 0


def bps_json(g, h, table) -> dict:
    return {"g": g, "h": h, "entries": [{"d": d, "n": fmt_q(n)} for d, n in sorted(table.items())]}


def cmd_bps(args) -> int:
    cfg = RunConfig.from_args(args)
    solver, cache = make_solver(cfg)
    h, g = cfg.h, cfg.g_max
    solve_with_cache(solver, g, h, cache) if (g, h) not in BASE_SET else None
    table = solver.bps_table(g, h)
    non_int = [d for d, n in table.items() if Fraction(n).denominator != 1]
    if non_int:
        print(f"warning: non-integral n_d^({g},{h}) for d in {sorted(non_int)}", file=sys.stderr)
    if args.out == "json":
        print(json.dumps(bps_json(g, h, table)))
    else:
        rows = [[str(d), fmt_q(n)] for d, n in sorted(table.items())]
        sys.stdout.write(emit_rows(rows, ["d", "n"], args.out, f"n_d^({g},{h})"))
    return 0


# -- verification ----------------------------------------------------------------------


class Checks:
    def __init__(self):
        self.results = []

    def run(self, name, fn):
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except CacheError as exc:
            ok, detail = False, str(exc)
        except (SolverError, SeriesError, GraphError, ValueError, ArithmeticError) as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        dt = time.perf_counter() - t0
        self.results.append((name, ok, detail, dt))
        print(f"{'PASS' if ok else 'FAIL'}  {name}  ({dt:.2f}s)  {detail}", flush=True)
        return ok


def _check_graphs():
    bad = {gh: count_graphs(*gh) for gh in GRAPH_COUNTS if count_graphs(*gh) != GRAPH_COUNTS[gh]}
    return not bad, f"mismatches {bad}" if bad else "4, 4, 19, 83, 29, 97"


def _check_periods():
    ps = geo.compute_periods(16)
    got = (
        [ps.omega[0].coeff(k) for k in range(3)],
        [ps.omega[1].coeff(k) for k in (1, 2)],
        ps.mirror_t.coeff(3),
        [ps.z_of_q.coeff(k) for k in (1, 2, 3)],
    )
    want = ([1, 120, 113400], [770, 810225], Fraction(3225308000, 3), [1, -770, 171525])
    return got == want, "heads of omega0, omega1, t, z(q)"


def cmd_verify(args) -> int:
    cfg = RunConfig.from_args(args)
    suites = SUITES if args.suite == "all" else (args.suite,)
    solver, cache = make_solver(cfg)
    checks = Checks()

    def solved(g, h):
        solve_with_cache(solver, g, h, cache)

    if "cache" in suites and cache is not None:
        for name, err in cache.audit():
            checks.run(f"cache {name}", lambda err=err: (err is None, err or "checksum ok"))
    if "graphs" in suites:
        checks.run("graph counts", _check_graphs)
    if "periods" in suites:
        checks.run("period and mirror-map heads", _check_periods)
    if "pde" in suites:
        for gh in IN_SCOPE:

            def pde(gh=gh):
                solved(*gh)
                res = solver.pde_residual(*gh)
                nz = [i for i, r in enumerate(res) if not r.is_zero()]
                return not nz, "six residuals vanish" if not nz else f"nonzero residuals {nz}"

            checks.run(f"anomaly residuals {gh}", pde)
    if "published-04" in suites:

        def published_04():
            solved(0, 4)
            rep = verify_appendix_b(solver.store)
            bad = [k for k, _, _ in rep["mismatches"]]
            return rep["ok"], (
                f"{rep['monomials'] - len(bad)}/{rep['monomials']} monomials agree; "
                f"ambiguity f matches: {rep['ambiguity_ok']}" + (f"; differing exponent vectors {bad}" if bad else "")
            )

        checks.run("published (0,4) polynomial and ambiguity", published_04)
    if "tables" in suites:
        for gh, ref in reference_data.BPS_TABLES.items():

            def table(gh=gh, ref=ref):
                solved(*gh)
                got = solver.bps_table(*gh)
                bad = {d: (got.get(d), n) for d, n in ref.items() if d <= cfg.d_max and got.get(d) != n}
                return not bad, f"{sum(1 for d in ref if d <= cfg.d_max)} entries" if not bad else f"(got, want) {bad}"

            checks.run(f"BPS table {gh}", table)
    if "integrality" in suites:
        for gh in IN_SCOPE:

            def integral(gh=gh):
                solved(*gh)
                frac = {d: n for d, n in solver.bps_table(*gh).items() if Fraction(n).denominator != 1}
                return not frac, "all integral" if not frac else f"non-integral {frac}"

            checks.run(f"integrality {gh}", integral)
        if args.flagged:

            def flagged():
                fs = Solver(SolverConfig(order=cfg.order, d_max=cfg.d_max, allow_flagged=True), solver.store)
                out = []
                for gh in FLAGGED:
                    solve_with_cache(fs, *gh, cache)
                    frac = sorted(d for d, n in fs.bps_table(*gh).items() if Fraction(n).denominator != 1)
                    out.append(f"{gh}: non-integral at d={frac}")
                    if not frac:
                        return False, f"{gh} unexpectedly integral"
                return True, "; ".join(out)

            checks.run("flagged sector reports non-integrality", flagged)
    failed = [r for r in checks.results if not r[1]]
    total = sum(r[3] for r in checks.results)
    print(f"{len(checks.results) - len(failed)}/{len(checks.results)} checks passed in {total:.1f}s")
    return 0 if not failed else 1


# -- argument parsing ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="real-quintic", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, order_help):
        sp.add_argument("--order", type=Fraction, default=None, help=order_help)
        sp.add_argument("--out", choices=("json", "csv", "text"), default="text")

    def solving(sp):
        sp.add_argument("--dmax", type=int, default=None, help="largest degree d (default 20)")
        sp.add_argument("--cache", default=None, help="cache directory (default: $REAL_QUINTIC_CACHE)")
        sp.add_argument("--allow-flagged", action="store_true", help="allow (2,1) and closed g>=2")

    sp = sub.add_parser("periods", help="period, mirror-map and inverse-mirror-map coefficients")
    common(sp, "highest power of z shown (default 4)")
    sp.set_defaults(func=cmd_periods)

    sp = sub.add_parser("graphs", help="count or list the diagrams of (g,h)")
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--h", type=int, required=True)
    sp.add_argument("--list", action="store_true", help="one line per graph with its #A_G")
    sp.set_defaults(func=cmd_graphs)

    q_help = "q-expansion truncation (exclusive; default dmax/2 + 1/2)"
    sp = sub.add_parser("solve", help="compute F^(g,h) and its holomorphic ambiguity")
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--h", type=int, required=True)
    common(sp, q_help)
    solving(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("bps", help="BPS numbers n_d^(gmax,h); lower genera are solved on the way")
    sp.add_argument("--h", type=int, required=True)
    sp.add_argument("--gmax", type=int, default=0)
    common(sp, q_help)
    solving(sp)
    sp.set_defaults(func=cmd_bps)

    sp = sub.add_parser("verify", help="run the golden checks; exit 0 iff all pass")
    sp.add_argument("--suite", choices=("all",) + SUITES, default="all")
    sp.add_argument("--flagged", action="store_true", help="also run the flagged (2,1) audit")
    common(sp, q_help)
    solving(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except CacheError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (SolverError, SeriesError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
