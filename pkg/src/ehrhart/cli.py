"""Command-line front end.

    ehrhart ehrhart --zoo cube:3
    ehrhart audit --file polygon.json --format json
    ehrhart roots --zoo cross:3
    ehrhart scatter --d 3 --samples 1000 --seed 7 --out roots.csv --figure roots.svg
    ehrhart conjecture --cyclic 5..8 x 2..4
    ehrhart bounds --d 2..9
    ehrhart machinery --d 1..12

Exit codes: 0 success, 1 I/O or parse error, 2 degenerate geometry,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .algebra import as_fraction, format_fraction
from .audit import audit
from .engine import EhrhartProfile, ehrhart_polynomial
from .geometry import DegeneratePolytope, LatticePolytope, build_polytope
from .roots import (
    REFERENCE_BOUNDS,
    NonConvergence,
    check_root_bounds,
    dimension_bound_table,
    find_roots,
    verify_proof_machinery,
)
from .zoo import FAMILIES, ZooSpec, check_cyclic_conjecture, check_fiber_lemma, generate, parse_zoo_spec, random_batch

log = logging.getLogger("ehrhart")

EXIT_OK, EXIT_IO, EXIT_DEGENERATE, EXIT_INVARIANT = 0, 1, 2, 3
DEFAULT_SEED = 20240601
DEFAULT_EPS = Fraction(1, 10**12)
DEFAULT_TOL = 1e-12


class InvariantViolation(RuntimeError):
    pass


@dataclass
class RunConfig:
    command: str
    input_path: Path | None = None
    zoo_spec: ZooSpec | None = None
    coeffs: list[Fraction] | None = None
    seed: int = DEFAULT_SEED
    sample_count: int = 100
    output_format: str = "text"
    out: Path | None = None
    figure: Path | None = None
    dims: list[int] = field(default_factory=list)
    cyclic: list[tuple[int, int]] = field(default_factory=list)
    fiber: list[int] = field(default_factory=list)
    eps: Fraction = DEFAULT_EPS
    tol: float = DEFAULT_TOL
    jobs: int = 1


def parse_range(text: str) -> list[int]:
    """``"2..9"`` -> [2, ..., 9]; ``"3"`` -> [3]; ``"2,4,6"`` -> [2, 4, 6]."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            a, b = part.split("..")
            out.extend(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    return out


def parse_cyclic(text: str) -> list[tuple[int, int]]:
    """``"5..8 x 2..4"`` -> all (n, d) with n > d."""
    ns, _, ds = text.lower().partition("x")
    if not ds:
        raise ValueError(f"expected 'N-RANGE x D-RANGE', got {text!r}")
    return [(n, d) for n in parse_range(ns) for d in parse_range(ds) if n > d >= 2]


# ---------------------------------------------------------------- input


def _read_json(path: Path):
    try:
        return json.loads(path.read_text())
    except FileNotFoundError:
        raise
    except json.JSONDecodeError as e:
        raise ValueError(f"{path}: invalid JSON ({e})") from e


def load_input(cfg: RunConfig) -> LatticePolytope | EhrhartProfile:
    """The single input source: a polytope, or a profile for audit/roots."""
    sources = [x is not None for x in (cfg.input_path, cfg.zoo_spec, cfg.coeffs)]
    if sum(sources) != 1:
        raise ValueError("give exactly one of --file, --zoo, --coeffs")
    if cfg.zoo_spec is not None:
        return generate(cfg.zoo_spec)
    if cfg.coeffs is not None:
        return EhrhartProfile.from_coefficients(cfg.coeffs, name="coefficients")
    doc = _read_json(cfg.input_path)
    if isinstance(doc, dict) and "c" in doc:
        return EhrhartProfile.from_json(doc)
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise ValueError(f"{cfg.input_path}: expected an object with 'vertices' or 'c'")
    return build_polytope(doc["vertices"], name=doc.get("name", cfg.input_path.stem))


def load_profile(cfg: RunConfig) -> tuple[EhrhartProfile, bool]:
    """Profile plus whether it comes from an actual lattice polytope."""
    src = load_input(cfg)
    if isinstance(src, LatticePolytope):
        return ehrhart_polynomial(src), True
    return src, False


# ---------------------------------------------------------------- output


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        cfg.out.write_text(text)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _num(x: float) -> str:
    s = f"{x:.12g}"
    return "0" if s == "-0" else s


def _fmt_vec(v) -> str:
    return "(" + ", ".join(format_fraction(x) for x in v) + ")"


def _table(header, rows) -> str:
    rows = [[str(c) for c in r] for r in rows]
    widths = [max(len(str(h)), *(len(r[i]) for r in rows)) if rows else len(str(h)) for i, h in enumerate(header)]
    lines = ["  ".join(str(h).ljust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- commands


def cmd_ehrhart(cfg: RunConfig) -> int:
    prof, _ = load_profile(cfg)
    name = prof.name
    if cfg.output_format == "json":
        _emit(cfg, json.dumps({"name": name, **prof.to_json()}, indent=2) + "\n")
    elif cfg.output_format == "csv":
        rows = [(k, format_fraction(prof.c[k]), format_fraction(prof.a[k]), format_fraction(prof.delta[k]))
                for k in range(prof.d + 1)]
        _emit(cfg, _csv(["k", "c", "a", "delta"], rows))
    else:
        _emit(cfg, (
            f"{name}  (d = {prof.d})\n"
            f"i(n)  = {prof.polynomial.format('n')}\n"
            f"h*    = {_fmt_vec(prof.a)}\n"
            f"delta = {_fmt_vec(prof.delta)}\n"
            f"volume = {format_fraction(prof.volume)}\n"
        ))
    return EXIT_OK


def cmd_audit(cfg: RunConfig) -> int:
    prof, geometric = load_profile(cfg)
    rep = audit(prof)
    if cfg.output_format == "json":
        _emit(cfg, json.dumps({"name": prof.name, "d": prof.d, "passed": rep.passed,
                               "entries": rep.to_json()}, indent=2) + "\n")
    elif cfg.output_format == "csv":
        _emit(cfg, _csv(["id", "holds", "slack", "note"],
                        [(e.id, int(e.holds), format_fraction(e.slack), e.note) for e in rep.entries]))
    else:
        rows = [(e.id, "ok" if e.holds else "FAIL", format_fraction(e.slack), e.note) for e in rep.entries]
        _emit(cfg, f"{prof.name}: {prof.polynomial.format('n')}\n" + _table(["check", "verdict", "slack", "note"], rows)
              + f"{len(rep.failures())} failure(s)\n")
    if geometric and not rep.passed:
        # a lattice polytope cannot violate these; treat as a bug
        raise InvariantViolation(", ".join(e.id for e in rep.failures()))
    return EXIT_OK


def cmd_roots(cfg: RunConfig) -> int:
    prof, geometric = load_profile(cfg)
    p = prof.polynomial
    if p.degree < 1:
        raise ValueError("constant polynomial has no roots")
    rep = find_roots(p, cfg.eps, cfg.tol)
    norm_ok, real_ok = check_root_bounds(rep, prof.d)
    if cfg.output_format == "json":
        _emit(cfg, json.dumps({"name": prof.name, **rep.to_json(), "norm_bound_ok": norm_ok,
                               "real_bound_ok": real_ok}, indent=2) + "\n")
    elif cfg.output_format == "csv":
        _emit(cfg, _csv(["id", "re", "im", "certified_real"],
                        [(prof.name, _num(re), _num(im), int(c)) for re, im, c in rep.rows()]))
    else:
        lines = [f"{prof.name}: {p.format('n')}"]
        for r in rep.real_roots:
            tag = "exact" if r.exact else f"in ({format_fraction(r.lo)}, {format_fraction(r.hi)}]"
            lines.append(f"  real  {r.approx:+.12f}  mult {r.multiplicity}  {tag}")
        for re, im, res in rep.complex_roots:
            if abs(im) > 1e-12:
                lines.append(f"  cplx  {re:+.12f} {im:+.12f}i  residual {res:.1e}")
        lines.append(f"  |z| < 1+(d+1)! : {'yes' if norm_ok else 'NO'}")
        lines.append(f"  real roots in [-d, floor(d/2)) : {'yes' if real_ok else 'NO'}")
        lines.append(f"  -d <= Re <= d-1 : {'yes' if rep.re_conjecture_ok else 'no'}")
        _emit(cfg, "\n".join(lines) + "\n")
    if geometric and not (norm_ok and real_ok):
        raise InvariantViolation("root bounds violated by a lattice polytope")
    return EXIT_OK


def cmd_zoo(cfg: RunConfig) -> int:
    if cfg.zoo_spec is None:
        rows = [(name, arity) for name, (_, arity) in sorted(FAMILIES.items())]
        _emit(cfg, _table(["family", "parameters"], rows))
        return EXIT_OK
    P = generate(cfg.zoo_spec)
    if cfg.output_format == "json":
        _emit(cfg, json.dumps(P.to_json(), indent=2) + "\n")
    else:
        lines = [f"{P.name}: d = {P.dimension}, {len(P.vertices)} vertices, {len(P.facets)} facets"]
        lines += ["  " + " ".join(map(str, v)) for v in P.vertices]
        _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK


def _scatter_one(args) -> list[tuple[str, float, float, bool]]:
    P, eps, tol = args
    prof = ehrhart_polynomial(P)
    rep = find_roots(prof.polynomial, eps, tol)
    norm_ok, real_ok = check_root_bounds(rep, prof.d)
    if not (norm_ok and real_ok):
        raise InvariantViolation(f"{P.name}: root bounds violated")
    return [(P.name, re, im, c) for re, im, c in rep.rows()]


def scatter_rows(d: int, samples: int, seed: int, eps=DEFAULT_EPS, tol=DEFAULT_TOL, jobs: int = 1):
    """Root rows ``(id, re, im, certified_real)`` for ``samples`` seeded random ``d``-polytopes."""
    work = [(P, eps, tol) for P in random_batch(d, samples, seed)]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(jobs) as ex:
            chunks = list(ex.map(_scatter_one, work, chunksize=16))
    else:
        chunks = [_scatter_one(w) for w in work]
    return [row for chunk in chunks for row in chunk]


def cmd_scatter(cfg: RunConfig) -> int:
    if cfg.sample_count < 0:
        raise ValueError("--samples must be >= 0")
    d = cfg.dims[0] if cfg.dims else 3
    rows = scatter_rows(d, cfg.sample_count, cfg.seed, cfg.eps, cfg.tol, cfg.jobs)
    if cfg.output_format == "svg":
        if cfg.out is None:
            raise ValueError("--format svg needs --out PATH")
        from .plotting import root_scatter
        root_scatter(rows, d, cfg.out)
    elif cfg.output_format == "json":
        _emit(cfg, json.dumps([{"id": i, "re": re, "im": im, "certified_real": c} for i, re, im, c in rows]) + "\n")
    else:
        _emit(cfg, _csv(["polytope_id", "re", "im", "certified_real"],
                        [(i, _num(re), _num(im), int(c)) for i, re, im, c in rows]))
    if cfg.figure is not None:
        from .plotting import root_scatter
        root_scatter(rows, d, cfg.figure)
    return EXIT_OK


def cmd_conjecture(cfg: RunConfig) -> int:
    pairs = cfg.cyclic or [(n, d) for n in range(5, 9) for d in range(2, 5) if n > d]
    rows, confirmed = [], False
    for n, d in pairs:
        chk = check_cyclic_conjecture(n, d)
        if chk.holds:
            verdict = "pass"
        elif chk.confirmed_by_oracle:
            verdict, confirmed = "VIOLATED", True
        else:
            verdict = "unconfirmed mismatch"
        rows.append(("conjecture", n, d, "", verdict))
    for n, d in pairs:
        for m in cfg.fiber:
            fc = check_fiber_lemma(n, d, m)
            rows.append(("fiber", n, d, m, f"{'pass' if fc.holds else 'FAIL'} ({fc.fibers} fibers)"))
            confirmed |= not fc.holds
    if cfg.output_format == "json":
        _emit(cfg, json.dumps([dict(zip(["check", "n", "d", "m", "verdict"], r)) for r in rows], indent=2) + "\n")
    elif cfg.output_format == "csv":
        _emit(cfg, _csv(["check", "n", "d", "m", "verdict"], rows))
    else:
        _emit(cfg, _table(["check", "n", "d", "m", "verdict"], rows))
    return EXIT_INVARIANT if confirmed else EXIT_OK


def cmd_bounds(cfg: RunConfig) -> int:
    dims = cfg.dims or list(range(2, 10))
    rows = []
    for d in dims:
        val = dimension_bound_table(d)
        ref = REFERENCE_BOUNDS.get(d)
        dev = (val - ref) / ref if ref else None
        rows.append((d, f"{val:.4f}", "" if ref is None else ref, "" if dev is None else f"{dev:+.3f}"))
    header = ["d", "bound", "reference", "rel_deviation"]
    if cfg.output_format == "json":
        _emit(cfg, json.dumps([dict(zip(header, r)) for r in rows], indent=2) + "\n")
    elif cfg.output_format == "csv":
        _emit(cfg, _csv(header, rows))
    else:
        _emit(cfg, _table(header, rows))
    return EXIT_OK


def cmd_machinery(cfg: RunConfig) -> int:
    dims = cfg.dims or list(range(1, 13))
    results = [verify_proof_machinery(d) for d in dims]
    rows = [(r.d, "pass" if r.ok else "FAIL", len(r.strict_exceptions), "; ".join(r.counterexamples[:3]))
            for r in results]
    header = ["d", "verdict", "equality_cases", "counterexamples"]
    if cfg.output_format == "json":
        _emit(cfg, json.dumps([dict(zip(header, r)) for r in rows], indent=2) + "\n")
    elif cfg.output_format == "csv":
        _emit(cfg, _csv(header, rows))
    else:
        _emit(cfg, _table(header, rows))
    return EXIT_OK if all(results) else EXIT_INVARIANT


COMMANDS = {
    "ehrhart": cmd_ehrhart,
    "audit": cmd_audit,
    "roots": cmd_roots,
    "zoo": cmd_zoo,
    "scatter": cmd_scatter,
    "conjecture": cmd_conjecture,
    "bounds": cmd_bounds,
    "machinery": cmd_machinery,
}

HELP = {
    "ehrhart": "Ehrhart polynomial, h*-vector and forward differences",
    "audit": "check the coefficient inequalities exactly",
    "roots": "certified real roots and numerical complex roots",
    "zoo": "list families or print a named polytope",
    "scatter": "root locations of seeded random polytopes (CSV/JSON/SVG)",
    "conjecture": "cyclic polytope coefficient comparison and fiber check",
    "bounds": "root norm bounds per dimension",
    "machinery": "exhaustive check of the g_i / lambda inequalities",
}


# ---------------------------------------------------------------- argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--zoo", metavar="FAMILY:PARAMS", help="named polytope, e.g. cube:3 or cyclic:7,3")
    common.add_argument("--file", metavar="PATH", help='JSON with {"vertices": [...]} or a profile {"d", "c"}')
    common.add_argument("--coeffs", metavar="C0,C1,...", help="hand-entered coefficients c_0..c_d")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--samples", type=int, default=100)
    common.add_argument("--format", choices=["text", "json", "csv", "svg"], default=None)
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--figure", metavar="PATH", help="also render a scatter figure (.svg/.png/.pdf)")
    common.add_argument("--d", metavar="RANGE", help="dimension or range, e.g. 3 or 2..9")
    common.add_argument("--dmax", type=int, help="upper end of the default dimension range")
    common.add_argument("--cyclic", metavar="N x D", help="cyclic pairs, e.g. '5..8 x 2..4'")
    common.add_argument("--fiber", metavar="M", help="also check the fiber property at these dilations")
    common.add_argument("--eps", default=None, metavar="RATIONAL", help="real-root isolation width (1/10^12)")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="Aberth step tolerance")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for scatter")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="ehrhart", description="Ehrhart polynomials, inequalities and roots.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=HELP[name])
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(ns.command)
    cfg.input_path = Path(ns.file) if ns.file else None
    cfg.zoo_spec = parse_zoo_spec(ns.zoo) if ns.zoo else None
    cfg.coeffs = [as_fraction(x) for x in ns.coeffs.split(",")] if ns.coeffs else None
    cfg.seed = ns.seed
    cfg.sample_count = ns.samples
    default_fmt = "csv" if ns.command == "scatter" else "text"
    cfg.output_format = ns.format or default_fmt
    cfg.out = Path(ns.out) if ns.out else None
    cfg.figure = Path(ns.figure) if ns.figure else None
    if ns.d:
        cfg.dims = parse_range(ns.d)
    elif ns.dmax is not None:
        lo = 1 if ns.command == "machinery" else 2
        cfg.dims = list(range(lo, ns.dmax + 1))
    cfg.cyclic = parse_cyclic(ns.cyclic) if ns.cyclic else []
    cfg.fiber = parse_range(ns.fiber) if ns.fiber else []
    cfg.eps = as_fraction(ns.eps) if ns.eps else DEFAULT_EPS
    if cfg.eps <= 0:
        raise ValueError("--eps must be positive")
    cfg.tol = ns.tol
    cfg.jobs = ns.jobs
    if cfg.output_format == "svg" and ns.command != "scatter":
        raise ValueError("--format svg is only available for scatter")
    return cfg


def run(cfg: RunConfig) -> int:
    return COMMANDS[cfg.command](cfg)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return run(config_from_args(ns))
    except DegeneratePolytope as e:
        print(f"DegeneratePolytope: {e}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (InvariantViolation, NonConvergence) as e:
        print(f"invariant violation: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except (OSError, ValueError, KeyError, TypeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
