"""Command-line front end.

Exit codes: 0 all checks pass, 1 a verification failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import multivariate as mv
from . import suites
from ._common import DomainError, SingularityError
from .algebra import CONTIGUOUS, L, RepHandle
from .racah import RacahParams, check_positivity, racah_P_table
from .representation import Quintuplet, ValidationError, basis, build_rep, validate, violations
from .symmetry import GroupElement, edges, pentagon_faces, vertex_name, vertices
from .transitions import TransitionError, intertwiner_oracle, transition

log = logging.getLogger("sracah")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


# ---- parsing helpers ------------------------------------------------------

def parse_j(text: str | None, required: bool = True) -> Quintuplet | None:
    if text is None:
        if required:
            raise InputError("--j is required")
        return None
    try:
        j = Quintuplet.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse quintuplet {text!r}: {exc}") from exc
    bad = violations(j)
    if bad:
        raise InputError("invalid quintuplet " + str(j) + ":\n  " + "\n  ".join(bad))
    return j


def parse_pair(text: str | None, what: str) -> tuple[int, int] | None:
    if text is None:
        return None
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise InputError(f"{what} must look like 'a,b', got {text!r}") from exc
    return a, b


def parse_word(text: str) -> GroupElement:
    try:
        return GroupElement.parse(text)
    except (ValueError, KeyError) as exc:
        raise InputError(f"bad group word {text!r}: {exc}") from exc


# ---- matrix I/O -----------------------------------------------------------

def matrix_json(m: np.ndarray, j: Quintuplet | None, **extra) -> dict:
    entries = [[int(r), int(c), float(m[r, c])] for r, c in zip(*np.nonzero(m))]
    d = {"dim": int(m.shape[0]), "basis": "lex(n,p)",
         "j": list(j.as_tuple()) if j is not None else None, "entries": entries}
    d.update(extra)
    return d


def matrix_from_json(d: dict) -> np.ndarray:
    m = np.zeros((d["dim"], d["dim"]))
    for r, c, v in d["entries"]:
        m[r, c] = v
    return m


def matrix_csv(m: np.ndarray) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in m:
        w.writerow([repr(float(x)) for x in row])
    return buf.getvalue()


def matrix_from_csv(text: str) -> np.ndarray:
    rows = [[float(x) for x in row] for row in csv.reader(io.StringIO(text)) if row]
    return np.array(rows)


def write_rep(rep: RepHandle, j: Quintuplet, out: Path, fmt: str) -> list[Path]:
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for lab in CONTIGUOUS:
        m = rep.mats[lab]
        if fmt == "json":
            p = out / f"{lab}.json"
            p.write_text(json.dumps(matrix_json(m, j, generator=str(lab))))
        else:
            p = out / f"{lab}.csv"
            p.write_text(matrix_csv(m))
        written.append(p)
    manifest = {"j": list(j.as_tuple()), "j_text": str(j), "big_n": validate(j), "dim": rep.dim,
                "basis": "lex(n,p)", "order": [list(x) for x in basis(validate(j))],
                "format": fmt, "generators": [str(x) for x in CONTIGUOUS],
                "mu": list(rep.mu)}
    (out / "manifest.json").write_text(json.dumps(manifest, indent=1))
    return written


def read_rep(path: Path) -> tuple[RepHandle, Quintuplet]:
    manifest = json.loads((path / "manifest.json").read_text())
    fmt = manifest["format"]
    mats = {}
    for name in manifest["generators"]:
        f = path / f"{name}.{fmt}"
        mats[L(name)] = (matrix_from_json(json.loads(f.read_text())) if fmt == "json"
                         else matrix_from_csv(f.read_text()))
    j = Quintuplet.of(manifest["j"])
    return RepHandle(mats, tuple(manifest["mu"]), {"j": j}), j


def emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)


# ---- commands -------------------------------------------------------------

def cmd_rep_build(args) -> int:
    j = parse_j(args.j)
    rep = build_rep(j)
    out = Path(args.out or f"rep_{str(j).strip('()').replace(',', '_').replace('/', 'o')}")
    files = write_rep(rep, j, out, args.format)
    log.info("wrote %d generator files and manifest to %s", len(files), out)
    print(json.dumps({"out": str(out), "dim": rep.dim, "big_n": validate(j), "files": len(files)}))
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(suites.SUITES) if args.suite == "all" else [args.suite]
    if args.suite != "all" and args.suite not in suites.SUITES:
        raise InputError(f"unknown suite {args.suite!r}; choose from {', '.join(suites.SUITES)} or all")
    rep = None
    j = None
    if args.matrices:
        rep, j = read_rep(Path(args.matrices))
        if args.j:
            j = parse_j(args.j)
    else:
        j = parse_j(args.j, required=any(n in suites.NEEDS_J for n in names))
    if args.perturb is not None:
        if j is None and rep is None:
            raise InputError("--perturb needs --j or --matrices")
        rep = rep or build_rep(j)
        label, i, k = _perturb_site(args.perturb_at)
        try:
            rep = suites.perturb_rep(rep, args.perturb, label, i, k)
        except (IndexError, ValueError) as exc:
            raise InputError(str(exc)) from exc
    checks = []
    for name in names:
        if name in ("algebra", "casimir"):
            checks += suites.run(name, j, args.tol, rep=rep)
        else:
            checks += suites.run(name, j, args.tol)
    ok = all(c.passed for c in checks)
    report = {"suite": args.suite, "j": None if j is None else str(j),
              "perturb": args.perturb, "pass": ok, "checks": [c.as_dict() for c in checks]}
    emit(json.dumps(report, indent=1, default=float), args.out)
    for c in checks:
        if not c.passed:
            log.warning("FAIL %s/%s residual=%s tol=%g", c.suite, c.residual.name, c.residual.value, c.tol)
    return EXIT_OK if ok else EXIT_FAIL


def _perturb_site(text: str) -> tuple[str, int, int]:
    try:
        lab, i, k = text.split(",")
        L(lab)
        return lab, int(i), int(k)
    except ValueError as exc:
        raise InputError(f"--perturb-at must look like C23,0,1, got {text!r}") from exc


def cmd_transition(args) -> int:
    j = parse_j(args.j)
    h, g = parse_word(args.from_word), parse_word(args.to_word)
    if args.method == "oracle":
        tm = intertwiner_oracle(g, h, j)
    else:
        tm = transition(h, g, j)
    if args.format == "json":
        text = json.dumps(matrix_json(tm.matrix, j, kind="transition",
                                      **{"from": h.word or "e", "to": g.word or "e"},
                                      notes=tm.notes))
    else:
        text = matrix_csv(tm.matrix)
    emit(text, args.out)
    return EXIT_OK


def _rows_json(rows, keys) -> list[dict]:
    return [dict(zip(keys, r)) for r in rows]


def cmd_poly(args) -> int:
    fam = args.family
    if fam == "racah":
        if None in (args.alpha, args.beta, args.big_n, args.delta):
            raise InputError("poly racah needs --alpha --beta --big-n --delta")
        params = RacahParams(args.alpha, args.beta, args.big_n, args.delta)
        check_positivity(params)
        table = racah_P_table(params)
        n = args.n
        rows = []
        for a in range(params.big_n + 1):
            for b in range(params.big_n + 1):
                rows.append((a, b, float(table[a, b])))
        if n is not None:
            sel = [int(x) for x in n.split(",")]
            if len(sel) != 1 or not 0 <= sel[0] <= params.big_n:
                raise InputError(f"--n {n!r} outside 0..{params.big_n}")
            rows = [r for r in rows if r[0] == sel[0]]
        keys = ("n", "m", "value")
        meta = {"family": "racah", "params": asdict(params)}
    else:
        j = parse_j(args.j)
        big_n = validate(j)
        nsel, msel = parse_pair(args.n, "--n"), parse_pair(args.m, "--m")
        for sel, what in ((nsel, "--n"), (msel, "--m")):
            if sel is not None and (min(sel) < 0 or sum(sel) > big_n):
                raise InputError(f"{what} {sel} outside the triangle a+b <= {big_n}")
        f = mv.tratnik if fam == "tratnik" else mv.griffiths
        rows = []
        for n1, n2 in basis(big_n):
            if nsel is not None and (n1, n2) != nsel:
                continue
            for m1, m2 in basis(big_n):
                if msel is not None and (m1, m2) != msel:
                    continue
                rows.append((n1, n2, m1, m2, f(n1, n2, m1, m2, j)))
        keys = ("n1", "n2", "m1", "m2", "value")
        meta = {"family": fam, "j": str(j), "big_n": big_n}
    if args.format == "json":
        meta["entries"] = _rows_json(rows, keys)
        text = json.dumps(meta, indent=1)
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(keys)
        for r in rows:
            w.writerow([repr(x) if isinstance(x, float) else x for x in r])
        text = buf.getvalue()
    emit(text, args.out)
    return EXIT_OK


def cmd_graph_export(args) -> int:
    vs = vertices()
    names = {v: vertex_name(v) for v in vs}
    es = [(names[u], names[v]) for u, v in edges()]
    faces = [sorted(names[v] for v in f) for f in pentagon_faces()]
    if args.format == "json":
        text = json.dumps({"vertices": sorted(names.values()), "edges": es, "pentagons": faces}, indent=1)
    else:
        text = "u,v\n" + "".join(f"{a},{b}\n" for a, b in es)
    emit(text, args.out)
    return EXIT_OK


# ---- argument parser -------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sracah", description="special Racah algebra representations and transition matrices")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, j=True):
        if j:
            sp.add_argument("--j", help="quintuplet j1,j2,j3,j4,j0 (rationals such as 3/2 allowed)")
        sp.add_argument("--tol", type=float, default=None)
        sp.add_argument("--out", default=None)
        sp.add_argument("--format", choices=("json", "csv"), default="json")

    rep = sub.add_parser("rep", help="representation matrices")
    rep_sub = rep.add_subparsers(dest="action", required=True)
    b = rep_sub.add_parser("build")
    common(b)
    b.set_defaults(func=cmd_rep_build)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", help="algebra, casimir, group, transitions, cycles, racah, tratnik, griffiths or all")
    common(v)
    v.add_argument("--perturb", type=float, default=None, help="add this to one generator entry first")
    v.add_argument("--perturb-at", default="C23,0,1", help="generator,row,col of the perturbed entry")
    v.add_argument("--matrices", default=None, help="directory written by 'rep build' to verify instead")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("transition", help="transition matrix T_{from,to}(J)")
    common(t)
    t.add_argument("--from", dest="from_word", default="e")
    t.add_argument("--to", dest="to_word", required=True)
    t.add_argument("--method", choices=("closed", "oracle"), default="closed")
    t.set_defaults(func=cmd_transition)

    po = sub.add_parser("poly", help="tabulate Racah, Tratnik or Griffiths values")
    po.add_argument("family", choices=("racah", "tratnik", "griffiths"))
    common(po)
    po.add_argument("--alpha", type=float)
    po.add_argument("--beta", type=float)
    po.add_argument("--big-n", type=int)
    po.add_argument("--delta", type=float)
    po.add_argument("--n", default=None, help="row selector: n for racah, n1,n2 otherwise")
    po.add_argument("--m", default=None, help="column selector m1,m2")
    po.set_defaults(func=cmd_poly)

    g = sub.add_parser("graph", help="connection graph")
    g_sub = g.add_subparsers(dest="action", required=True)
    ge = g_sub.add_parser("export")
    common(ge, j=False)
    ge.set_defaults(func=cmd_graph_export)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on bad usage, 0 on --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    if getattr(args, "tol", None) is not None and not args.tol > 0:
        print("error: --tol must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, ValidationError, DomainError, SingularityError, TransitionError,
            IndexError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
