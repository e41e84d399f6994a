"""Command-line front end: expansions, oracle sweeps and reports.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 model or internal error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import re
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .polygon import (
    Chord,
    PolygonError,
    ThetaTriangulation,
    Triangulation,
    all_theta_orbits,
    chord,
    f_d,
    orbit_text,
    parse_triangulation,
    theta_chord,
    theta_orbit,
)
from .seeds import exchange_matrix, theta_oracle, thread_count, type_a_oracle
from .snake import SnakeGraph, expansion
from .symrep import (
    cat_interpr_data,
    f_polynomial_of_rep,
    g_vector_of_rep,
    cc_map,
    quiver_from_triangulation,
    rep_from_diagonal,
    shorthand,
    symmetric_of_orbit,
    symmetric_quiver,
    theorem_rhs,
)
from .typebc import _Context, expand_type_b, expand_type_c
from .verify import SweepReport, verify_cat_interpr, verify_cc, verify_theorem

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    verb: str
    n: int | None
    mode: str
    source: str
    selector: str | None
    fmt: str
    scope: str
    threads: int


# input resolution


def read_source(src: str) -> str:
    """File contents for a path; unknown paths fall back to bundled data by basename."""
    p = Path(src)
    if p.is_file():
        return p.read_text()
    name = p.name if p.suffix else p.name + ".tri"
    res = resources.files("clusterbc") / "data" / name
    if res.is_file():
        return res.read_text()
    raise UsageError(f"no triangulation file {src!r}")


def fan_theta(n: int) -> ThetaTriangulation:
    """Diagonals (0,k) for k = 2..n+1 and their rotations."""
    T = {chord(0, k) for k in range(2, n + 2)}
    T |= {theta_chord(c, n) for c in T}
    return ThetaTriangulation.canonical(T, n)


def fan_a(n: int) -> Triangulation:
    m = n + 3
    return Triangulation(m, tuple(chord(0, k) for k in range(2, m - 1)))


def load_theta(src: str, n: int | None) -> ThetaTriangulation:
    if src == "fan":
        if n is None:
            raise UsageError("--n is required with the fan triangulation")
        return fan_theta(n)
    try:
        m, chords, d = parse_triangulation(read_source(src))
    except PolygonError as exc:
        raise UsageError(str(exc)) from exc
    if m % 2 or m < 6:
        raise UsageError(f"a theta-triangulation lives on an even polygon with at least 6 vertices, got {m}")
    k = (m - 2) // 2
    if n is not None and n != k:
        raise UsageError(f"--n {n} does not match a {m}-gon")
    try:
        if d is not None and {theta_chord(c, k) for c in chords} != set(chords):
            # a rho-invariant T' given with its diameter: undo the cut-and-flip
            chords = [f_d(d, c, k) for c in chords]
        return ThetaTriangulation.canonical(chords, k, d)
    except PolygonError as exc:
        raise UsageError(str(exc)) from exc


def load_plain(src: str, n: int | None) -> Triangulation:
    """A triangulation labeled in file order; theta files keep their canonical labels."""
    if src == "fan":
        if n is None:
            raise UsageError("--n is required with the fan triangulation")
        return fan_a(n)
    try:
        m, chords, d = parse_triangulation(read_source(src))
        if d is not None:
            return load_theta(src, n).full
        T = Triangulation(m, tuple(chords))
    except PolygonError as exc:
        raise UsageError(str(exc)) from exc
    if n is not None and n != m - 3:
        raise UsageError(f"--n {n} does not match a {m}-gon")
    return T


_PAIR = re.compile(r"^\s*[\[(]\s*(\d+)\s*,\s*(\d+)\s*[\])]\s*$")


def parse_pair(text: str) -> tuple[int, int]:
    mm = _PAIR.match(text)
    if not mm:
        raise UsageError(f"expected '[a,b]' or '(a,b)', got {text!r}")
    return int(mm.group(1)), int(mm.group(2))


def parse_orbit(text: str, n: int) -> frozenset[Chord]:
    a, b = parse_pair(text)
    N = 2 * n + 2
    if not (0 <= a < N and 0 <= b < N) or a == b:
        raise UsageError(f"{text} is not a chord of the {N}-gon")
    c = chord(a, b)
    if (c[1] - c[0]) % N in (1, N - 1):
        raise UsageError(f"{text} is a boundary side")
    return theta_orbit(c, n)


def parse_diagonal(text: str, m: int) -> Chord:
    a, b = parse_pair(text)
    if not (0 <= a < m and 0 <= b < m) or (b - a) % m in (0, 1, m - 1):
        raise UsageError(f"{text} is not a diagonal of the {m}-gon")
    return chord(a, b)


def effective_threads(flag: int | None) -> int:
    cap = thread_count() if "CLUSTERBC_THREADS" in os.environ else None
    want = flag if flag is not None else (cap or 1)
    return max(1, min(want, cap) if cap else want)


# output


def emit(payload, fmt: str, text_lines: list[str], out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        out.write("\n".join(text_lines) + "\n")


def _vec(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def _expansion_lines(label: str, E) -> list[str]:
    return [f"{label}\tF\t{E.F}", f"{label}\tg\t{_vec(E.g)}", f"{label}\tx\t{E.x}"]


# verbs


def run_expand(args) -> int:
    mode = args.type.upper()
    if mode == "A":
        T = load_plain(args.triangulation, args.n)
        gammas = ([parse_diagonal(args.orbit, T.m)] if args.orbit and not args.all
                  else [c for c in _all_chords(T.m) if c not in T])
        payload, lines = [], []
        for c in gammas:
            E = expansion(T, c)
            G = SnakeGraph(T, c) if c not in T else None
            payload.append({"diagonal": list(c), **E.to_json(),
                            "matchings": len(G.matchings) if G else 1})
            lines += _expansion_lines(_vec(c), E)
            if G is not None:
                lines.append(f"{_vec(c)}\tmatchings\t{len(G.matchings)}")
        emit({"type": "A", "triangulation": T.text(), "results": payload}, args.format, lines)
        return EXIT_OK
    if mode not in ("B", "C"):
        raise UsageError(f"unknown type {args.type!r}")
    T = load_theta(args.triangulation, args.n)
    if args.all or not args.orbit:
        orbits = all_theta_orbits(T.n)
    else:
        orbits = [parse_orbit(args.orbit, T.n)]
    ctx = _Context(T)
    payload, lines = [], []
    for orb in orbits:
        E = expand_type_b(T, orb, ctx) if mode == "B" else expand_type_c(T, orb, ctx, literal=args.literal)
        payload.append({"orbit": list(min(orb)), **E.to_json()})
        lines += _expansion_lines(orbit_text(orb), E)
    emit({"type": mode, "n": T.n, "triangulation": T.full.text(), "d": list(T.d), "results": payload},
         args.format, lines)
    return EXIT_OK


def _all_chords(m: int) -> list[Chord]:
    return [(a, b) for a in range(m) for b in range(a + 2, m) if (a, b) != (0, m - 1)]


def run_verify(args) -> int:
    if args.n < 2:
        raise UsageError("n must be at least 2")
    workers = effective_threads(args.threads)
    if args.theorem:
        mode = {"1": "B", "2": "C"}[args.theorem]
        rep = verify_theorem(args.n, mode, workers, literal=args.literal)
        title = f"theorem {args.theorem} (type {mode}), n={args.n}"
    elif args.cc:
        rep = verify_cc(args.n)
        title = f"cluster character, n={args.n}"
    else:
        rep = verify_cat_interpr(args.n, workers)
        title = f"categorical type B, n={args.n}"
    return _report_sweep(rep, title, args.format)


def _report_sweep(rep: SweepReport, title: str, fmt: str) -> int:
    lines = [f"{title}: {rep.summary()}", "PASS" if rep.passed else "FAIL"]
    if rep.failures:
        lines.append("first counterexample: " + json.dumps(rep.failures[0], sort_keys=True, ensure_ascii=False))
    emit(rep.to_json(), fmt, lines)
    return EXIT_OK if rep.passed else EXIT_FAIL


def run_enumerate_seeds(args) -> int:
    mode = args.type.upper()
    if mode == "A":
        T = load_plain(args.triangulation, args.n)
        G = type_a_oracle(T)
        keyed = sorted(G.variables.items(), key=lambda kv: (not isinstance(kv[0], tuple), str(kv[0])))
        variables = [{"diagonal": list(k), "F": r.F.to_json(), "g": list(r.g)} for k, r in keyed]
        names = [_vec(k) for k, _ in keyed]
    elif mode in ("B", "C"):
        T = load_theta(args.triangulation, args.n)
        G = theta_oracle(T, mode)
        keyed = sorted(G.variables.items(), key=lambda kv: min(kv[0]))
        variables = [{"orbit": list(min(k)), "F": r.F.to_json(), "g": list(r.g)} for k, r in keyed]
        names = [orbit_text(k) for k, _ in keyed]
    else:
        raise UsageError(f"unknown type {args.type!r}")
    lines = [f"clusters\t{G.clusters}", f"variables\t{len(G.variables)}"]
    lines += [f"{name}\t{r.F}\t{_vec(r.g)}" for name, (_, r) in zip(names, keyed)]
    emit({"clusters": G.clusters, "variables": variables}, args.format, lines)
    return EXIT_OK


def run_snake_graph(args) -> int:
    T = load_plain(args.triangulation, args.n)
    c = parse_diagonal(args.diagonal, T.m)
    if c in T:
        raise UsageError(f"{args.diagonal} is in the triangulation")
    G = SnakeGraph(T, c)
    E = expansion(T, c)
    info = G.to_json()
    info.update({"x": str(E.x), "F": str(E.F), "g": list(E.g)})
    lines = [f"tiles\t{' '.join(str(t.label) for t in G.tiles)}", f"shape\t{''.join(G.shape)}",
             f"signs\t{''.join(G.signs())}", f"matchings\t{len(G.matchings)}",
             f"F\t{E.F}", f"g\t{_vec(E.g)}", f"x\t{E.x}"]
    if args.plot:
        from .plotting import draw_snake_graph

        draw_snake_graph(G, args.plot, G.minimal_matching, title=f"snake graph of {_vec(c)}")
        lines.append(f"plot\t{args.plot}")
        info["plot"] = args.plot
    emit(info, args.format, lines)
    return EXIT_OK


def run_cc_map(args) -> int:
    if args.diagonal:
        T = load_plain(args.triangulation, args.n)
        Q = quiver_from_triangulation(T)
        M = rep_from_diagonal(Q, parse_diagonal(args.diagonal, T.m))
        info = {"module": shorthand(M), "dims": list(M.dims), "F": str(f_polynomial_of_rep(M)),
                "g": list(g_vector_of_rep(M)), "acyclic": Q.acyclic}
        if Q.acyclic:
            info["CC"] = str(cc_map(M))
        lines = [f"{k}\t{v}" for k, v in info.items()]
        emit(info, args.format, lines)
        return EXIT_OK
    if not args.orbit:
        raise UsageError("give --diagonal or --orbit")
    T = load_theta(args.triangulation, args.n)
    Q = symmetric_quiver(T)
    orb = parse_orbit(args.orbit, T.n)
    if orb & T.diagonals:
        raise UsageError(f"{args.orbit} lies in T; its module is zero")
    M = symmetric_of_orbit(T, orb, args.flavor, Q)
    info = {"orbit": orbit_text(orb), "T_prime": Q.triangulation.text(), "acyclic": Q.acyclic,
            **M.to_json(), "F": str(f_polynomial_of_rep(M.summands)), "g": list(g_vector_of_rep(M.summands))}
    if Q.acyclic and args.flavor == "orthogonal":
        F, g = theorem_rhs(T, M, Q)
        info["rhs"] = {"F": str(F), "g": list(g)}
        if M.kind == "S" and T.crosses_d(min(orb)):
            info["ses"] = cat_interpr_data(T, M, Q).to_json()
    lines = [f"{k}\t{v}" for k, v in info.items() if k not in ("summands", "ses", "rhs")]
    if "rhs" in info:
        lines += [f"rhs F\t{info['rhs']['F']}", f"rhs g\t{_vec(info['rhs']['g'])}"]
    if "ses" in info:
        lines += [f"ses {k}\t{v}" for k, v in info["ses"].items()]
    emit(info, args.format, lines)
    return EXIT_OK


def run_export(args) -> int:
    mode = args.type.upper()
    if mode not in ("B", "C"):
        raise UsageError("export supports types b and c")
    T = load_theta(args.triangulation, args.n)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    ctx = _Context(T)
    rows = []
    for orb in all_theta_orbits(T.n):
        E = expand_type_b(T, orb, ctx) if mode == "B" else expand_type_c(T, orb, ctx)
        rows.append({"orbit": orbit_text(orb), "F": str(E.F), "g": _vec(E.g), "x": str(E.x),
                     "restriction": " ".join(T.chord_name(c) for c in
                                             (T.restrict(orb) if mode == "B" else T.rotated_restrict(orb)))})
    report = {
        "type": mode,
        "n": T.n,
        "triangulation": T.full.text(),
        "d": list(T.d),
        "tbar": T.tbar.text(),
        "exchange_matrix": exchange_matrix(T, mode),
        "variables": rows,
    }
    (out / "report.json").write_text(json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    with open(out / "report.tsv", "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=["orbit", "restriction", "F", "g", "x"], delimiter="\t")
        w.writeheader()
        w.writerows(rows)
    from .plotting import draw_snake_graph, draw_triangulation

    figs = [draw_triangulation(T.full, out / "triangulation.png", d=T.d, title="T"),
            draw_triangulation(T.tbar, out / "tbar.png", title="restricted polygon")]
    for c in _all_chords(T.tbar.m):
        if c not in T.tbar:
            figs.append(draw_snake_graph(SnakeGraph(T.tbar, c), out / f"snake_{c[0]}_{c[1]}.png",
                                         title=T.chord_name(c)))
    lines = [f"wrote\t{p}" for p in [out / "report.json", out / "report.tsv", *figs]]
    emit({"out": str(out), "files": sorted(p.name for p in [out / "report.json", out / "report.tsv", *figs])},
         args.format, lines)
    return EXIT_OK


# argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="clusterbc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, types="abc", tri_default="fan"):
        sp.add_argument("--n", type=int, help="rank")
        sp.add_argument("--triangulation", default=tri_default,
                        help="file, bundled example name, or 'fan'")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        if types:
            sp.add_argument("--type", choices=list(types), default=types[0])

    sp = sub.add_parser("expand", help="closed-formula expansions")
    common(sp)
    sp.add_argument("--orbit", help="'[a,b]' for types b/c, '(a,b)' for type a")
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--literal", action="store_true", help="type c: uncorrected g-vector shift")
    sp.set_defaults(func=run_expand)

    sp = sub.add_parser("verify", help="exhaustive oracle comparisons")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--theorem", choices=("1", "2"))
    g.add_argument("--cc", action="store_true")
    g.add_argument("--cat-interpr", action="store_true")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--threads", type=int)
    sp.add_argument("--literal", action="store_true")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=run_verify)

    sp = sub.add_parser("enumerate-seeds", help="mutation oracle summary")
    common(sp)
    sp.set_defaults(func=run_enumerate_seeds)

    sp = sub.add_parser("snake-graph", help="snake graph of a diagonal")
    common(sp, types="")
    sp.add_argument("--diagonal", required=True)
    sp.add_argument("--plot")
    sp.set_defaults(func=run_snake_graph)

    sp = sub.add_parser("cc-map", help="modules and cluster characters")
    common(sp, types="")
    sp.add_argument("--diagonal")
    sp.add_argument("--orbit")
    sp.add_argument("--flavor", choices=("orthogonal", "symplectic"), default="orthogonal")
    sp.set_defaults(func=run_cc_map)

    sp = sub.add_parser("export", help="write report.json, report.tsv and figures")
    common(sp, types="bc")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=run_export)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # model errors and bugs alike
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
