"""Command-line interface: ``maxplus {spectral,ranks,urank,semigroup,powers}``.

Exit status: 0 on success, 2 on a parse error, 3 on a precondition
violation.  Verdicts are reported in the output, never in the exit status.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import NEG_INF, TropMatrix
from .digraph import graph_of_matrix, scc
from .errors import MaxPlusError, ParseError
from .io import read_matrix, render_text, scalar_field, scalar_with_decimal, vector_field
from .ranks import DEFAULT_CAP, column_rank, permanent, rank_report, row_rank, tropical_rank_bruteforce
from .semigroup import GeneratorSet, decide_max_ultimate_rank, semigroup_oracle
from .spectral import critical_graph, default_max_steps, eigen_basis, projective_power_orbit
from .ultimate import has_max_ultimate_rank, ultimate_rank, ultimate_rank_oracle

EXIT_PARSE = 2
EXIT_PRECONDITION = 3


def _arc(i, j):
    return [i + 1, j + 1]


def _nodes(comp):
    return sorted(v + 1 for v in comp)


def _vector_or_none(v):
    return None if v is None else vector_field(v)


def spectral_report(a: TropMatrix) -> dict:
    sd = critical_graph(a)
    graph_scc = scc(graph_of_matrix(a))
    report = {
        "command": "spectral",
        "size": a.rows,
        "rho": scalar_with_decimal(sd.rho),
        "critical_arcs": [_arc(i, j) for i, j in sorted(sd.critical_arcs)],
        "critical_components": [_nodes(c) for c in sd.critical_components],
        "cyclicities": list(sd.cyclicities),
        "graph_components": [
            {"nodes": _nodes(c), "trivial": t}
            for c, t in zip(graph_scc.components, graph_scc.trivial)
        ],
        "eigenvectors": [],
    }
    if sd.rho is not NEG_INF:
        report["eigenvectors"] = [vector_field(v) for v in eigen_basis(a, sd).generators]
    return report


def ranks_report(a: TropMatrix, cap: int = DEFAULT_CAP) -> dict:
    rep = rank_report(a, cap)
    out = {
        "command": "ranks",
        "shape": [a.rows, a.cols],
        "column_rank": rep.column_rank,
        "row_rank": rep.row_rank,
        "tropical_rank": rep.tropical_rank if rep.tropical_rank is not None else f"capped (> {cap})",
        "symmetrized_rank": (
            rep.symmetrized_rank if rep.symmetrized_rank is not None else f"capped (> {cap})"
        ),
    }
    if a.is_square:
        cert = permanent(a)
        out["permanent"] = scalar_field(cert.permanent)
        out["nonsingular"] = not cert.singular
        out["tau"] = None if cert.tau is None else [t + 1 for t in cert.tau]
    return out


def urank_report(a: TropMatrix, oracle: bool = False, max_steps: int = None) -> dict:
    res = ultimate_rank(a)
    out = {
        "command": "urank",
        "size": a.rows,
        "ultimate_rank": res.value,
        "critical_scc_count": res.critical_scc_count,
        "cyclicities": list(res.per_scc_cyclicities),
        "diagnosis": res.diagnosis,
        "maximal": has_max_ultimate_rank(a).value,
    }
    if oracle:
        if a.is_null:
            out["oracle"] = {"status": "skipped (null matrix)", "value": None}
        else:
            orc = ultimate_rank_oracle(a, max_steps)
            out["oracle"] = {
                "status": "closed" if orc.closed else "inconclusive (non-torsion)",
                "value": orc.value,
                "preperiod": orc.preperiod,
                "period": orc.period,
                "agrees": None if orc.value is None else orc.value == res.value,
            }
    return out


def _condition(c, labeller=None) -> dict:
    out = {"holds": c.holds}
    if c.culprits:
        out["culprits"] = [labeller(x) for x in c.culprits] if labeller else list(c.culprits)
    if c.detail:
        out["detail"] = c.detail
    return out


def semigroup_report(generators, oracle_len: int = None) -> dict:
    gs = GeneratorSet(generators)
    dec = decide_max_ultimate_rank(gs)
    out = {
        "command": "semigroup",
        "size": gs.n,
        "generators": len(gs),
        "verdict": dec.verdict,
        "C1": _condition(dec.c1, lambda k: {"generator": k + 1}),
        "C2": _condition(dec.c2),
        "C3": _condition(dec.c3, lambda kc: {"generator": kc[0] + 1, "arc": _arc(*kc[1])}),
        "rho_M": None if dec.envelope_rho is None else scalar_with_decimal(dec.envelope_rho),
        "witness_eigenvector": _vector_or_none(dec.witness_eigenvector),
    }
    if oracle_len is not None:
        rep = semigroup_oracle(gs, oracle_len, decision=dec)
        out["oracle"] = {
            "max_len": rep.max_len,
            "maximal": rep.maximal,
            "agrees": rep.agree,
            "bad_product": None if rep.witness_product is None else [k + 1 for k in rep.witness_product],
            "bad_product_ultimate_rank": rep.witness_rank,
            "distinct_products": rep.distinct_products,
        }
    return out


def powers_report(a: TropMatrix, max_steps: int = None, trace: int = 10, cap: int = DEFAULT_CAP) -> dict:
    steps = default_max_steps(a.rows) if max_steps is None else max_steps
    orbit = projective_power_orbit(a, steps)
    rows = []
    for w, m in enumerate(orbit.forms[:trace], start=1):
        rows.append({
            "power": w,
            "column_rank": column_rank(m),
            "row_rank": row_rank(m),
            "tropical_rank": tropical_rank_bruteforce(m, cap),
        })
    return {
        "command": "powers",
        "size": a.rows,
        "rho": scalar_with_decimal(orbit.rho),
        "max_steps": steps,
        "closed": orbit.closed,
        "preperiod": orbit.preperiod,
        "period": orbit.period,
        "shift": None if orbit.shift is None else scalar_field(orbit.shift),
        "rank_trace": rows,
    }


def _emit(report: dict, as_json: bool, out):
    if as_json:
        json.dump(report, out, indent=2)
        out.write("\n")
    else:
        out.write(render_text(report) + "\n")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="maxplus", description="Exact max-plus matrix analysis.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    sp = add("spectral", "cycle mean, critical graph, cyclicities, eigenvectors")
    sp.add_argument("file")

    sp = add("ranks", "column, row, tropical and symmetrized ranks")
    sp.add_argument("file")
    sp.add_argument("--brute-max", type=int, default=DEFAULT_CAP,
                    help="largest size for brute-force ranks (default %(default)s)")

    sp = add("urank", "ultimate rank")
    sp.add_argument("file")
    sp.add_argument("--oracle", action="store_true", help="cross-check with the power orbit")
    sp.add_argument("--max-steps", type=int, default=None)

    sp = add("semigroup", "decide maximal ultimate rank of a generated semigroup")
    sp.add_argument("files", nargs="+")
    sp.add_argument("--oracle", type=int, default=None, metavar="L",
                    help="also enumerate all products up to length L")

    sp = add("powers", "projective orbit of the powers and their ranks")
    sp.add_argument("file")
    sp.add_argument("--max-steps", type=int, default=None)
    sp.add_argument("--trace", type=int, default=10, help="powers listed in the rank trace")
    sp.add_argument("--brute-max", type=int, default=DEFAULT_CAP)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "spectral":
            report = spectral_report(read_matrix(args.file))
        elif args.command == "ranks":
            report = ranks_report(read_matrix(args.file), args.brute_max)
        elif args.command == "urank":
            report = urank_report(read_matrix(args.file), args.oracle, args.max_steps)
        elif args.command == "semigroup":
            report = semigroup_report([read_matrix(f) for f in args.files], args.oracle)
        else:
            report = powers_report(read_matrix(args.file), args.max_steps, args.trace, args.brute_max)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except MaxPlusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    _emit(report, args.json, out)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
