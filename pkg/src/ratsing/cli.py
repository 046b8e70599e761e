"""Command line interface and the plain-text graph file format.

Graph files are line oriented::

    # comment
    v <id> <b>        curve <id> with self-intersection -b
    e <id1> <id2>     the two curves meet

A vertex must be declared before any edge that uses it.

Exit codes: 0 report produced, 1 usage or parse error, 2 the graph is not a
rational resolution graph, 3 an internal identity check failed.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from collections.abc import Sequence

from .errors import DomainError, GraphError, IdentityFailure, ParseError
from .enumerate import SearchParams, random_rational_graphs, search
from .fundamental import computation_sequence, fundamental_cycle, is_rational, numeric_invariants
from .graph import DualGraph, build_graph, require_resolution_graph
from .invariants import InvariantsReport, analyze, lemma_checks
from .tower import TowerNode, build_tower

_ID = re.compile(r"[A-Za-z0-9_]+\Z")
_INT = re.compile(r"[0-9]+\Z")


def parse_graph_file(text: str) -> DualGraph:
    vertices: list[tuple[str, int]] = []
    edges: list[tuple[str, str]] = []
    declared: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "v":
            if len(parts) != 3:
                raise ParseError(f"expected 'v <id> <b>', got {line!r}", lineno)
            vid, b = parts[1], parts[2]
            if not _ID.match(vid):
                raise ParseError(f"invalid vertex id {vid!r}", lineno)
            if not _INT.match(b) or int(b) < 1:
                raise ParseError(f"weight of {vid!r} must be a positive integer, got {b!r}", lineno)
            vertices.append((vid, int(b)))
            declared.add(vid)
        elif kind == "e":
            if len(parts) != 3:
                raise ParseError(f"expected 'e <id1> <id2>', got {line!r}", lineno)
            for vid in parts[1:]:
                if vid not in declared:
                    raise ParseError(f"unknown vertex {vid!r}", lineno)
            edges.append((parts[1], parts[2]))
        else:
            raise ParseError(f"unknown line type {kind!r}", lineno)
    return build_graph(vertices, edges)


def render(g: DualGraph) -> str:
    lines = [f"v {v} {b}" for v, b in zip(g.ids, g.weights)]
    pairs = sorted((sorted(e, key=g.index.__getitem__) for e in g.edges), key=lambda p: (g.index[p[0]], g.index[p[1]]))
    lines += [f"e {a} {b}" for a, b in pairs]
    return "\n".join(lines) + "\n"


def _graph_json(g: DualGraph) -> dict:
    return {
        "vertices": [[v, b] for v, b in zip(g.ids, g.weights)],
        "edges": [line.split()[1:] for line in render(g).splitlines() if line.startswith("e ")],
    }


def _table(rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


# -- subcommands ----------------------------------------------------------------


def cmd_validate(g: DualGraph, args) -> tuple[dict, str]:
    require_resolution_graph(g)
    rational = is_rational(g)
    if not rational:
        raise DomainError("graph is connected and negative definite but not rational (p_a(Z) > 0)")
    data = {"vertices": len(g), "tree": g.is_tree(), "negative_definite": True, "rational": True}
    text = _table([["vertices", str(len(g))], ["negative definite", "yes"], ["rational", "yes"]])
    return data, text


def cmd_cycle(g: DualGraph, args) -> tuple[dict, str]:
    z = fundamental_cycle(g)
    inv = numeric_invariants(g, z)
    seq = computation_sequence(g, z, args.start)
    data = {
        "Z": {v: z.get(v, 0) for v in g.ids},
        "z_self": inv.z_self,
        "e": inv.e,
        "mult": inv.mult,
        "reduced": inv.reduced,
        "r": inv.r,
        "computation_sequence": {"start": seq.start, "steps": list(seq.steps)},
    }
    text = _table(
        [
            ["Z", " ".join(f"{v}:{z.get(v, 0)}" for v in g.ids)],
            ["Z^2", str(inv.z_self)],
            ["e", str(inv.e)],
            ["mult", str(inv.mult)],
            ["reduced", _yes(inv.reduced)],
            ["r", " ".join(f"{v}:{inv.r[v]}" for v in g.ids)],
            ["sequence", " ".join(seq.vertices)],
        ]
    )
    return data, text


def _tower_rows(t: TowerNode) -> list[dict]:
    return [
        {
            "node": n.node_id,
            "vertices": list(n.vertex_set),
            "e": n.inv.e,
            "mult": n.inv.mult,
            "reduced": n.inv.reduced,
            "children": [c.node_id for c in n.children],
            "truncated": n.truncated,
        }
        for n in t.walk()
    ]


def cmd_tower(g: DualGraph, args) -> tuple[dict, str]:
    rows = _tower_rows(build_tower(g))
    table = [["node", "vertices", "e", "mult", "reduced", "children"]]
    for r in rows:
        table.append(
            [r["node"], " ".join(r["vertices"]), str(r["e"]), str(r["mult"]), _yes(r["reduced"]), " ".join(r["children"]) or "-"]
        )
    return {"nodes": rows}, _table(table)


def report_text(rep: InvariantsReport) -> str:
    head = [
        ["e_root", str(rep.e_root)],
        ["mult_root", str(rep.mult_root)],
        ["t2", str(rep.t2)],
        ["t1_combinatorial", str(rep.t1_combinatorial)],
        ["t1", f"{rep.t1_combinatorial.value} + {rep.t1_symbolic}" + ("" if rep.t1_combinatorial.exact else " (lower bound)")],
        ["djvs_applicable", _yes(rep.djvs_applicable)],
        ["minus_two_count", "-" if rep.minus_two_count is None else str(rep.minus_two_count)],
    ]
    nodes = [["node", "vertices", "e", "mult", "reduced", "c"]]
    for row in rep.per_node:
        nodes.append([row.node_id, " ".join(row.vertices), str(row.e), str(row.mult), _yes(row.reduced), str(row.c_status)])
    checks = [["node", "chi(O_Z(2Z))", "chi(Theta(x)O_Z(Z))", "difference", "e-4", "ok"]]
    for nid, c in rep.checks.items():
        checks.append([nid, str(c.chi_oz_2z), str(c.chi_theta_z_recursive), str(c.difference), str(c.e - 4), _yes(c.passed)])
    return "\n\n".join([_table(head), _table(nodes), _table(checks)])


def cmd_invariants(g: DualGraph, args) -> tuple[dict, str]:
    rep = analyze(g)
    return rep.to_json(), report_text(rep)


def cmd_enumerate(args) -> tuple[dict, str]:
    p = SearchParams(args.max_vertices, args.wmin, args.wmax, True, args.filter)
    hits = search(p, jobs=args.jobs)
    bounds = f"trees with <= {p.max_vertices} vertices and weights {p.weight_min}..{p.weight_max}"
    data = {
        "params": {"max_vertices": p.max_vertices, "wmin": p.weight_min, "wmax": p.weight_max, "filter": p.filter},
        "note": f"exhaustive only over {bounds}",
        "count": len(hits),
        "graphs": [{**_graph_json(h.graph), "mult": h.mult, "c": h.c} for h in hits],
    }
    lines = [f"# {len(hits)} graph(s), filter={p.filter}; exhaustive only over {bounds}"]
    for k, h in enumerate(hits):
        c = "undetermined" if h.c is None else str(h.c)
        lines.append(f"# [{k}] mult={h.mult} c={c}")
        lines.append(render(h.graph).rstrip())
    return data, "\n".join(lines)


def cmd_check_identities(args) -> tuple[dict, str]:
    graphs = random_rational_graphs(args.seed, args.count, args.max_vertices, args.wmin, args.wmax)
    rng = random.Random(args.seed)
    failures = []
    for k, g in enumerate(graphs):
        try:
            z = fundamental_cycle(g)
            lemma_checks(g, z)
            if fundamental_cycle(g, rng=rng) != z:
                raise IdentityFailure("randomized order changed Z")
            seq = computation_sequence(g, z, rng.choice([v for v in g.ids if z.get(v, 0)]), rng=rng)
            if any(p != 1 for p in seq.step_pairings(g)):
                raise IdentityFailure("computation sequence step pairing != 1")
        except (IdentityFailure, DomainError) as exc:
            failures.append({"index": k, "graph": render(g), "error": str(exc)})
    data = {"seed": args.seed, "graphs": len(graphs), "failures": failures}
    text = f"checked {len(graphs)} random rational graphs (seed {args.seed}): {len(failures)} failure(s)"
    for f in failures:
        text += f"\n[{f['index']}] {f['error']}\n{f['graph']}"
    if failures:
        raise IdentityFailure(text)
    return data, text


# -- plumbing ---------------------------------------------------------------------


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")

    p = _Parser(prog="ratsing", description="Invariants of rational surface singularities from resolution graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, help_ in [
        ("validate", "check the graph is a rational resolution graph"),
        ("cycle", "fundamental cycle, e, multiplicity, r-vector, computation sequence"),
        ("tower", "blow-down tower"),
        ("invariants", "T1/T2 totals, correction terms and identity checks"),
    ]:
        sp = sub.add_parser(name, parents=[fmt], help=help_)
        sp.add_argument("file", help="graph file, or - for stdin")
        if name == "cycle":
            sp.add_argument("--start", help="start vertex of the computation sequence")

    sp = sub.add_parser("enumerate", parents=[fmt], help="search weighted trees")
    sp.add_argument("--max-vertices", type=int, required=True)
    sp.add_argument("--wmin", type=int, default=2)
    sp.add_argument("--wmax", type=int, default=4)
    sp.add_argument("--filter", choices=("all", "c_positive", "undetermined_c"), default="all")
    sp.add_argument("--jobs", type=int, default=1)

    sp = sub.add_parser("check-identities", parents=[fmt], help="identity checks on random rational graphs")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=200)
    sp.add_argument("--max-vertices", type=int, default=8)
    sp.add_argument("--wmin", type=int, default=2)
    sp.add_argument("--wmax", type=int, default=6)
    return p


_GRAPH_COMMANDS = {
    "validate": cmd_validate,
    "cycle": cmd_cycle,
    "tower": cmd_tower,
    "invariants": cmd_invariants,
}


def run(argv: Sequence[str], stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = _parser().parse_args(list(argv))
        if args.command in _GRAPH_COMMANDS:
            if args.file == "-":
                text = stdin.read()
            else:
                with open(args.file) as fh:
                    text = fh.read()
            g = parse_graph_file(text)
            data, out = _GRAPH_COMMANDS[args.command](g, args)
        elif args.command == "enumerate":
            data, out = cmd_enumerate(args)
        else:
            data, out = cmd_check_identities(args)
    except (UsageError, ParseError, GraphError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    except DomainError as exc:
        print(f"rejected: {exc}", file=stderr)
        return 2
    except IdentityFailure as exc:
        print(f"identity check failed: {exc}", file=stderr)
        return 3
    if args.format == "json":
        print(json.dumps(data, indent=2), file=stdout)
    else:
        print(out, file=stdout)
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
