"""``spin``: JSON front end to the library.

Exit status is 0 on success, 1 when the input is well formed but violates a
mathematical precondition (an error object goes to stderr), and 2 for
malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import jsonschema

from . import schemas
from .artin import ArtinError, ArtinRing
from .degeneration import DegenerationError, family_from_json, limit_spin_type, normalize_chain
from .graphs import (GraphError, SpinType, StableGraph, aut_order, count_roots,
                     enumerate_spin_types, universal_deformation_presentation, validate_graph)
from .local import (EpqModule, LocalModelError, SpinMapLocal, check_spin_relations,
                    epq_isomorphic, extract_sigma, local_aut_group)

DOMAIN_ERRORS = (ArtinError, LocalModelError, GraphError, DegenerationError)


class InputError(Exception):
    pass


class DomainFailure(Exception):
    def __init__(self, message, diagnostics=(), payload=None):
        super().__init__(message)
        self.diagnostics = list(diagnostics)
        self.payload = payload


def _load(source: str, schema: str):
    """Read JSON from a path, ``-`` (stdin) or an inline document."""
    text = source
    if source == "-":
        text = sys.stdin.read()
    elif not source.lstrip().startswith(("{", "[")):
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {source}: {exc}") from exc
    try:
        schemas.validate(data, schema)
    except jsonschema.ValidationError as exc:
        path = "/".join(map(str, exc.absolute_path)) or "<root>"
        raise InputError(f"{schema} schema violation at {path}: {exc.message}") from exc
    return data


def _graph(args) -> StableGraph:
    return StableGraph.from_json(_load(args.graph, "graph"))


def _types(args, graph: StableGraph) -> list[SpinType]:
    if getattr(args, "type", None):
        return [SpinType.from_json(graph, _load(args.type, "spin-type"))]
    return enumerate_spin_types(graph)


# -- commands -----------------------------------------------------------------


def cmd_validate(args):
    report = validate_graph(_graph(args))
    if not report.valid:
        raise DomainFailure("graph is not a valid stable graph", report.diagnostics,
                            report.to_json())
    return report.to_json(), "validation"


def cmd_enumerate(args):
    return [t.to_json() for t in enumerate_spin_types(_graph(args))], "spin-types"


def cmd_aut(args):
    graph = _graph(args)
    out = []
    for t in _types(args, graph):
        c = len(graph.components(t.nonfree))
        rational = 2 if graph.r % 2 == 0 else 1
        out.append({"type": t.to_json(), "aut_order": aut_order(t), "components": c,
                    "rational_order": rational ** c})
    return out, "aut-report"


def cmd_count(args):
    graph = _graph(args)
    return [{"type": t.to_json(), "count": count_roots(t)} for t in _types(args, graph)], \
        "count-report"


def cmd_deform(args):
    graph = _graph(args)
    return [{"type": t.to_json(), "presentation": universal_deformation_presentation(t).to_json()}
            for t in _types(args, graph)], "deform-report"


def cmd_chain(args):
    if args.r < 1 or args.n < 1:
        raise DomainFailure("r and n must be positive")
    return normalize_chain(args.residue, args.n, args.r).to_json(), "chain"


def cmd_limit(args):
    graph, nodes = family_from_json(_load(args.family, "family"))
    return limit_spin_type(graph, nodes).to_json(), "spin-type"


def cmd_local_classify(args):
    b = SpinMapLocal.from_json(_load(args.input, "spin-map"))
    ok, failing = check_spin_relations(b)
    out = {"relations_hold": ok, "failing_indices": failing}
    if ok:
        report = extract_sigma(b)
        out.update(report.to_json())
        out["cokernel_length"] = report.u + report.v - 1
        out["good_cokernel"] = report.u + report.v == b.r
        if report.classification != "not-quasi-spin":
            out["automorphisms"] = local_aut_group(b).to_json(b.module.ring.field)
    return out, "classify-report"


def cmd_local_isom(args):
    data = _load(args.input, "isom-input")
    ring = ArtinRing.from_json(data["ring"])
    mods = [EpqModule(ring, ring.element_from_json(data[k]["p"]),
                      ring.element_from_json(data[k]["q"])) for k in ("first", "second")]
    mu = epq_isomorphic(*mods)
    return {"isomorphic": mu is not None, "mu": None if mu is None else mu.to_json()}, \
        "isom-report"


def cmd_schema(args):
    return schemas.SCHEMAS[args.name], None


# -- output -------------------------------------------------------------------


def _cell(v) -> str:
    return v if isinstance(v, str) else json.dumps(v, sort_keys=True)


def render_table(obj) -> str:
    if isinstance(obj, list):
        if not obj:
            return "(empty)"
        if all(isinstance(o, dict) for o in obj):
            cols = sorted({k for o in obj for k in o})
            rows = [[_cell(o.get(c, "")) for c in cols] for o in obj]
            widths = [max(len(c), *(len(r[i]) for r in rows)) for i, c in enumerate(cols)]
            lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths))]
            lines += ["  ".join(x.ljust(w) for x, w in zip(r, widths)) for r in rows]
            return "\n".join(lines)
        return "\n".join(_cell(o) for o in obj)
    if isinstance(obj, dict):
        width = max((len(k) for k in obj), default=0)
        return "\n".join(f"{k.ljust(width)}  {_cell(obj[k])}" for k in sorted(obj))
    return _cell(obj)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


SCHEMA_HELP = """\
input formats (print a full schema with `spin schema NAME`):
  graph      {"r": 2, "vertices": [{"id": 0, "genus": 1}], "edges": [{"id": 0, "v": [0, 0]}]}
  spin-type  {"nonfree": [{"edge": 0, "u": 1}], "degrees": {"0": 0}}
  family     {"r": 2, "graph": GRAPH, "nodes": [{"edge": 0, "order": 1, "residue": 1}]}
  ring       {"field": "Q" | {"Fp": p}, "vars": ["t", "eps"], "ideal": [[3, 0], [0, 2], [1, 1]]}
  element    {"1,0": "1/2", "0,1": 3} (exponent vector -> coefficient) or "t^2 - eps"
  nodal      {"const": ELEMENT, "x": {"1": ELEMENT}, "y": {"2": ELEMENT}}
  spin-map   {"ring": RING, "p": ELEMENT, "q": ELEMENT, "r": 3, "components": [NODAL, ...]}
  isom-input {"ring": RING, "first": {"p": ..., "q": ...}, "second": {"p": ..., "q": ...}}
Inputs may be a path, '-' for stdin, or an inline JSON document.
SPIN_SEED fixes randomized test-data generation in the test suite; every
command here is deterministic.
"""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spin", description="Limit r-spin structures on stable curves.",
        epilog=SCHEMA_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--format", choices=["json", "table"], default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_cmd(name, func, help, with_type=False):
        p = sub.add_parser(name, help=help)
        p.add_argument("--graph", required=True, help="graph JSON (path, '-' or inline)")
        if with_type:
            p.add_argument("--type", help="spin-type JSON; default: every enumerated type")
        p.add_argument("--format", choices=["json", "table"], default=argparse.SUPPRESS)
        p.set_defaults(func=func)

    graph_cmd("validate", cmd_validate, "check stability, connectedness, genus and r | 2g-2")
    graph_cmd("enumerate", cmd_enumerate, "list every spin type on a stable graph")
    graph_cmd("aut", cmd_aut, "automorphism orders r^(components after deleting non-free edges)",
              True)
    graph_cmd("count", cmd_count, "number of r-th roots for each spin type", True)
    graph_cmd("deform", cmd_deform, "universal deformation presentations", True)

    p = sub.add_parser("chain", help="normalized coefficients on one exceptional chain")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True, help="order of the node")
    p.add_argument("--residue", type=int, required=True, help="e_1 mod r")
    p.add_argument("--format", choices=["json", "table"], default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("limit", help="limit spin type of a smoothing family")
    p.add_argument("--family", required=True)
    p.add_argument("--format", choices=["json", "table"], default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("local", help="local models E(p,q) at a node")
    lsub = p.add_subparsers(dest="local_command", required=True)
    q = lsub.add_parser("classify", help="relations, twist, cokernel and sigma classification")
    q.add_argument("--input", required=True)
    q.add_argument("--format", choices=["json", "table"], default=argparse.SUPPRESS)
    q.set_defaults(func=cmd_local_classify)
    q = lsub.add_parser("isom", help="decide E(p,q) ~ E(p',q') and return mu")
    q.add_argument("--input", required=True)
    q.add_argument("--format", choices=["json", "table"], default=argparse.SUPPRESS)
    q.set_defaults(func=cmd_local_isom)

    p = sub.add_parser("schema", help="print a JSON schema")
    p.add_argument("name", choices=sorted(schemas.SCHEMAS))
    p.set_defaults(func=cmd_schema)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.format
    try:
        result, schema = args.func(args)
    except InputError as exc:
        err = {"error": "input", "message": str(exc)}
        print(dumps(err), file=sys.stderr)
        return 2
    except DomainFailure as exc:
        err = {"error": "domain", "message": str(exc), "diagnostics": exc.diagnostics}
        if exc.payload is not None:
            print(dumps(exc.payload) if fmt == "json" else render_table(exc.payload))
        print(dumps(err) if fmt == "json" else render_table(err), file=sys.stderr)
        return 1
    except DOMAIN_ERRORS as exc:
        err = {"error": "domain", "message": str(exc)}
        print(dumps(err) if fmt == "json" else render_table(err), file=sys.stderr)
        return 1
    if schema is not None:
        schemas.validate(result, schema)
    print(dumps(result) if fmt == "json" else render_table(result))
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
