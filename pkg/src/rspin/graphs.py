"""Dual-graph combinatorics of limit r-spin structures."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    id: int
    ends: tuple[int, int]

    @property
    def is_loop(self) -> bool:
        return self.ends[0] == self.ends[1]


@dataclass(frozen=True)
class StableGraph:
    """Dual graph of a nodal curve with the spin order ``r``.

    Edge endpoints are stored smaller vertex id first; a twist ``(u, v)``
    always puts ``u`` on ``ends[0]``.
    """

    genera: Mapping[int, int]
    edges: tuple[Edge, ...]
    r: int

    def __post_init__(self):
        object.__setattr__(self, "genera", dict(sorted(self.genera.items())))
        edges = []
        for e in self.edges:
            if not isinstance(e, Edge):
                eid, ends = e
                e = Edge(int(eid), tuple(ends))
            a, b = e.ends
            edges.append(Edge(e.id, (min(a, b), max(a, b))))
        edges.sort(key=lambda e: e.id)
        if len({e.id for e in edges}) != len(edges):
            raise GraphError("duplicate edge ids")
        for e in edges:
            for v in e.ends:
                if v not in self.genera:
                    raise GraphError(f"edge {e.id} references unknown vertex {v}")
        object.__setattr__(self, "edges", tuple(edges))

    def __hash__(self):
        return hash((tuple(self.genera.items()), self.edges, self.r))

    @classmethod
    def build(cls, genera: Sequence[int] | Mapping[int, int],
              edges: Iterable[tuple[int, int]], r: int) -> "StableGraph":
        """Vertices numbered by position, edges numbered in order."""
        if not isinstance(genera, Mapping):
            genera = dict(enumerate(genera))
        return cls(genera, tuple(Edge(i, tuple(ends)) for i, ends in enumerate(edges)), r)

    # -- basic invariants ----------------------------------------------------

    @property
    def vertices(self) -> list[int]:
        return list(self.genera)

    def edge(self, eid: int) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise GraphError(f"no edge {eid}")

    def valence(self, v: int) -> int:
        """Number of half-edges at ``v`` (loops count twice)."""
        return sum((e.ends[0] == v) + (e.ends[1] == v) for e in self.edges)

    def genus(self) -> int:
        return sum(self.genera.values()) + len(self.edges) - len(self.genera) + 1

    def components(self, removed: Iterable[int] = ()) -> list[list[int]]:
        """Connected components after deleting the edges with ids in ``removed``."""
        removed = set(removed)
        adj: dict[int, set] = {v: set() for v in self.genera}
        for e in self.edges:
            if e.id not in removed:
                adj[e.ends[0]].add(e.ends[1])
                adj[e.ends[1]].add(e.ends[0])
        seen: set = set()
        comps = []
        for start in self.genera:
            if start in seen:
                continue
            stack, comp = [start], []
            seen.add(start)
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in adj[v]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def relabel(self, vertex_map: Mapping[int, int], edge_map: Mapping[int, int] | None = None
                ) -> "StableGraph":
        edge_map = edge_map or {e.id: e.id for e in self.edges}
        return StableGraph({vertex_map[v]: g for v, g in self.genera.items()},
                           tuple(Edge(edge_map[e.id], (vertex_map[e.ends[0]], vertex_map[e.ends[1]]))
                                 for e in self.edges), self.r)

    # -- json ---------------------------------------------------------------

    def to_json(self) -> dict:
        return {"r": self.r,
                "vertices": [{"id": v, "genus": g} for v, g in self.genera.items()],
                "edges": [{"id": e.id, "v": list(e.ends)} for e in self.edges]}

    @classmethod
    def from_json(cls, data: Mapping) -> "StableGraph":
        return cls({int(v["id"]): int(v["genus"]) for v in data["vertices"]},
                   tuple(Edge(int(e["id"]), tuple(int(x) for x in e["v"])) for e in data["edges"]),
                   int(data["r"]))


@dataclass(frozen=True)
class GraphReport:
    valid: bool
    genus: int
    diagnostics: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"valid": self.valid, "genus": self.genus, "diagnostics": list(self.diagnostics)}


def validate_graph(graph: StableGraph) -> GraphReport:
    problems = []
    if graph.r < 1:
        problems.append(f"r = {graph.r} is not positive")
    if not graph.genera:
        problems.append("graph has no vertices")
        return GraphReport(False, 0, tuple(problems))
    for v, g in graph.genera.items():
        if g < 0:
            problems.append(f"vertex {v} has negative genus {g}")
        if 2 * g - 2 + graph.valence(v) <= 0:
            problems.append(f"vertex {v} is unstable: 2*{g} - 2 + {graph.valence(v)} <= 0")
    if len(graph.components()) != 1:
        problems.append("graph is not connected")
    g = graph.genus()
    if g < 2:
        problems.append(f"total genus {g} < 2")
    elif graph.r >= 1 and (2 * g - 2) % graph.r:
        problems.append(f"r = {graph.r} does not divide 2g - 2 = {2 * g - 2}")
    return GraphReport(not problems, g, tuple(problems))


def _require_valid(graph: StableGraph) -> None:
    report = validate_graph(graph)
    if not report.valid:
        raise GraphError("; ".join(report.diagnostics))


# ---------------------------------------------------------------------------
# spin types


@dataclass(frozen=True)
class SpinType:
    """Twists on the non-free edges and the resulting vertex degrees.

    ``twists`` maps edge id to ``(u, v)`` with ``u`` on the smaller
    endpoint; loops carry ``u <= v``.
    """

    graph: StableGraph
    twists: Mapping[int, tuple[int, int]]
    degrees: Mapping[int, int] = field(default=None)

    def __post_init__(self):
        r = self.graph.r
        twists = {}
        for eid, (u, v) in sorted(self.twists.items()):
            e = self.graph.edge(eid)
            if u < 1 or v < 1 or u + v != r:
                raise GraphError(f"edge {eid}: twist {(u, v)} needs u, v >= 1 and u + v = {r}")
            if e.is_loop and u > v:
                u, v = v, u
            twists[eid] = (u, v)
        object.__setattr__(self, "twists", twists)
        degrees = {}
        for vert, D in vertex_twisted_degrees(self.graph, twists).items():
            if D % r:
                raise GraphError(f"vertex {vert}: twisted degree {D} is not divisible by {r}")
            degrees[vert] = D // r
        if self.degrees is not None and dict(self.degrees) != degrees:
            raise GraphError(f"stated degrees {dict(self.degrees)} differ from {degrees}")
        object.__setattr__(self, "degrees", degrees)

    @property
    def nonfree(self) -> tuple[int, ...]:
        return tuple(self.twists)

    def key(self) -> tuple:
        return tuple(self.twists.get(e.id, (0, 0))[0] for e in self.graph.edges)

    def __eq__(self, other):
        return (isinstance(other, SpinType) and self.graph == other.graph
                and self.twists == other.twists)

    def __hash__(self):
        return hash((self.graph, tuple(self.twists.items())))

    def __repr__(self):
        return f"SpinType(twists={self.twists}, degrees={self.degrees})"

    def to_json(self) -> dict:
        return {"nonfree": [{"edge": eid, "u": u, "v": v} for eid, (u, v) in self.twists.items()],
                "degrees": {str(k): d for k, d in self.degrees.items()}}

    @classmethod
    def from_json(cls, graph: StableGraph, data: Mapping) -> "SpinType":
        twists = {}
        for item in data["nonfree"]:
            u = int(item["u"])
            twists[int(item["edge"])] = (u, int(item.get("v", graph.r - u)))
        degrees = data.get("degrees")
        if degrees is not None:
            degrees = {int(k): int(d) for k, d in degrees.items()}
        return cls(graph, twists, degrees)


def vertex_twisted_degrees(graph: StableGraph, twists: Mapping[int, tuple[int, int]]) -> dict:
    """``2 g_v - 2 + val(v) - (twists at v)`` for every vertex."""
    out = {v: 2 * g - 2 + graph.valence(v) for v, g in graph.genera.items()}
    for eid, (u, v) in twists.items():
        a, b = graph.edge(eid).ends
        out[a] -= u
        out[b] -= v
    return out


def _edge_options(graph: StableGraph, e: Edge) -> list:
    r = graph.r
    upper = r // 2 if e.is_loop else r - 1
    return [None] + [(u, r - u) for u in range(1, upper + 1)]


def enumerate_spin_types(graph: StableGraph) -> list[SpinType]:
    """Every twist assignment meeting the per-vertex divisibility condition.

    Order is lexicographic in the per-edge choice (free first, then
    increasing ``u``) taken in edge-id order.
    """
    _require_valid(graph)
    r = graph.r
    base = {v: 2 * g - 2 + graph.valence(v) for v, g in graph.genera.items()}
    out = []
    options = [_edge_options(graph, e) for e in graph.edges]
    for choice in itertools.product(*options):
        D = dict(base)
        for e, tw in zip(graph.edges, choice):
            if tw is not None:
                D[e.ends[0]] -= tw[0]
                D[e.ends[1]] -= tw[1]
        if all(d % r == 0 for d in D.values()):
            twists = {e.id: tw for e, tw in zip(graph.edges, choice) if tw is not None}
            out.append(SpinType(graph, twists))
    return out


def degree_sum_check(t: SpinType) -> bool:
    """``sum d_v + |S| == (2g - 2) / r``."""
    g = t.graph.genus()
    return (sum(t.degrees.values()) + len(t.twists)) * t.graph.r == 2 * g - 2


def aut_order(t: SpinType) -> int:
    """``r ** c`` with ``c`` the number of components once the non-free edges
    are deleted."""
    return t.graph.r ** len(t.graph.components(t.nonfree))


def count_roots(t: SpinType) -> int:
    """Product over components ``C`` of the graph minus non-free edges of
    ``r ** (2 * genus(C) + b1(C))``."""
    graph = t.graph
    kept = [e for e in graph.edges if e.id not in t.twists]
    total = 1
    for comp in graph.components(t.nonfree):
        cs = set(comp)
        n_edges = sum(1 for e in kept if e.ends[0] in cs)
        b1 = n_edges - len(comp) + 1
        total *= graph.r ** (2 * sum(graph.genera[v] for v in comp) + b1)
    return total


def natural_pullback_degree(d: int, k: int) -> int:
    """Degree after pulling back to the normalization at ``k`` non-free nodes
    and dividing out torsion."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return d - k


# ---------------------------------------------------------------------------
# deformation presentations


@dataclass(frozen=True)
class Presentation:
    """``k[[P_1, Q_1, ..., P_l, Q_l, t_{l+1}, ..., t_n]] / (P_i^u_i - Q_i^v_i)``
    plus the pure cover ``tau_i`` with ``p_i = tau_i^v_i, q_i = tau_i^u_i``."""

    genus: int
    generators: tuple[str, ...]
    relations: tuple[str, ...]
    node_edges: tuple[int, ...]  # edge id of the i-th non-free node
    twists: tuple[tuple[int, int], ...]
    pure_cover_generators: tuple[str, ...]
    pure_cover_relations: tuple[str, ...]
    pure_cover_substitution: tuple[dict, ...]

    @property
    def n_parameters(self) -> int:
        return 3 * self.genus - 3

    def to_json(self) -> dict:
        return {"genus": self.genus, "n": self.n_parameters,
                "generators": list(self.generators), "relations": list(self.relations),
                "nodes": [{"index": i + 1, "edge": e, "u": u, "v": v}
                          for i, (e, (u, v)) in enumerate(zip(self.node_edges, self.twists))],
                "pure_cover": {"generators": list(self.pure_cover_generators),
                               "relations": list(self.pure_cover_relations),
                               "substitution": list(self.pure_cover_substitution)}}


def _pow(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


def universal_deformation_presentation(t: SpinType, genus: int | None = None) -> Presentation:
    g = t.graph.genus() if genus is None else genus
    if g < 2:
        raise GraphError(f"genus {g} < 2")
    n = 3 * g - 3
    if len(t.graph.edges) > n:
        raise GraphError(f"{len(t.graph.edges)} nodes exceed 3g-3 = {n}")
    edges = list(t.twists)
    l = len(edges)
    gens, rels, cover_gens, cover_rels, subst = [], [], [], [], []
    for i, eid in enumerate(edges, start=1):
        u, v = t.twists[eid]
        gens += [f"P{i}", f"Q{i}"]
        rels.append(f"{_pow(f'P{i}', u)} - {_pow(f'Q{i}', v)}")
        cover_gens.append(f"tau{i}")
        cover_rels += [f"p{i} - {_pow(f'tau{i}', v)}", f"q{i} - {_pow(f'tau{i}', u)}"]
        subst.append({"p": _pow(f"tau{i}", v), "q": _pow(f"tau{i}", u)})
    gens += [f"t{i}" for i in range(l + 1, n + 1)]
    return Presentation(g, tuple(gens), tuple(rels), tuple(edges),
                        tuple(t.twists[e] for e in edges),
                        tuple(cover_gens) + tuple(f"t{i}" for i in range(l + 1, n + 1)),
                        tuple(cover_rels), tuple(subst))


# ---------------------------------------------------------------------------
# test corpus


def _canonical_form(genera: Sequence[int], edges: Sequence[tuple[int, int]]) -> tuple:
    best = None
    nv = len(genera)
    for perm in itertools.permutations(range(nv)):
        g = tuple(genera[perm.index(i)] for i in range(nv))
        es = tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in edges))
        key = (g, es)
        if best is None or key < best:
            best = key
    return best


def stable_graphs(max_vertices: int = 4, max_edges: int = 5, max_genus: int = 4,
                  min_genus: int = 2) -> Iterator[tuple[tuple[int, ...], tuple[tuple[int, int], ...]]]:
    """All connected stable graphs up to isomorphism, as ``(genera, edges)``.

    Yields in a deterministic order; ``r`` is attached by the caller.
    """
    seen = set()
    for nv in range(1, max_vertices + 1):
        pairs = [(a, b) for a in range(nv) for b in range(a, nv)]
        for ne in range(0, max_edges + 1):
            if ne < nv - 1:
                continue
            for edges in itertools.combinations_with_replacement(pairs, ne):
                b1 = ne - nv + 1
                if b1 > max_genus:
                    continue
                val = [0] * nv
                for a, b in edges:
                    val[a] += 1
                    val[b] += 1
                budget = max_genus - b1
                ranges = []
                for v in range(nv):
                    lo = 0 if val[v] >= 3 else (1 if val[v] >= 1 else 2)
                    ranges.append(range(lo, budget + 1))
                for genera in itertools.product(*ranges):
                    total = sum(genera) + b1
                    if total < min_genus or total > max_genus:
                        continue
                    probe = StableGraph.build(genera, edges, 1)
                    if len(probe.components()) != 1:
                        continue
                    key = _canonical_form(genera, edges)
                    if key in seen:
                        continue
                    seen.add(key)
                    yield key


def spin_corpus(max_vertices: int = 4, max_edges: int = 5, max_genus: int = 4,
                rs: Sequence[int] = (2, 3, 4, 6)) -> list[StableGraph]:
    """Stable graphs paired with every ``r`` in ``rs`` dividing ``2g - 2``."""
    out = []
    for genera, edges in stable_graphs(max_vertices, max_edges, max_genus):
        g = sum(genera) + len(edges) - len(genera) + 1
        for r in rs:
            if (2 * g - 2) % r == 0:
                out.append(StableGraph.build(genera, edges, r))
    return out
