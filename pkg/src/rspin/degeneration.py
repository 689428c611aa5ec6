"""Limits of r-spin structures along a one-parameter smoothing.

After the base change ``t -> t^r`` a node of order ``n`` (local equation
``xy - t^n``) is resolved by a chain of ``n*r - 1`` exceptional curves.
A line bundle ``L`` with ``L^r = omega(sum a_i X_i)`` is normalized so
that the twisting divisor lives on the chains and has degree ``r`` on at
most one curve per chain; contracting the chains gives the limit spin
type.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Mapping, Sequence

from .artin import ArtinRing
from .graphs import GraphError, SpinType, StableGraph
from .local import EpqModule, SpinMapLocal, make_spin_map


class DegenerationError(ValueError):
    pass


@dataclass(frozen=True)
class NodeFamilyDatum:
    """Node ``edge`` of order ``order`` whose chain has ``e_1 = residue (mod r)``.

    ``start`` is the vertex adjacent to the first exceptional curve; it
    defaults to the edge's first endpoint.
    """

    edge: int
    order: int
    residue: int
    start: int | None = None

    def to_json(self) -> dict:
        out = {"edge": self.edge, "order": self.order, "residue": self.residue}
        if self.start is not None:
            out["start"] = self.start
        return out


def chain_length(n: int, r: int) -> int:
    if n < 1:
        raise DegenerationError("node order must be at least 1")
    return n * r - 1


# ---------------------------------------------------------------------------
# intersection degrees


def _delta(delta: Mapping, i, j) -> int:
    a = delta.get((i, j))
    b = delta.get((j, i))
    if a is not None and b is not None and a != b:
        raise DegenerationError(f"adjacency is not symmetric at {(i, j)}")
    return a if a is not None else (b or 0)


def divisor_degree(a: Mapping[Hashable, int], delta: Mapping[tuple, int], j) -> int:
    """Degree of ``O(sum a_i X_i)`` on ``X_j``: ``-a_j delta_j + sum_i a_i delta_ij``.

    ``delta`` maps pairs of components to their number of intersection
    points; either orientation of a pair may be given.
    """
    comps = set(a)
    for i, k in delta:
        comps.update((i, k))
    missing = comps - set(a)
    if missing:
        raise DegenerationError(f"missing coefficients for {sorted(map(str, missing))}")
    total = 0
    delta_j = 0
    for i in comps:
        if i == j:
            continue
        d = _delta(delta, i, j)
        delta_j += d
        total += a[i] * d
    return total - a[j] * delta_j


@dataclass(frozen=True)
class SemistableFibre:
    """Special fibre after base change and resolution.

    Components are ``("v", vertex)`` for the original components and
    ``("e", edge, i)`` for the ``i``-th curve of the chain over ``edge``,
    counted from the chain's start vertex.
    """

    graph: StableGraph
    orders: Mapping[int, int]
    starts: Mapping[int, int]
    r: int

    @classmethod
    def from_graph(cls, graph: StableGraph, orders: Mapping[int, int] | None = None,
                   starts: Mapping[int, int] | None = None, r: int | None = None
                   ) -> "SemistableFibre":
        r = graph.r if r is None else r
        orders = dict(orders or {})
        starts = dict(starts or {})
        for e in graph.edges:
            orders.setdefault(e.id, 1)
            s = starts.setdefault(e.id, e.ends[0])
            if s not in e.ends:
                raise DegenerationError(f"start vertex {s} is not an endpoint of edge {e.id}")
        return cls(graph, orders, starts, r)

    def chain(self, eid: int) -> list[tuple]:
        return [("e", eid, i) for i in range(1, chain_length(self.orders[eid], self.r) + 1)]

    def chain_ends(self, eid: int) -> tuple[int, int]:
        a, b = self.graph.edge(eid).ends
        s = self.starts[eid]
        return (a, b) if s == a else (b, a)

    @property
    def components(self) -> list[tuple]:
        out = [("v", v) for v in self.graph.vertices]
        for e in self.graph.edges:
            out += self.chain(e.id)
        return out

    def adjacency(self) -> dict[tuple, int]:
        """Intersection counts between distinct components."""
        delta: dict = {}

        def add(i, j):
            if i == j:
                return  # self-intersection of a component, not a meeting point
            key = (i, j) if str(i) <= str(j) else (j, i)
            delta[key] = delta.get(key, 0) + 1

        for e in self.graph.edges:
            s, t = self.chain_ends(e.id)
            path = [("v", s)] + self.chain(e.id) + [("v", t)]
            for i, j in zip(path, path[1:]):
                add(i, j)
        return delta

    def omega_degree(self, comp: tuple) -> int:
        """Degree of the relative dualizing sheaf on ``comp``."""
        if comp[0] == "e":
            return 0
        v = comp[1]
        return 2 * self.graph.genera[v] - 2 + self.graph.valence(v)


@dataclass(frozen=True)
class Reduction:
    c: int
    coefficients: dict
    residues: dict  # edge id -> e_1 mod r


def reduce_nonexceptional(fibre: SemistableFibre, a: Mapping[tuple, int], r: int | None = None
                          ) -> Reduction:
    """Shift ``a`` so every non-exceptional coefficient is 0.

    All non-exceptional coefficients must agree modulo ``r`` (a common
    class ``c``); the fibre divisor ``c * sum X_i`` is subtracted and the
    remaining multiples of ``r`` are absorbed into ``L``.
    """
    r = fibre.r if r is None else r
    verts = [("v", v) for v in fibre.graph.vertices]
    missing = [c for c in fibre.components if c not in a]
    if missing:
        raise DegenerationError(f"missing coefficients for {missing}")
    c = a[verts[0]] % r
    for comp in verts:
        if (a[comp] - c) % r:
            raise DegenerationError(
                f"coefficient {a[comp]} on {comp} is not congruent to {c} mod {r}")
    delta = fibre.adjacency()
    for comp in fibre.components:
        deg = fibre.omega_degree(comp) + divisor_degree(a, delta, comp)
        if deg % r:
            raise DegenerationError(f"omega(sum a_i X_i) has degree {deg} on {comp}, not 0 mod {r}")
    shifted = {comp: (0 if comp[0] == "v" else a[comp] - c) for comp in fibre.components}
    residues = {}
    for e in fibre.graph.edges:
        chain = fibre.chain(e.id)
        if not chain:
            continue
        e1 = shifted[chain[0]] % r
        for i, comp in enumerate(chain, start=1):
            if (shifted[comp] - i * e1) % r:
                raise DegenerationError(f"chain over edge {e.id} breaks e_i = i e_1 mod {r} at {i}")
        residues[e.id] = e1
    return Reduction(c, shifted, residues)


# ---------------------------------------------------------------------------
# chains


@dataclass(frozen=True)
class ChainSolution:
    """Normalized chain coefficients ``e'_1..e'_{nr-1}``; ``m`` is the curve
    of degree ``r`` (``None`` when every degree is 0)."""

    coeffs: tuple[int, ...]
    m: int | None
    degrees: tuple[int, ...]
    r: int
    n: int

    @property
    def e1(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    @property
    def twist(self) -> tuple[int, int] | None:
        """``(u, v)`` at the start / end of the chain, or ``None`` if free."""
        if self.e1 == 0:
            return None
        return -self.e1, self.r + self.e1

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs), "m": self.m, "degrees": list(self.degrees)}


def chain_degrees(coeffs: Sequence[int]) -> tuple[int, ...]:
    """Degrees of ``O(sum e_i E_i)`` along a chain whose end components have coefficient 0."""
    comps = ["C"] + [i for i in range(1, len(coeffs) + 1)] + ["D"]
    a = {"C": 0, "D": 0}
    a.update({i: e for i, e in enumerate(coeffs, start=1)})
    delta = {(x, y): 1 for x, y in zip(comps, comps[1:])}
    return tuple(divisor_degree(a, delta, i) for i in range(1, len(coeffs) + 1))


@lru_cache(maxsize=4096)
def normalize_chain(s0: int, n: int, r: int) -> ChainSolution:
    """Coefficients ``e'_i = i e'_1 + max(0, i - m) r`` with ``e'_1`` the
    representative of ``s0`` in ``(-r, 0]`` and ``m = n (r + e'_1)``."""
    if not 0 <= s0 < r:
        raise DegenerationError(f"residue {s0} not in [0, {r})")
    length = chain_length(n, r)
    e1 = s0 - r if s0 else 0
    if e1 == 0:
        coeffs = (0,) * length
        m = None
    else:
        m = n * (r + e1)
        coeffs = tuple(i * e1 + max(0, i - m) * r for i in range(1, length + 1))
    return ChainSolution(coeffs, m, chain_degrees(coeffs), r, n)


# ---------------------------------------------------------------------------
# assembling the limit


def limit_spin_type(graph: StableGraph, nodes: Sequence[NodeFamilyDatum]) -> SpinType:
    """The spin type obtained by contracting every normalized chain.

    A node with ``e'_1 = 0`` is free; otherwise it gets the twist
    ``(-e'_1, r + e'_1)`` with the first entry on the chain's start vertex.
    """
    r = graph.r
    by_edge = {d.edge: d for d in nodes}
    if len(by_edge) != len(nodes):
        raise DegenerationError("duplicate node data")
    known = {e.id for e in graph.edges}
    if set(by_edge) != known:
        raise DegenerationError(f"node data given for {sorted(by_edge)}, graph has {sorted(known)}")
    twists = {}
    D = {v: 2 * g - 2 for v, g in graph.genera.items()}
    for e in graph.edges:
        a, b = e.ends
        D[a] += 1
        D[b] += 1
        d = by_edge[e.id]
        sol = normalize_chain(d.residue % r, d.order, r)
        tw = sol.twist
        if tw is None:
            continue
        start = a if d.start is None else d.start
        if start not in e.ends:
            raise DegenerationError(f"start vertex {start} is not an endpoint of edge {e.id}")
        tw = tw if start == a else (tw[1], tw[0])
        twists[e.id] = tw
        D[a] -= tw[0]
        D[b] -= tw[1]
    # cheap divisibility screen before building the type
    bad = [vert for vert, deg in D.items() if deg % r]
    if bad:
        raise DegenerationError(f"inconsistent residues: twisted degree not divisible by {r} "
                                f"at vertices {bad}")
    try:
        return SpinType(graph, twists)
    except GraphError as exc:
        raise DegenerationError(f"inconsistent residues: {exc}") from exc


def limit_from_divisor(fibre: SemistableFibre, a: Mapping[tuple, int]) -> SpinType:
    """Full pipeline from a twisting divisor on the resolved fibre."""
    red = reduce_nonexceptional(fibre, a)
    nodes = [NodeFamilyDatum(e.id, fibre.orders[e.id], red.residues.get(e.id, 0),
                             fibre.starts[e.id]) for e in fibre.graph.edges]
    return limit_spin_type(fibre.graph, nodes)


def render_local(u: int, v: int, r: int | None = None, var: str = "tau") -> SpinMapLocal:
    """The induced local map at a pure node: ``p = tau^v``, ``q = tau^u``
    over ``QQ[tau]/(tau^(r+1))``."""
    r = u + v if r is None else r
    ring = ArtinRing([var], [[r + 1]])
    tau = ring.gen(var)
    return make_spin_map(EpqModule(ring, tau ** v, tau ** u), r, u, v)


def family_from_json(data: Mapping) -> tuple[StableGraph, list[NodeFamilyDatum]]:
    graph = StableGraph.from_json(data["graph"])
    if "r" in data and int(data["r"]) != graph.r:
        raise DegenerationError(f"family r = {data['r']} differs from graph r = {graph.r}")
    nodes = [NodeFamilyDatum(int(d["edge"]), int(d.get("order", 1)), int(d["residue"]),
                             None if d.get("start") is None else int(d["start"]))
             for d in data["nodes"]]
    return graph, nodes
