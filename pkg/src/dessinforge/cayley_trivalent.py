"""Cayley digraphs and their expansion into cubic 3-labelled graphs.

Every group element becomes a ``2n``-cycle of in/out ports (the vertex gadget)
and every Cayley arc of label ``i`` becomes a rigid edge gadget whose ladder has
``N + i`` square faces, ``N = n + 2``. The gadgets can be decoded again, which
is how :func:`recover_cayley` rebuilds the Cayley digraph from the cubic graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, NamedTuple, Sequence

from .errors import NotInGrammar, TooLarge, TrivialGroup
from .group_core import FiniteGroup, GeneratorList


@dataclass
class LabeledDigraph:
    vertices: list
    arcs: list[tuple]          # (src, dst, label), label in 1..n
    truncated: bool = False

    def out_arcs(self) -> dict:
        out = {}
        for s, d, lab in self.arcs:
            out.setdefault(s, {})[lab] = d
        return out


class VertexTag(NamedTuple):
    g: int
    i: int          # generator position, 1..n
    side: str       # "in" or "out"

    def __str__(self):
        return f"V({self.g},{self.i},{self.side})"


class EdgeTag(NamedTuple):
    g: int          # source element of the Cayley arc
    i: int          # label of the arc
    pos: int        # position inside the gadget

    def __str__(self):
        return f"E({self.g},{self.i},{self.pos})"


def internal_key(tag) -> tuple:
    """The tag with its group coordinate dropped; invariant under left translation."""
    if isinstance(tag, VertexTag):
        return (0, tag.i, tag.side, 0)
    return (1, tag.i, "", tag.pos)


@dataclass
class LabeledCubicGraph:
    """Undirected edge-labelled graph, meant to be cubic with a proper 3-labelling.

    Instances that violate this are still representable so that
    :func:`validate_cubic` can report on them.
    """

    num_vertices: int
    edges: list[tuple[int, int, int]]     # (u, v, label)
    tags: list | None = None
    ladder_constant: int | None = None
    generator_count: int | None = None
    _nbr: list | None = field(default=None, repr=False, compare=False)

    @property
    def vertices(self) -> range:
        return range(self.num_vertices)

    def adjacency(self) -> list[list[tuple[int, int]]]:
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.num_vertices)]
        for u, v, lab in self.edges:
            adj[u].append((v, lab))
            if u != v:
                adj[v].append((u, lab))
        return adj

    def neighbor_table(self) -> list[tuple[int, int, int]]:
        """``nbr[v][l-1]`` is the neighbour of ``v`` along label ``l``.

        Only meaningful once :func:`validate_cubic` passes.
        """
        if self._nbr is None:
            nbr = [[-1, -1, -1] for _ in range(self.num_vertices)]
            for u, v, lab in self.edges:
                nbr[u][lab - 1] = v
                nbr[v][lab - 1] = u
            self._nbr = [tuple(r) for r in nbr]
        return self._nbr

    def tag_index(self) -> dict:
        if self.tags is None:
            return {}
        return {t: v for v, t in enumerate(self.tags)}


@dataclass
class ValidationReport:
    cubic: bool
    simple: bool
    properly_labeled: bool
    connected: bool
    witnesses: dict

    @property
    def ok(self) -> bool:
        return self.cubic and self.simple and self.properly_labeled and self.connected

    def to_json(self) -> dict:
        return {
            "cubic": self.cubic,
            "simple": self.simple,
            "properly_labeled": self.properly_labeled,
            "connected": self.connected,
            "witnesses": {k: v for k, v in sorted(self.witnesses.items())},
        }


# --- Cayley graphs -----------------------------------------------------------

def cayley_graph(G: FiniteGroup, gens: GeneratorList) -> LabeledDigraph:
    arcs = [(g, G.mul(g, s), i) for g in G.elements for i, s in enumerate(gens, start=1)]
    return LabeledDigraph(list(G.elements), arcs)


def cayley_ball(gens: Sequence, multiply: Callable, inverse: Callable, identity: Hashable,
                radius: int, max_vertices: int = 5000) -> LabeledDigraph:
    """Induced labelled digraph on the ball of words of length <= radius.

    ``gens`` is the (padded) generator list, ``multiply(x, s)`` the right
    multiplication oracle and ``inverse(s)`` the inverse of a generator. The
    result is flagged truncated; nothing is claimed about its automorphisms.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    letters = []
    for s in gens:
        for t in (s, inverse(s)):
            if t not in letters:
                letters.append(t)
    order = [identity]
    dist = {identity: 0}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        if dist[x] == radius:
            continue
        for t in letters:
            y = multiply(x, t)
            if y not in dist:
                if len(order) >= max_vertices:
                    raise TooLarge(f"ball exceeds {max_vertices} vertices")
                dist[y] = dist[x] + 1
                order.append(y)
                queue.append(y)
    arcs = []
    for x in order:
        for i, s in enumerate(gens, start=1):
            y = multiply(x, s)
            if y in dist:
                arcs.append((x, y, i))
    return LabeledDigraph(order, arcs, truncated=True)


def integer_oracle():
    """Z with generator 1: ``(multiply, inverse, identity, generator)``."""
    return (lambda x, s: x + s), (lambda s: -s), 0, 1


def free_group_oracle(rank: int):
    """Free group on ``rank`` letters with reduced words as tuples of (letter, +-1)."""
    def multiply(word, letter):
        if word and word[-1] == (letter[0], -letter[1]):
            return word[:-1]
        return word + (letter,)

    def inverse(letter):
        return (letter[0], -letter[1])

    gens = [(k, 1) for k in range(rank)]
    return multiply, inverse, (), gens


# --- gadget expansion --------------------------------------------------------

def _vertex_gadget_edges(n: int) -> list[tuple[int, int, str, str, int]]:
    """Edges of one vertex gadget as ``(i, j, side_i, side_j, label)`` on ports 1..n."""
    out = []
    for side in ("in", "out"):
        for i in range(1, n):
            out.append((i, i + 1, side, side, 2 if i % 2 == 1 else 1))
    out.append((1, 1, "in", "out", 1))
    out.append((n, n, "in", "out", 1 if n % 2 == 0 else 2))
    return out


def edge_gadget_size(N: int, i: int) -> int:
    return 2 * (N + i) + 8


def _edge_gadget_edges(N: int, i: int) -> list[tuple[int, int, int]]:
    """Internal edges of an edge gadget on positions ``0..size-1``.

    Layout: 0 = attachment to the out port; 1, 2 = the shared pair of the double
    triangle; 3 = tip of the double triangle; 4 = apex of the first ladder
    triangle; then rung pairs (top, bottom) = (5 + 2k, 6 + 2k) for
    k = 0..R-1 with R = N + i + 1 rungs; last = apex of the closing triangle,
    attached to the in port.
    """
    R = N + i + 1
    last = edge_gadget_size(N, i) - 1
    E = [
        (0, 1, 1), (0, 2, 2), (1, 2, 3),
        (1, 3, 2), (2, 3, 1),
        (3, 4, 3),
        (4, 5, 1), (4, 6, 2),
    ]
    for k in range(R):
        top, bot = 5 + 2 * k, 6 + 2 * k
        E.append((top, bot, 3))
        if k + 1 < R:
            rail = 2 if k % 2 == 0 else 1
            E.append((top, top + 2, rail))
            E.append((bot, bot + 2, 3 - rail))
    top, bot = 5 + 2 * (R - 1), 6 + 2 * (R - 1)
    # label of the last rail step reaching the final top vertex
    top_used = 2 if (R - 2) % 2 == 0 else 1
    E.append((top, last, 3 - top_used))
    E.append((bot, last, top_used))
    return E


def build_trivalent(G: FiniteGroup, gens: GeneratorList) -> LabeledCubicGraph:
    """Replace vertices and arcs of Cay(G, gens) by their gadgets.

    Vertex ids are assigned arithmetically: vertex gadgets first
    (``g*2n + side*n + i-1``), then edge gadgets in arc order ``(g, i)``.
    """
    if G.order == 1:
        raise TrivialGroup("the construction needs a non-trivial group")
    n = len(gens)
    N = n + 2
    m = G.order

    def port(g, i, side):
        return g * 2 * n + (0 if side == "in" else n) + (i - 1)

    sizes = [edge_gadget_size(N, i) for i in range(1, n + 1)]
    per_element = sum(sizes)
    prefix = [0]
    for s in sizes:
        prefix.append(prefix[-1] + s)
    base = m * 2 * n

    def gadget_offset(g, i):
        return base + g * per_element + prefix[i - 1]

    total = base + m * per_element
    tags: list = [None] * total
    edges: list[tuple[int, int, int]] = []

    vedges = _vertex_gadget_edges(n)
    for g in G.elements:
        for i in range(1, n + 1):
            for side in ("in", "out"):
                tags[port(g, i, side)] = VertexTag(g, i, side)
        for i, j, si, sj, lab in vedges:
            edges.append((port(g, i, si), port(g, j, sj), lab))

    gadget_edges = {i: _edge_gadget_edges(N, i) for i in range(1, n + 1)}
    for g in G.elements:
        for i, s in enumerate(gens, start=1):
            off = gadget_offset(g, i)
            size = sizes[i - 1]
            for pos in range(size):
                tags[off + pos] = EdgeTag(g, i, pos)
            for a, b, lab in gadget_edges[i]:
                edges.append((off + a, off + b, lab))
            edges.append((port(g, i, "out"), off, 3))
            edges.append((off + size - 1, port(G.mul(g, s), i, "in"), 3))

    return LabeledCubicGraph(total, edges, tags, ladder_constant=N, generator_count=n)


# --- validation --------------------------------------------------------------

def validate_cubic(g: LabeledCubicGraph) -> ValidationReport:
    w: dict = {}
    adj = g.adjacency()
    degree_bad = [v for v in g.vertices if len(adj[v]) != 3]
    cubic = not degree_bad
    if degree_bad:
        v = degree_bad[0]
        w["cubic"] = {"vertex": v, "degree": len(adj[v])}

    simple = True
    seen_pairs = set()
    for u, v, lab in g.edges:
        if u == v:
            simple = False
            w["simple"] = {"loop": u}
            break
        key = (min(u, v), max(u, v))
        if key in seen_pairs:
            simple = False
            w["simple"] = {"parallel": list(key)}
            break
        seen_pairs.add(key)

    proper = True
    for v in g.vertices:
        labels = [lab for _, lab in adj[v]]
        if any(lab not in (1, 2, 3) for lab in labels) or len(set(labels)) != len(labels):
            proper = False
            w["properly_labeled"] = {"vertex": v, "labels": sorted(labels)}
            break

    connected = True
    if g.num_vertices:
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for y, _ in adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        if len(seen) != g.num_vertices:
            connected = False
            w["connected"] = {"unreached": min(set(g.vertices) - seen)}
    return ValidationReport(cubic, simple, proper, connected, w)


# --- structure helpers -------------------------------------------------------

def triangles(g: LabeledCubicGraph) -> list[tuple[int, int, int]]:
    adj = [set(y for y, _ in row) for row in g.adjacency()]
    out = set()
    for u in g.vertices:
        for v in adj[u]:
            if v <= u:
                continue
            for w in adj[u] & adj[v]:
                if w > v:
                    out.add((u, v, w))
    return sorted(out)


def _components(vertices: set, adj) -> list[list[int]]:
    comps = []
    left = set(vertices)
    while left:
        start = min(left)
        comp = [start]
        left.discard(start)
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y in left:
                    left.discard(y)
                    comp.append(y)
                    queue.append(y)
        comps.append(sorted(comp))
    return comps


def remnant_components(g: LabeledCubicGraph):
    """Connected components left after deleting every vertex on a 3-cycle."""
    tri = triangles(g)
    on_tri = set(v for t in tri for v in t)
    adj = [[y for y, _ in row] for row in g.adjacency()]
    rest = set(g.vertices) - on_tri
    return tri, on_tri, _components(rest, adj)


def recover_cayley(g: LabeledCubicGraph) -> LabeledDigraph:
    """Decode a gadget graph back into its Cayley digraph.

    Vertices of the result are indices of vertex-gadget components (ordered by
    their smallest vertex id). Raises :class:`NotInGrammar` when the input does
    not follow the gadget grammar.
    """
    rep = validate_cubic(g)
    if not rep.ok:
        raise NotInGrammar(f"not a connected properly 3-labelled cubic graph: {rep.witnesses}")
    tri, on_tri, comps = remnant_components(g)
    if not comps:
        raise NotInGrammar("no components survive 3-cycle removal")
    smallest = min(len(c) for c in comps)
    if smallest % 2:
        raise NotInGrammar(f"smallest remnant has odd size {smallest}")
    n = smallest // 2
    N = n + 2
    nbr = g.neighbor_table()
    adj = [set(y for y, _ in row) for row in g.adjacency()]

    comp_of = {}
    vertex_comps = [c for c in comps if len(c) == 2 * n]
    ladder_comps = [c for c in comps if len(c) != 2 * n]
    for k, c in enumerate(vertex_comps):
        for v in c:
            comp_of[v] = k

    tri_sets = [frozenset(t) for t in tri]
    tris_at: dict[int, list[frozenset]] = {}
    for t in tri_sets:
        for v in t:
            tris_at.setdefault(v, []).append(t)

    arcs = []
    for frag in ladder_comps:
        fset = set(frag)
        boundary = sorted({y for x in frag for y in adj[x] if y not in fset})
        if len(boundary) != 4 or any(y not in on_tri for y in boundary):
            raise NotInGrammar(f"ladder fragment at {frag[0]} has unexpected boundary {boundary}")
        ends = []
        for y in boundary:
            t = [t for t in tris_at[y] if not (t & fset)]
            if len(t) != 1:
                raise NotInGrammar(f"vertex {y} is not on exactly one end triangle")
            ends.append(t[0])
        ends = sorted(set(ends), key=min)
        if len(ends) != 2:
            raise NotInGrammar(f"ladder fragment at {frag[0]} does not join two triangles")
        src = dst = None
        for t in ends:
            apex = [v for v in t if not (adj[v] & fset)]
            if len(apex) != 1:
                raise NotInGrammar(f"end triangle {sorted(t)} has no unique apex")
            a = apex[0]
            out = nbr[a][2]
            if out in comp_of:
                dst = comp_of[out]
                continue
            # source side: bridge into the double triangle, then into an out port
            pair = None
            for t1 in tris_at.get(out, []):
                for t2 in {o for v in t1 for o in tris_at[v]}:
                    if t2 != t1 and len(t1 & t2) == 2:
                        pair = (t1, t2)
            if pair is None:
                raise NotInGrammar(f"apex {a} leads neither to a port nor to a double triangle")
            far = (pair[0] | pair[1]) - (pair[0] & pair[1]) - {out}
            if len(far) != 1:
                raise NotInGrammar(f"malformed double triangle near {out}")
            port = nbr[next(iter(far))][2]
            if port not in comp_of:
                raise NotInGrammar(f"double triangle near {out} is not attached to a vertex gadget")
            src = comp_of[port]
        if src is None or dst is None:
            raise NotInGrammar(f"could not orient ladder fragment at {frag[0]}")
        squares = len(frag) // 2 + 1
        i = squares - N
        if len(frag) % 2 or not 1 <= i <= n:
            raise NotInGrammar(f"ladder with {squares} squares does not encode a label in 1..{n}")
        arcs.append((src, dst, i))

    out = {}
    for s, d, i in arcs:
        if i in out.setdefault(s, {}):
            raise NotInGrammar(f"vertex component {s} has two out-arcs labelled {i}")
        out[s][i] = d
    for k in range(len(vertex_comps)):
        if sorted(out.get(k, {})) != list(range(1, n + 1)):
            raise NotInGrammar(f"vertex component {k} lacks out-arcs for every label")
    arcs.sort()
    return LabeledDigraph(list(range(len(vertex_comps))), arcs)


def digraph_isomorphism(d1: LabeledDigraph, d2: LabeledDigraph) -> dict | None:
    """Label-preserving isomorphism between connected digraphs with one out-arc per label.

    Transports from the first vertex of ``d1`` to each vertex of ``d2``; every arc
    is checked, so a returned map is a genuine isomorphism.
    """
    if len(d1.vertices) != len(d2.vertices) or len(d1.arcs) != len(d2.arcs):
        return None
    out1, out2 = d1.out_arcs(), d2.out_arcs()
    in1: dict = {}
    in2: dict = {}
    for s, d, lab in d1.arcs:
        in1.setdefault(d, {})[lab] = s
    for s, d, lab in d2.arcs:
        in2.setdefault(d, {})[lab] = s
    if not d1.vertices:
        return {}
    v0 = d1.vertices[0]
    for w0 in d2.vertices:
        phi = {v0: w0}
        used = {w0}
        queue = deque([v0])
        ok = True
        while queue and ok:
            x = queue.popleft()
            for table1, table2 in ((out1, out2), (in1, in2)):
                a, b = table1.get(x, {}), table2.get(phi[x], {})
                if a.keys() != b.keys():
                    ok = False
                    break
                for lab, y in a.items():
                    z = b[lab]
                    if y in phi:
                        if phi[y] != z:
                            ok = False
                            break
                    elif z in used:
                        ok = False
                        break
                    else:
                        phi[y] = z
                        used.add(z)
                        queue.append(y)
                if not ok:
                    break
        if ok and len(phi) == len(d1.vertices):
            return phi
    return None
