"""Label-preserving automorphisms of cubic 3-labelled graphs.

In a connected graph where every vertex has exactly one edge of each label, an
automorphism is pinned down by the image of a single vertex: the image of every
neighbour is forced along its label. :func:`automorphism_group` therefore
transports a base vertex to every compatible candidate and keeps the
consistent extensions.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .cayley_trivalent import (EdgeTag, LabeledCubicGraph, VertexTag, triangles,
                               validate_cubic)
from .errors import PreconditionViolated, TagMismatch, TooLarge
from .group_core import FiniteGroup, GeneratorList
from .refine import ordered_map, refine, smallest_class


@dataclass(frozen=True)
class GraphAutomorphism:
    images: tuple[int, ...]

    def __call__(self, v: int) -> int:
        return self.images[v]

    def compose(self, other: "GraphAutomorphism") -> "GraphAutomorphism":
        """``self after other``."""
        return GraphAutomorphism(tuple(self.images[x] for x in other.images))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def fixed_points(self) -> list[int]:
        return [i for i, x in enumerate(self.images) if i == x]

    def to_json(self) -> dict:
        return {"images": list(self.images)}


@dataclass
class PermGroupOnVertices:
    elements: list[GraphAutomorphism]

    @property
    def order(self) -> int:
        return len(self.elements)

    def as_set(self) -> set[tuple[int, ...]]:
        return {a.images for a in self.elements}

    def acts_freely(self) -> bool:
        return all(a.is_identity() or not a.fixed_points() for a in self.elements)

    def is_closed(self) -> bool:
        s = self.as_set()
        return all(a.compose(b).images in s for a in self.elements for b in self.elements)


def _require_valid(g: LabeledCubicGraph) -> None:
    rep = validate_cubic(g)
    if not rep.ok:
        raise PreconditionViolated(f"graph is not connected, simple, cubic and properly labelled: "
                                   f"{rep.witnesses}")


def _transport(nbr, v0: int, w: int) -> GraphAutomorphism | None:
    n = len(nbr)
    phi = [-1] * n
    used = [False] * n
    phi[v0] = w
    used[w] = True
    queue = deque([v0])
    while queue:
        x = queue.popleft()
        fx = phi[x]
        nx, nfx = nbr[x], nbr[fx]
        for lab in range(3):
            y, z = nx[lab], nfx[lab]
            if phi[y] == -1:
                if used[z]:
                    return None
                phi[y] = z
                used[z] = True
                queue.append(y)
            elif phi[y] != z:
                return None
    if -1 in phi:
        return None
    return GraphAutomorphism(tuple(phi))


def transport_automorphism(g: LabeledCubicGraph, v0: int, w: int) -> GraphAutomorphism | None:
    """The unique label-preserving automorphism sending ``v0`` to ``w``, if any."""
    _require_valid(g)
    return _transport(g.neighbor_table(), v0, w)


def vertex_invariants(g: LabeledCubicGraph, rounds: int | None = None) -> np.ndarray:
    """Automorphism-invariant vertex colours.

    Starts from the distance to the nearest 3-cycle and refines along the three
    labelled neighbour maps.
    """
    nbr = np.asarray(g.neighbor_table(), dtype=np.int64)
    n = g.num_vertices
    dist = np.full(n, -1, dtype=np.int64)
    queue = deque()
    for t in triangles(g):
        for v in t:
            if dist[v] == -1:
                dist[v] = 0
                queue.append(v)
    while queue:
        x = queue.popleft()
        for y in nbr[x]:
            if dist[y] == -1:
                dist[y] = dist[x] + 1
                queue.append(int(y))
    return refine(dist, [nbr[:, 0], nbr[:, 1], nbr[:, 2]], rounds)


def automorphism_group(g: LabeledCubicGraph, rounds: int | None = None) -> PermGroupOnVertices:
    _require_valid(g)
    colors = vertex_invariants(g, rounds)
    base, candidates = smallest_class(colors)
    nbr = g.neighbor_table()
    found = ordered_map(lambda w: _transport(nbr, base, w), candidates)
    return PermGroupOnVertices([a for a in found if a is not None])


def brute_force_automorphisms(g: LabeledCubicGraph, max_vertices: int = 12) -> PermGroupOnVertices:
    """Exhaustive search over vertex bijections (test oracle).

    Bijections are built vertex by vertex and a branch is cut as soon as an
    already-mapped labelled edge has no labelled image; no use is made of the
    one-edge-per-label structure.
    """
    if g.num_vertices > max_vertices:
        raise TooLarge(f"brute force limited to {max_vertices} vertices")
    _require_valid(g)
    n = g.num_vertices
    edge_label = {}
    for u, v, lab in g.edges:
        edge_label[(u, v)] = lab
        edge_label[(v, u)] = lab
    adj = g.adjacency()
    out: list[GraphAutomorphism] = []
    phi = [-1] * n
    used = [False] * n

    def extend(v: int) -> None:
        if v == n:
            out.append(GraphAutomorphism(tuple(phi)))
            return
        for w in range(n):
            if used[w]:
                continue
            ok = True
            for u, lab in adj[v]:
                if u < v and edge_label.get((phi[u], w)) != lab:
                    ok = False
                    break
            if ok:
                phi[v] = w
                used[w] = True
                extend(v + 1)
                used[w] = False
                phi[v] = -1

    extend(0)
    # every edge is checked once both ends are mapped, and the map is a bijection on a
    # finite graph with equally many edges, so edge images cover the edge set
    return PermGroupOnVertices(out)


def left_action_embedding(G: FiniteGroup, gens: GeneratorList, g: LabeledCubicGraph) -> list[GraphAutomorphism]:
    """Left translation ``x -> h*x`` on the group coordinate of every tag, one per ``h``."""
    if g.tags is None or any(not isinstance(t, (VertexTag, EdgeTag)) for t in g.tags):
        raise TagMismatch("graph carries no gadget provenance tags")
    index = g.tag_index()
    out = []
    for h in G.elements:
        images = []
        for t in g.tags:
            try:
                images.append(index[t._replace(g=G.mul(h, t.g))])
            except KeyError as exc:
                raise TagMismatch(f"no vertex tagged like the image of {t}") from exc
        out.append(GraphAutomorphism(tuple(images)))
    return out


def embedding_is_homomorphism(G: FiniteGroup, embedding: list[GraphAutomorphism]) -> bool:
    for a in G.elements:
        for b in G.elements:
            if embedding[a].compose(embedding[b]) != embedding[G.mul(a, b)]:
                return False
    return len({e.images for e in embedding}) == G.order


def group_report(G: FiniteGroup, gens: GeneratorList, g: LabeledCubicGraph) -> dict:
    aut = automorphism_group(g)
    emb = left_action_embedding(G, gens, g)
    return {
        "order": aut.order,
        "free_action": aut.acts_freely(),
        "matches_left_action": aut.as_set() == {e.images for e in emb}
        and embedding_is_homomorphism(G, emb),
    }
