"""Dessins as hypermaps, and the per-pants template that builds them.

A dessin is stored as two permutations of its darts (edges of the bipartite
graph): ``black[x]`` is the next dart counter-clockwise around the black end of
``x`` and ``white[x]`` the same around the white end. Faces are the cycles of
``(black o white)^-1``.

Template used by :func:`build_dessin_G`, per edge of the cubic graph with label
``i``: one alternating cycle of ``boundary_len[i]`` darts, shared by the two
pants glued there. Per pants: three seam paths of types 12, 13, 23 joining
designated black vertices on its boundary cycles, and one pendant black leaf
hanging from an interior white vertex of the 12 seam. The two pants sharing a
cycle attach their seams at the same two designated black vertices, which get
the rotation ``(forward, own seam, backward, other seam)``, with "forward"
taken so that the pants is on the left.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .cayley_trivalent import LabeledCubicGraph, VertexTag, EdgeTag, internal_key
from .errors import ConfigInvalid, Disconnected, OrbitError
from .geometry import PantsComplex
from .group_core import FiniteGroup, Subgroup
from .refine import ordered_map, refine, smallest_class

SEAM_TYPES = ((1, 2), (1, 3), (2, 3))


class BoundaryTag(NamedTuple):
    edge: int
    label: int
    pos: int

    def __str__(self):
        return f"B({self.edge},{self.label},{self.pos})"


class SeamTag(NamedTuple):
    pants: int
    kind: tuple
    pos: int

    def __str__(self):
        return f"S({self.pants},{self.kind[0]}{self.kind[1]},{self.pos})"


class PendantTag(NamedTuple):
    pants: int

    def __str__(self):
        return f"P({self.pants})"


class LiftTag(NamedTuple):
    dart: int
    g: int

    def __str__(self):
        return f"L({self.dart},{self.g})"


def cycles(perm: Sequence[int]) -> list[list[int]]:
    seen = [False] * len(perm)
    out = []
    for x in range(len(perm)):
        if not seen[x]:
            c = []
            y = x
            while not seen[y]:
                seen[y] = True
                c.append(y)
                y = perm[y]
            out.append(c)
    return out


def _cycle_lengths(perm: Sequence[int]) -> list[int]:
    lengths = [0] * len(perm)
    for c in cycles(perm):
        for x in c:
            lengths[x] = len(c)
    return lengths


def _check_perm(p: Sequence[int], n: int, name: str) -> None:
    if len(p) != n or sorted(p) != list(range(n)):
        raise ValueError(f"{name} is not a permutation of {n} darts")


@dataclass
class Dessin:
    black: tuple[int, ...]
    white: tuple[int, ...]
    tags: list | None = None
    base_graph: LabeledCubicGraph | None = None
    edge_base: tuple[int, ...] | None = None     # base endpoint of each cubic-graph edge
    parent: tuple[int, ...] | None = None        # dart -> dart of the dessin this was cut from
    config: "PantsTemplateConfig | None" = None
    _tag_index: dict | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.black = tuple(int(x) for x in self.black)
        self.white = tuple(int(x) for x in self.white)
        _check_perm(self.black, len(self.black), "black")
        _check_perm(self.white, len(self.black), "white")

    @property
    def num_darts(self) -> int:
        return len(self.black)

    @property
    def face(self) -> tuple[int, ...]:
        f = [0] * self.num_darts
        for x in range(self.num_darts):
            f[self.black[self.white[x]]] = x
        return tuple(f)

    def black_vertices(self):
        return cycles(self.black)

    def white_vertices(self):
        return cycles(self.white)

    def faces(self):
        return cycles(self.face)

    def is_connected(self) -> bool:
        n = self.num_darts
        if n == 0:
            return False
        seen = [False] * n
        seen[0] = True
        stack = [0]
        count = 1
        while stack:
            x = stack.pop()
            for y in (self.black[x], self.white[x]):
                if not seen[y]:
                    seen[y] = True
                    count += 1
                    stack.append(y)
        return count == n

    def tag_index(self) -> dict:
        if self._tag_index is None:
            self._tag_index = {t: x for x, t in enumerate(self.tags or [])}
        return self._tag_index

    def pendants(self) -> list[int]:
        return [x for x in range(self.num_darts) if self.black[x] == x]

    def to_json(self) -> dict:
        out = {"darts": self.num_darts, "black": list(self.black), "white": list(self.white)}
        if self.tags is not None:
            out["tags"] = [str(t) for t in self.tags]
        return out


@dataclass(frozen=True)
class DessinAutomorphism:
    images: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.images[x]

    def compose(self, other: "DessinAutomorphism") -> "DessinAutomorphism":
        return DessinAutomorphism(tuple(self.images[x] for x in other.images))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def commutes_with(self, d: Dessin) -> bool:
        im = self.images
        return all(im[d.black[x]] == d.black[im[x]] and im[d.white[x]] == d.white[im[x]]
                   for x in range(d.num_darts))


@dataclass(frozen=True)
class PantsTemplateConfig:
    boundary_len: dict = field(default_factory=lambda: {1: 4, 2: 8, 3: 12})
    seam_len: dict = field(default_factory=lambda: {(1, 2): 14, (1, 3): 16, (2, 3): 18})
    pendant_position: int = 1      # which white vertex of the 12 seam, counted from the label-1 end

    @classmethod
    def reduced(cls) -> "PantsTemplateConfig":
        return cls({1: 4, 2: 6, 3: 8}, {(1, 2): 10, (1, 3): 12, (2, 3): 14})

    def validate(self) -> None:
        b = [self.boundary_len.get(i) for i in (1, 2, 3)]
        s = [self.seam_len.get(t) for t in SEAM_TYPES]
        if any(not isinstance(x, int) for x in b + s):
            raise ConfigInvalid("template needs integer lengths for labels 1-3 and seams 12, 13, 23")
        if any(x % 2 or x < 4 for x in b):
            raise ConfigInvalid(f"boundary lengths must be even and >= 4: {b}")
        if any(x % 2 or x < 2 for x in s):
            raise ConfigInvalid(f"seam lengths must be even and >= 2: {s}")
        if len(set(b)) != 3 or len(set(s)) != 3:
            raise ConfigInvalid("boundary lengths and seam lengths must each be pairwise distinct")
        if min(s) <= max(b):
            raise ConfigInvalid("every seam must be longer than every boundary cycle")
        if not 1 <= self.pendant_position <= self.seam_len[(1, 2)] // 2:
            raise ConfigInvalid("pendant position is not an interior white vertex of the 12 seam")

    def to_json(self) -> dict:
        return {"boundary": [self.boundary_len[i] for i in (1, 2, 3)],
                "seams": [self.seam_len[t] for t in SEAM_TYPES],
                "pendant_position": self.pendant_position}


def designated_positions(L: int) -> tuple[int, int]:
    """Cycle positions of the two seam attachments on a boundary cycle of length L."""
    return 0, 2 * ((L // 2) // 2)


def _edge_bases(g: LabeledCubicGraph) -> tuple[int, ...]:
    """Pick an endpoint per edge in a way that commutes with left translation.

    With gadget tags the endpoint with the smaller translation-invariant key is
    chosen (the two keys always differ); untagged graphs fall back to vertex ids.
    """
    out = []
    for u, v, _ in g.edges:
        if g.tags is not None and all(isinstance(g.tags[x], (VertexTag, EdgeTag)) for x in (u, v)):
            ku, kv = internal_key(g.tags[u]), internal_key(g.tags[v])
            out.append(u if ku < kv else v)
        else:
            out.append(min(u, v))
    return tuple(out)


def build_dessin_G(pc: PantsComplex, cfg: PantsTemplateConfig | None = None) -> Dessin:
    cfg = cfg or PantsTemplateConfig()
    cfg.validate()
    g = pc.base_graph
    V = g.num_vertices
    bases = _edge_bases(g)
    edge_at = {}                      # (pants, label) -> edge
    for e, (u, v, lab) in enumerate(g.edges):
        edge_at[(u, lab)] = e
        edge_at[(v, lab)] = e

    tags: list = []
    boundary_start = []
    for e, (_, _, lab) in enumerate(g.edges):
        boundary_start.append(len(tags))
        tags.extend(BoundaryTag(e, lab, k) for k in range(cfg.boundary_len[lab]))
    seam_start = {}
    pendant = {}
    for v in range(V):
        for t in SEAM_TYPES:
            seam_start[(v, t)] = len(tags)
            tags.extend(SeamTag(v, t, k) for k in range(cfg.seam_len[t]))
        pendant[v] = len(tags)
        tags.append(PendantTag(v))

    E = len(tags)
    black = list(range(E))
    white = list(range(E))

    def bdart(e, k):
        L = cfg.boundary_len[g.edges[e][2]]
        return boundary_start[e] + k % L

    # boundary cycles: position p even = black, odd = white; dart k joins p=k and p=k+1
    for e, (u, v, lab) in enumerate(g.edges):
        L = cfg.boundary_len[lab]
        for p in range(1, L, 2):
            a, b = bdart(e, p - 1), bdart(e, p)
            white[a], white[b] = b, a
        for p in range(0, L, 2):
            f, b = bdart(e, p), bdart(e, p - 1)
            black[f], black[b] = b, f

    # seams: path vertex k even = black, odd = white; dart k joins k and k+1
    pend_white = 2 * cfg.pendant_position - 1
    for v in range(V):
        for t in SEAM_TYPES:
            L = cfg.seam_len[t]
            s0 = seam_start[(v, t)]
            for k in range(1, L, 2):
                a, b = s0 + k - 1, s0 + k
                if t == (1, 2) and k == pend_white:
                    p = pendant[v]
                    white[a], white[b], white[p] = b, p, a
                else:
                    white[a], white[b] = b, a
            for k in range(2, L, 2):
                a, b = s0 + k - 1, s0 + k
                black[a], black[b] = b, a

    # seam ends at designated black vertices: (forward, base seam, backward, other seam)
    attach: dict = {}
    for v in range(V):
        for t in SEAM_TYPES:
            s0 = seam_start[(v, t)]
            L = cfg.seam_len[t]
            attach.setdefault((edge_at[(v, t[0])], t), {})[v] = s0
            attach.setdefault((edge_at[(v, t[1])], t), {})[v] = s0 + L - 1
    for e, (u, v, lab) in enumerate(g.edges):
        L = cfg.boundary_len[lab]
        kinds = [t for t in SEAM_TYPES if lab in t]
        for t, p in zip(kinds, designated_positions(L)):
            seams = attach[(e, t)]
            base = bases[e]
            other = v if base == u else u
            f, b = bdart(e, p), bdart(e, p - 1)
            s_base, s_other = seams[base], seams[other]
            black[f], black[s_base], black[b], black[s_other] = s_base, b, s_other, f

    return Dessin(tuple(black), tuple(white), tags, g, bases, None, cfg)


def _left_translate_pants(G: FiniteGroup, g: LabeledCubicGraph, v: int, h: int) -> int:
    t = g.tags[v]
    return g.tag_index()[t._replace(g=G.mul(h, t.g))]


def pants_orbit(G: FiniteGroup, g: LabeledCubicGraph, v0: int, elements) -> list[int]:
    return sorted({_left_translate_pants(G, g, v0, h) for h in elements})


def delete_darts(d: Dessin, remove: set[int]) -> Dessin:
    """Sub-dessin without the darts in ``remove``, splicing rotation cycles around them."""
    keep = [x for x in range(d.num_darts) if x not in remove]
    new_id = {x: i for i, x in enumerate(keep)}

    def skip(perm, x):
        y = perm[x]
        while y in remove:
            y = perm[y]
        return new_id[y]

    black = [skip(d.black, x) for x in keep]
    white = [skip(d.white, x) for x in keep]
    tags = [d.tags[x] for x in keep] if d.tags is not None else None
    root = d.parent
    parent = tuple(root[x] for x in keep) if root is not None else tuple(keep)
    return Dessin(tuple(black), tuple(white), tags, d.base_graph, d.edge_base, parent, d.config)


def build_dessin_H(dG: Dessin, G: FiniteGroup, H: Subgroup, v0: int) -> Dessin:
    """Remove the pendants of the pants in ``G.v0`` that are not in ``H.v0``."""
    g = dG.base_graph
    if g is None or g.tags is None:
        raise OrbitError("dessin does not remember a tagged cubic graph")
    if not 0 <= v0 < g.num_vertices:
        raise OrbitError(f"pants {v0} does not exist")
    if not isinstance(g.tags[v0], (VertexTag, EdgeTag)):
        raise OrbitError(f"pants {v0} carries no group coordinate")
    if G.closure(H.elements) != frozenset(H.elements) or any(not 0 <= x < G.order for x in H.elements):
        raise OrbitError("H is not a subgroup of G")
    full = pants_orbit(G, g, v0, G.elements)
    kept = set(pants_orbit(G, g, v0, H.elements))
    index = dG.tag_index()
    remove = set()
    for v in full:
        if v not in kept:
            p = index.get(PendantTag(v))
            if p is None:
                raise OrbitError(f"pants {v} has no pendant to remove")
            remove.add(p)
    return delete_darts(dG, remove)


def dessin_genus(d: Dessin) -> int:
    if not d.is_connected():
        raise Disconnected("hypermap is not connected")
    chi = len(d.black_vertices()) + len(d.white_vertices()) - d.num_darts + len(d.faces())
    return (2 - chi) // 2


def dart_invariants(d: Dessin, rounds: int | None = None) -> np.ndarray:
    b = np.asarray(d.black, dtype=np.int64)
    w = np.asarray(d.white, dtype=np.int64)
    init = np.column_stack([_cycle_lengths(d.black), _cycle_lengths(d.white), _cycle_lengths(d.face)])
    init = np.unique(init, axis=0, return_inverse=True)[1].ravel()
    binv = np.empty_like(b)
    binv[b] = np.arange(len(b))
    winv = np.empty_like(w)
    winv[w] = np.arange(len(w))
    return refine(init, [b, w, binv, winv], rounds)


def _transport(d1: Dessin, d2: Dessin, x0: int, y0: int) -> tuple[int, ...] | None:
    n = d1.num_darts
    b1, w1, b2, w2 = d1.black, d1.white, d2.black, d2.white
    psi = [-1] * n
    used = [False] * d2.num_darts
    psi[x0] = y0
    used[y0] = True
    stack = [x0]
    while stack:
        x = stack.pop()
        y = psi[x]
        for xs, ys in ((b1[x], b2[y]), (w1[x], w2[y])):
            if psi[xs] == -1:
                if used[ys]:
                    return None
                psi[xs] = ys
                used[ys] = True
                stack.append(xs)
            elif psi[xs] != ys:
                return None
    if -1 in psi:
        return None
    return tuple(psi)


def dessin_automorphisms(d: Dessin, rounds: int | None = None) -> list[DessinAutomorphism]:
    """Centraliser of the monodromy group, found by transporting one base dart.

    An automorphism of a connected hypermap is fixed by the image of any dart, so
    each candidate image is extended along both rotations and kept if consistent.
    """
    if not d.is_connected():
        raise Disconnected("hypermap is not connected")
    colors = dart_invariants(d, rounds)
    base, candidates = smallest_class(colors)
    found = ordered_map(lambda y: _transport(d, d, base, y), candidates)
    return [DessinAutomorphism(p) for p in found if p is not None]


def dessin_isomorphism(d1: Dessin, d2: Dessin) -> tuple[int, ...] | None:
    """A dart bijection conjugating both rotations of ``d1`` onto ``d2``, or None."""
    if d1.num_darts != d2.num_darts or not d1.is_connected() or not d2.is_connected():
        return None
    for y in range(d2.num_darts):
        psi = _transport(d1, d2, 0, y)
        if psi is not None:
            return psi
    return None


def is_subdessin(d1: Dessin, d2: Dessin, embedding: Sequence[int]) -> bool:
    """Does ``embedding`` carry ``d1`` onto ``d2`` with missing darts skipped in each rotation?"""
    if len(embedding) != d1.num_darts:
        return False
    image = set(embedding)
    if len(image) != len(embedding) or any(not 0 <= y < d2.num_darts for y in image):
        return False
    for x in range(d1.num_darts):
        for p1, p2 in ((d1.black, d2.black), (d1.white, d2.white)):
            y = p2[embedding[x]]
            while y not in image:
                y = p2[y]
            if y != embedding[p1[x]]:
                return False
    return True


def canonical_inclusion(d1: Dessin, d2: Dessin) -> list[int] | None:
    """Dart map between two dessins cut from the same parent, matched by parent dart."""
    p1 = d1.parent if d1.parent is not None else tuple(range(d1.num_darts))
    p2 = d2.parent if d2.parent is not None else tuple(range(d2.num_darts))
    where = {x: i for i, x in enumerate(p2)}
    try:
        return [where[x] for x in p1]
    except KeyError:
        return None


def induced_dart_map(d: Dessin, vertex_map: Sequence[int]) -> DessinAutomorphism | None:
    """Transport a vertex permutation of the cubic graph to darts through the tags.

    Returns None when some dart has no image in ``d`` (for instance a pendant that
    was deleted). The result is not checked for commuting with the rotations.
    """
    g = d.base_graph
    if g is None or d.tags is None:
        return None
    edge_id = {}
    for e, (u, v, _) in enumerate(g.edges):
        edge_id[(u, v)] = e
        edge_id[(v, u)] = e
    index = d.tag_index()
    images = []
    for t in d.tags:
        if isinstance(t, BoundaryTag):
            u, v, lab = g.edges[t.edge]
            e2 = edge_id.get((vertex_map[u], vertex_map[v]))
            if e2 is None or g.edges[e2][2] != lab:
                return None
            k = t.pos
            if vertex_map[d.edge_base[t.edge]] != d.edge_base[e2]:
                k = (-k - 1) % d.config.boundary_len[lab]
            t2 = BoundaryTag(e2, lab, k)
        elif isinstance(t, SeamTag):
            t2 = SeamTag(vertex_map[t.pants], t.kind, t.pos)
        elif isinstance(t, PendantTag):
            t2 = PendantTag(vertex_map[t.pants])
        else:
            return None
        y = index.get(t2)
        if y is None:
            return None
        images.append(y)
    return DessinAutomorphism(tuple(images))


def explicit_action(d: Dessin, vertex_maps) -> list[DessinAutomorphism | None]:
    return [induced_dart_map(d, m) for m in vertex_maps]


def is_regular(d: Dessin) -> bool:
    """Automorphisms act transitively on darts (hence on edges)."""
    return len(dessin_automorphisms(d)) == d.num_darts


def dessin_from_json(data: dict) -> Dessin:
    n = data["darts"]
    black, white = data["black"], data["white"]
    if len(black) != n or len(white) != n:
        raise ValueError("dart count does not match the permutations")
    return Dessin(tuple(black), tuple(white))


def dessin_from_cycles(n: int, black_cycles, white_cycles, one_based: bool = True) -> Dessin:
    """Build from cycle notation, e.g. ``dessin_from_cycles(3, [[1], [2, 3]], [[1, 2], [3]])``."""
    off = 1 if one_based else 0

    def perm(cs):
        p = list(range(n))
        for c in cs:
            for a, b in zip(c, c[1:] + c[:1]):
                p[a - off] = b - off
        return tuple(p)

    return Dessin(perm(black_cycles), perm(white_cycles))
