"""Finite groups given by multiplication tables.

Elements are the integers ``0..order-1`` and ``0`` is always the identity.
Groups can be read from a table, generated by permutations, or taken from
the built-in families (``cyclic:n``, ``dihedral:n``, ``symmetric:n``,
``quaternion:8``, ``klein:4``).
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import DoesNotGenerate, IdentityInS, NotAGroup, TooLarge, TrivialGroup

DEFAULT_CLOSURE_BOUND = 5000
DEFAULT_SUBGROUP_BOUND = 64


@dataclass(frozen=True)
class FiniteGroup:
    order: int
    table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] | None = None

    @property
    def identity(self) -> int:
        return 0

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inv(self, g: int) -> int:
        return self._inverses[g]

    @property
    def _inverses(self) -> tuple[int, ...]:
        try:
            return self.__dict__["_inv_cache"]
        except KeyError:
            inv = tuple(row.index(0) for row in self.table)
            object.__setattr__(self, "_inv_cache", inv)
            return inv

    def name(self, g: int) -> str:
        return self.names[g] if self.names else str(g)

    def closure(self, elements: Iterable[int]) -> frozenset[int]:
        """Subgroup generated by ``elements``."""
        gens = sorted(set(elements))
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for s in gens:
                y = self.table[x][s]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.table[x][g]
            k += 1
        return k

    def is_abelian(self) -> bool:
        t = np.asarray(self.table)
        return bool((t == t.T).all())

    def to_json(self) -> dict:
        out = {"order": self.order, "table": [list(r) for r in self.table]}
        if self.names:
            out["names"] = list(self.names)
        return out


@dataclass(frozen=True)
class GeneratorList:
    entries: tuple[int, ...]
    source_set_size: int
    padded: bool

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]


@dataclass(frozen=True)
class Subgroup:
    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return g in self._set

    @property
    def _set(self) -> frozenset[int]:
        try:
            return self.__dict__["_set_cache"]
        except KeyError:
            s = frozenset(self.elements)
            object.__setattr__(self, "_set_cache", s)
            return s

    def issubset(self, other: "Subgroup") -> bool:
        return self._set <= other._set


def _check_latin(t: np.ndarray) -> None:
    m = t.shape[0]
    want = np.arange(m)
    for r in range(m):
        if not np.array_equal(np.sort(t[r]), want):
            raise NotAGroup("latin square (row)", (r,))
    for c in range(m):
        if not np.array_equal(np.sort(t[:, c]), want):
            raise NotAGroup("latin square (column)", (c,))


def group_from_table(table: Sequence[Sequence[int]], names: Sequence[str] | None = None,
                     *, check_associativity: bool = True) -> FiniteGroup:
    """Validate a Cayley table and return the group with identity relabelled to 0.

    Raises :class:`NotAGroup` naming the first violated axiom and a witness.
    """
    try:
        t = np.asarray(table, dtype=np.int64)
    except (ValueError, TypeError) as exc:
        raise NotAGroup("square table", ()) from exc
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise NotAGroup("square table", tuple(t.shape))
    m = t.shape[0]
    bad = np.argwhere((t < 0) | (t >= m))
    if len(bad):
        raise NotAGroup("entries in range", tuple(int(x) for x in bad[0]))
    _check_latin(t)

    ar = np.arange(m)
    candidates = [e for e in range(m) if np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar)]
    if not candidates:
        raise NotAGroup("identity", ())
    e = candidates[0]
    if e != 0:
        p = ar.copy()
        p[0], p[e] = e, 0
        # p is an involution: new id x corresponds to old id p[x]
        t = p[t[np.ix_(p, p)]]
        if names is not None:
            names = [names[int(p[x])] for x in range(m)]

    if check_associativity:
        # (a*b)*c == a*(b*c), vectorised over (b, c) for each a
        for a in range(m):
            lhs = t[t[a]]          # lhs[b, c] = (a*b)*c
            rhs = t[a][t]          # rhs[b, c] = a*(b*c)
            diff = np.argwhere(lhs != rhs)
            if len(diff):
                b, c = (int(x) for x in diff[0])
                raise NotAGroup("associativity", (a, b, c))

    for g in range(m):
        row = t[g]
        h = int(np.nonzero(row == 0)[0][0])
        if t[h, g] != 0:
            raise NotAGroup("two-sided inverse", (g, h))

    return FiniteGroup(
        order=m,
        table=tuple(tuple(int(x) for x in r) for r in t),
        names=tuple(names) if names is not None else None,
    )


def _perm_codes(perms: np.ndarray) -> np.ndarray | None:
    k = perms.shape[1]
    if k > 15:
        return None
    weights = k ** np.arange(k, dtype=np.int64)
    return perms.astype(np.int64) @ weights


def group_from_permutations(gens: Sequence[Sequence[int]], bound: int = DEFAULT_CLOSURE_BOUND,
                            degree: int | None = None):
    """Close a set of permutations (image lists) under composition.

    The product is composition with the right factor applied first,
    ``(g*h)[x] = g[h[x]]``. Elements are numbered in breadth-first order from the
    identity. Returns ``(group, perms)`` where ``perms[g]`` is the permutation of
    element ``g``.
    """
    gens = [tuple(int(x) for x in g) for g in gens]
    if degree is None:
        degree = len(gens[0]) if gens else 0
    for g in gens:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise ValueError(f"not a permutation of 0..{degree - 1}: {g}")
    ident = tuple(range(degree))
    index = {ident: 0}
    perms = [ident]
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = tuple(x[s[i]] for i in range(degree))
            if y not in index:
                if len(perms) >= bound:
                    raise TooLarge(f"closure exceeds {bound} elements")
                index[y] = len(perms)
                perms.append(y)
                queue.append(y)

    m = len(perms)
    P = np.asarray(perms, dtype=np.int64).reshape(m, degree)
    table = np.empty((m, m), dtype=np.int64)
    codes = _perm_codes(P) if degree else np.zeros(m, dtype=np.int64)
    if codes is not None:
        order = np.argsort(codes)
        sorted_codes = codes[order]
        for a in range(m):
            prod = P[a][P] if degree else P
            c = _perm_codes(prod) if degree else np.zeros(m, dtype=np.int64)
            table[a] = order[np.searchsorted(sorted_codes, c)]
    else:
        for a in range(m):
            for b in range(m):
                table[a, b] = index[tuple(P[a][P[b]])]
    group = group_from_table(table, check_associativity=False)
    return group, perms


def subgroups(G: FiniteGroup, bound: int = DEFAULT_SUBGROUP_BOUND) -> list[Subgroup]:
    """All subgroups of ``G``, sorted by order then lexicographically.

    Starts from the cyclic subgroups and joins with cyclic subgroups until no new
    subgroup appears; every subgroup is a join of cyclic ones.
    """
    if G.order > bound:
        raise TooLarge(f"subgroup enumeration limited to order <= {bound}")
    cyclic = {G.closure([g]) for g in G.elements}
    found = set(cyclic)
    frontier = list(found)
    cyc = sorted(cyclic, key=lambda s: (len(s), sorted(s)))
    while frontier:
        nxt = []
        for H in frontier:
            for C in cyc:
                if C <= H:
                    continue
                J = G.closure(H | C)
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    return [Subgroup(tuple(sorted(s))) for s in sorted(found, key=lambda s: (len(s), sorted(s)))]


def normalize_generators(G: FiniteGroup, S: Sequence[int]) -> GeneratorList:
    """Turn a generating set into the list used for the trivalent construction.

    Sets with at most three elements become ``(s1, s1, s1, s1, s2, ...)`` so that
    the list always has more than three entries.
    """
    if G.order == 1:
        raise TrivialGroup("the trivial group has no admissible generating list")
    seen: list[int] = []
    for s in S:
        s = int(s)
        if not 0 <= s < G.order:
            raise DoesNotGenerate(f"element {s} is not in the group")
        if s not in seen:
            seen.append(s)
    if 0 in seen:
        raise IdentityInS("the identity may not be a generator")
    if G.closure(seen) != frozenset(G.elements):
        raise DoesNotGenerate(f"{seen} generates a proper subgroup")
    if len(seen) > 3:
        return GeneratorList(tuple(seen), len(seen), False)
    entries = (seen[0],) * 4 + tuple(seen[1:])
    return GeneratorList(entries, len(seen), True)


def greedy_generators(G: FiniteGroup) -> list[int]:
    """A small generating set: scan elements by decreasing order, keep those that enlarge the span."""
    gens: list[int] = []
    span = frozenset([0])
    for g in sorted(G.elements, key=lambda x: (-G.element_order(x), x)):
        if g not in span:
            gens.append(g)
            span = G.closure(gens)
        if len(span) == G.order:
            break
    return gens


# --- built-in families -----------------------------------------------------

def cyclic(n: int):
    if n < 1:
        raise ValueError("cyclic:n needs n >= 1")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return group_from_table(table), ([1] if n > 1 else [])


def dihedral(n: int):
    """Symmetries of the regular n-gon (order 2n); element k + n*f is r^k s^f."""
    if n < 1:
        raise ValueError("dihedral:n needs n >= 1")

    def mul(x, y):
        k1, f1 = x % n, x // n
        k2, f2 = y % n, y // n
        k = (k1 + (-k2 if f1 else k2)) % n
        return k + n * (f1 ^ f2)

    m = 2 * n
    table = [[mul(a, b) for b in range(m)] for a in range(m)]
    names = [("r%d" % (x % n) if x % n else "e") if x < n else ("s" if x == n else "r%ds" % (x % n))
             for x in range(m)]
    gens = [1, n] if n > 1 else [n]
    return group_from_table(table, names), gens


def symmetric(n: int):
    if n < 1:
        raise ValueError("symmetric:n needs n >= 1")
    if n == 1:
        return group_from_table([[0]]), []
    transposition = [1, 0] + list(range(2, n))
    cycle = list(range(1, n)) + [0]
    gens = [transposition] if n == 2 else [transposition, cycle]
    G, perms = group_from_permutations(gens)
    index = {p: i for i, p in enumerate(perms)}
    return G, [index[tuple(g)] for g in gens]


_Q8_UNITS = {  # unit quaternion products: (u, v) -> (sign, w) with u, v, w in 1, i, j, k
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def quaternion8():
    """Q8 with ids 2u + (sign < 0) for units u = 1, i, j, k."""
    def mul(x, y):
        sx = -1 if x % 2 else 1
        sy = -1 if y % 2 else 1
        s, w = _Q8_UNITS[(x // 2, y // 2)]
        return 2 * w + (1 if sx * sy * s < 0 else 0)

    table = [[mul(a, b) for b in range(8)] for a in range(8)]
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    return group_from_table(table, names), [2, 4]


def klein4():
    table = [[a ^ b for b in range(4)] for a in range(4)]
    return group_from_table(table, ["e", "a", "b", "ab"]), [1, 2]


def builtin_group(spec: str):
    """Resolve ``family:n`` to ``(group, default generators)``."""
    family, _, arg = spec.partition(":")
    family = family.strip().lower()
    try:
        n = int(arg) if arg else None
    except ValueError as exc:
        raise ValueError(f"bad group spec {spec!r}") from exc
    if family == "cyclic" and n is not None:
        return cyclic(n)
    if family == "dihedral" and n is not None:
        return dihedral(n)
    if family == "symmetric" and n is not None:
        return symmetric(n)
    if family == "quaternion" and n in (None, 8):
        return quaternion8()
    if family == "klein" and n in (None, 4):
        return klein4()
    raise ValueError(f"unknown group spec {spec!r}")


def group_from_json(data: dict):
    """Read either the table format or the permutation format."""
    if "table" in data:
        G = group_from_table(data["table"], data.get("names"))
        if "order" in data and data["order"] != G.order:
            raise NotAGroup("declared order", (data["order"], G.order))
        return G, greedy_generators(G)
    if "gens" in data:
        G, perms = group_from_permutations(data["gens"], degree=data.get("degree"))
        index = {p: i for i, p in enumerate(perms)}
        gens = []
        for g in data["gens"]:
            x = index[tuple(g)]
            if x != 0 and x not in gens:
                gens.append(x)
        return G, gens
    raise ValueError("group JSON needs a 'table' or 'gens' key")


def resolve_group(spec: str):
    """Built-in family string or path to a JSON group file."""
    path = Path(spec)
    if spec.endswith(".json") or path.is_file():
        return group_from_json(json.loads(path.read_text()))
    return builtin_group(spec)
