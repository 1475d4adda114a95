"""Regular G-covers of dessins given by voltages on darts.

The lift has darts ``(e, g)`` stored at index ``e*|G| + g``. The black rotation
lifts trivially, ``(e, g) -> (black(e), g)``, so nothing branches over black
vertices; the white rotation picks up the voltage, ``(e, g) -> (white(e),
g*xi(e))``. The deck group acts by ``h.(e, g) = (e, h*g)``.

With exactly one degree-one black vertex downstairs, the lift has exactly
``|G|`` such vertices and they form one free orbit of any automorphism group,
so the automorphisms are precisely the deck transformations.
"""

from __future__ import annotations

from collections import deque
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .dessin import (Dessin, DessinAutomorphism, LiftTag, dessin_automorphisms,
                     dessin_isomorphism)
from .errors import HypothesisFailed, NotFree
from .group_core import FiniteGroup


@dataclass(frozen=True)
class VoltageAssignment:
    xi: tuple[int, ...]

    def to_json(self) -> dict:
        return {"xi": list(self.xi)}


@dataclass
class CoverReport:
    connected: bool
    unique_degree_one_black: bool
    voltages_generate: bool
    deck_order: int
    aut_order: int | None = None
    deck_equals_aut: bool | None = None

    def to_json(self) -> dict:
        return asdict(self)


def _xi(v) -> tuple[int, ...]:
    return tuple(v.xi) if isinstance(v, VoltageAssignment) else tuple(v)


def voltage_lift(base: Dessin, G: FiniteGroup, v: VoltageAssignment | Sequence[int]) -> Dessin:
    xi = _xi(v)
    E, m = base.num_darts, G.order
    if len(xi) != E:
        raise ValueError(f"need one voltage per dart ({E}), got {len(xi)}")
    black = [0] * (E * m)
    white = [0] * (E * m)
    tags = [None] * (E * m)
    for e in range(E):
        be, we, s = base.black[e], base.white[e], xi[e]
        for g in range(m):
            x = e * m + g
            black[x] = be * m + g
            white[x] = we * m + G.mul(g, s)
            tags[x] = LiftTag(e, g)
    return Dessin(tuple(black), tuple(white), tags)


def _voltages_generate(base: Dessin, G: FiniteGroup, xi) -> bool:
    """Closed-walk voltages at dart 0 generate G (spanning-tree potentials)."""
    pot = {0: 0}
    gens = set()
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y, step in ((base.black[x], 0), (base.white[x], xi[x])):
            val = G.mul(pot[x], step)
            if y not in pot:
                pot[y] = val
                queue.append(y)
            else:
                gens.add(G.mul(val, G.inv(pot[y])))
    if len(pot) != base.num_darts:
        return False
    gens.discard(0)
    return G.closure(gens) == frozenset(G.elements)


def admissible(base: Dessin, G: FiniteGroup, v) -> CoverReport:
    xi = _xi(v)
    lift = voltage_lift(base, G, xi)
    return CoverReport(
        connected=lift.is_connected(),
        unique_degree_one_black=len(base.pendants()) == 1,
        voltages_generate=base.is_connected() and _voltages_generate(base, G, xi),
        deck_order=G.order,
    )


def deck_action(lift: Dessin, G: FiniteGroup) -> list[DessinAutomorphism]:
    index = lift.tag_index()
    out = []
    for h in G.elements:
        images = tuple(index[LiftTag(t.dart, G.mul(h, t.g))] for t in lift.tags)
        a = DessinAutomorphism(images)
        if not a.commutes_with(lift):
            raise ValueError(f"left translation by {h} is not a dessin automorphism")
        out.append(a)
    return out


def verify_theorem2(base: Dessin, G: FiniteGroup, v) -> CoverReport:
    """Compute Aut of the lift and compare it with the deck group."""
    report = admissible(base, G, v)
    if not (report.connected and report.unique_degree_one_black):
        raise HypothesisFailed("base needs exactly one degree-one black vertex and a connected lift",
                               report)
    lift = voltage_lift(base, G, v)
    aut = dessin_automorphisms(lift)
    deck = deck_action(lift, G)
    report.aut_order = len(aut)
    report.deck_equals_aut = {a.images for a in aut} == {a.images for a in deck}
    return report


def quotient(d: Dessin, A: Sequence[DessinAutomorphism]) -> Dessin:
    """Dessin on the orbits of a freely acting automorphism group."""
    n = d.num_darts
    for a in A:
        if not a.is_identity() and any(a.images[x] == x for x in range(n)):
            raise NotFree("a non-identity automorphism fixes a dart")
    orbit_id = [-1] * n
    k = 0
    for x in range(n):
        if orbit_id[x] == -1:
            members = {a.images[x] for a in A} | {x}
            if len(members) != max(1, len(A)):
                raise NotFree("orbit size differs from the group order")
            for y in members:
                orbit_id[y] = k
            k += 1
    reps = [None] * k
    for x in range(n):
        if reps[orbit_id[x]] is None:
            reps[orbit_id[x]] = x
    black = tuple(orbit_id[d.black[r]] for r in reps)
    white = tuple(orbit_id[d.white[r]] for r in reps)
    return Dessin(black, white)


def quotient_round_trip(base: Dessin, G: FiniteGroup, v) -> bool:
    lift = voltage_lift(base, G, v)
    return dessin_isomorphism(quotient(lift, deck_action(lift, G)), base) is not None


# --- random instances --------------------------------------------------------

def random_base(rng: np.random.Generator, max_darts: int = 8, fixed_points: int = 1,
                min_darts: int = 1, max_tries: int = 10000) -> Dessin:
    """Connected hypermap whose black rotation has exactly ``fixed_points`` fixed darts."""
    for _ in range(max_tries):
        n = int(rng.integers(max(min_darts, fixed_points), max_darts + 1))
        black = rng.permutation(n)
        if int((black == np.arange(n)).sum()) != fixed_points:
            continue
        white = rng.permutation(n)
        d = Dessin(tuple(black), tuple(white))
        if d.is_connected():
            return d
    raise RuntimeError("could not sample a base dessin")


def random_voltages(rng: np.random.Generator, base: Dessin, G: FiniteGroup,
                    max_tries: int = 10000) -> VoltageAssignment:
    """Uniform voltages, resampled until the lift is connected."""
    for _ in range(max_tries):
        xi = tuple(int(x) for x in rng.integers(0, G.order, base.num_darts))
        if voltage_lift(base, G, xi).is_connected():
            return VoltageAssignment(xi)
    raise RuntimeError("no connected lift found")


def random_admissible_instance(rng: np.random.Generator, G: FiniteGroup, max_darts: int = 8,
                               max_tries: int = 1000):
    """(base, voltages) meeting both hypotheses."""
    for _ in range(max_tries):
        base = random_base(rng, max_darts)
        try:
            return base, random_voltages(rng, base, G, max_tries=200)
        except RuntimeError:
            continue
    raise RuntimeError("no admissible instance found")


def negative_control_search(G: FiniteGroup, rng: np.random.Generator, max_darts: int = 6,
                            tries: int = 2000):
    """Look for a base with two degree-one black vertices whose lift has more than |G| automorphisms.

    Voltages are drawn constant on the orbits of a base automorphism so that it
    has a chance to lift. Returns ``(base, voltages, aut_order)`` or None.
    """
    for _ in range(tries):
        base = random_base(rng, max_darts, fixed_points=2, min_darts=2)
        auts = [a for a in dessin_automorphisms(base) if not a.is_identity()]
        if auts:
            tau = auts[int(rng.integers(len(auts)))]
            xi = [-1] * base.num_darts
            for x in range(base.num_darts):
                if xi[x] == -1:
                    val = int(rng.integers(G.order))
                    y = x
                    while xi[y] == -1:
                        xi[y] = val
                        y = tau.images[y]
        else:
            xi = [int(x) for x in rng.integers(0, G.order, base.num_darts)]
        lift = voltage_lift(base, G, xi)
        if not lift.is_connected():
            continue
        order = len(dessin_automorphisms(lift))
        if order > G.order:
            return base, VoltageAssignment(tuple(xi)), order
    return None
