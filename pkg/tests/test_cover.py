from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dessinforge.cover import (VoltageAssignment, admissible, deck_action, negative_control_search,
                               quotient, quotient_round_trip, random_admissible_instance,
                               random_base, verify_theorem2, voltage_lift)
from dessinforge.dessin import Dessin, DessinAutomorphism, dessin_automorphisms, dessin_from_cycles
from dessinforge.errors import HypothesisFailed, NotFree
from dessinforge.group_core import builtin_group

Z2, _ = builtin_group("cyclic:2")


def three_darts():
    return dessin_from_cycles(3, [[1], [2, 3]], [[1, 2], [3]])


def test_small_lift():
    base = three_darts()
    lift = voltage_lift(base, Z2, (1, 0, 1))
    assert lift.num_darts == 6
    assert lift.is_connected()
    assert lift.pendants() == [0, 1]
    # black lifts trivially, white picks up the voltage
    assert lift.black[2] == 4 and lift.white[0] == 3
    report = verify_theorem2(base, Z2, VoltageAssignment((1, 0, 1)))
    assert report.aut_order == 2 and report.deck_equals_aut
    assert quotient_round_trip(base, Z2, (1, 0, 1))


def test_deck_group_commutes():
    G, _ = builtin_group("symmetric:3")
    rng = np.random.default_rng(4)
    base, v = random_admissible_instance(rng, G)
    lift = voltage_lift(base, G, v)
    deck = deck_action(lift, G)
    assert len({a.images for a in deck}) == G.order
    assert all(a.commutes_with(lift) for a in deck)


def test_disconnected_lift_is_rejected():
    base = three_darts()
    report = admissible(base, Z2, (0, 0, 0))
    assert not report.connected and not report.voltages_generate
    with pytest.raises(HypothesisFailed) as exc:
        verify_theorem2(base, Z2, (0, 0, 0))
    assert exc.value.report is report or not exc.value.report.connected


def test_two_pendants_break_the_hypothesis():
    base = dessin_from_cycles(2, [[1], [2]], [[1, 2]])
    with pytest.raises(HypothesisFailed):
        verify_theorem2(base, Z2, (1, 0))


def test_quotient_needs_a_free_action():
    d = Dessin((0, 2, 1), (0, 2, 1))
    swap = DessinAutomorphism((0, 2, 1))
    assert swap.commutes_with(d)
    with pytest.raises(NotFree):
        quotient(d, [DessinAutomorphism((0, 1, 2)), swap])


def test_voltage_length_is_checked():
    with pytest.raises(ValueError):
        voltage_lift(three_darts(), Z2, (1, 0))


@given(st.sampled_from(["cyclic:2", "cyclic:3", "klein:4", "symmetric:3"]), st.integers(0, 10 ** 6))
@settings(max_examples=30, deadline=None)
def test_connectivity_agrees_with_generation(spec, seed):
    G, _ = builtin_group(spec)
    rng = np.random.default_rng(seed)
    base = random_base(rng, 6)
    xi = [int(x) for x in rng.integers(0, G.order, base.num_darts)]
    report = admissible(base, G, xi)
    # lift connectivity (orbit search) and voltage generation (cycle potentials) are separate code paths
    assert report.connected == report.voltages_generate


@given(st.sampled_from(["cyclic:2", "cyclic:3", "klein:4"]), st.integers(0, 10 ** 6))
@settings(max_examples=25, deadline=None)
def test_random_admissible_lifts_are_rigid(spec, seed):
    G, _ = builtin_group(spec)
    base, v = random_admissible_instance(np.random.default_rng(seed), G)
    assert len(base.pendants()) == 1
    report = verify_theorem2(base, G, v)
    assert report.aut_order == G.order and report.deck_equals_aut
    assert quotient_round_trip(base, G, v)


def test_random_base_has_the_requested_fixed_points(rng):
    for k in (1, 2):
        d = random_base(rng, 7, fixed_points=k, min_darts=k)
        assert len(d.pendants()) == k and d.is_connected()


def test_negative_control_exists_for_z2():
    found = negative_control_search(Z2, np.random.default_rng(1))
    assert found is not None
    base, v, order = found
    assert len(base.pendants()) == 2
    assert order > 2 == Z2.order
    assert len(dessin_automorphisms(voltage_lift(base, Z2, v))) == order


def _cycle_with(perm, x):
    c = [x]
    while perm[c[-1]] != x:
        c.append(perm[c[-1]])
    return c


@given(st.sampled_from(["cyclic:4", "klein:4", "symmetric:3"]), st.integers(0, 10 ** 6))
@settings(max_examples=30, deadline=None)
def test_lift_cycle_structure(spec, seed):
    G, _ = builtin_group(spec)
    rng = np.random.default_rng(seed)
    base = random_base(rng, 6)
    xi = [int(x) for x in rng.integers(0, G.order, base.num_darts)]
    lift = voltage_lift(base, G, xi)
    m = G.order
    assert lift.num_darts == m * base.num_darts
    for e in range(base.num_darts):
        # unbranched over black vertices
        assert len(_cycle_with(lift.black, e * m)) == len(_cycle_with(base.black, e))
        # over white vertices the length multiplies by the order of the accumulated voltage
        acc = 0
        for y in _cycle_with(base.white, e):
            acc = G.mul(acc, xi[y])
        got = len(_cycle_with(lift.white, e * m))
        assert got == len(_cycle_with(base.white, e)) * G.element_order(acc)


def test_triangle_quotient():
    tri = dessin_from_cycles(3, [[1, 2, 3]], [[1, 2, 3]])
    q = quotient(tri, dessin_automorphisms(tri))
    assert q.num_darts == 1
