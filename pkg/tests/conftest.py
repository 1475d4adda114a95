from __future__ import annotations

import numpy as np
import pytest

from dessinforge.cayley_trivalent import LabeledCubicGraph, validate_cubic
from dessinforge.group_core import builtin_group, normalize_generators

SMALL_GROUPS = ["cyclic:2", "cyclic:3", "cyclic:4", "cyclic:5", "klein:4",
                   "symmetric:3", "dihedral:4", "quaternion:8"]

# acceptance results, printed once more at the end of the run
ACCEPTANCE_LINES: list[str] = []


def group_and_gens(spec: str):
    G, S = builtin_group(spec)
    return G, normalize_generators(G, S)


def k4() -> LabeledCubicGraph:
    edges = [(0, 1, 1), (2, 3, 1), (0, 2, 2), (1, 3, 2), (0, 3, 3), (1, 2, 3)]
    return LabeledCubicGraph(4, edges)


def cube3() -> LabeledCubicGraph:
    edges = []
    for v in range(8):
        for bit in range(3):
            w = v ^ (1 << bit)
            if v < w:
                edges.append((v, w, bit + 1))
    return LabeledCubicGraph(8, edges)


def _random_matching(rng, n, forbidden):
    for _ in range(200):
        order = rng.permutation(n).tolist()
        pairs = [tuple(sorted(order[k:k + 2])) for k in range(0, n, 2)]
        if not any(p in forbidden for p in pairs):
            return pairs
    return None


def random_cubic_labeled(rng: np.random.Generator, n: int, tries: int = 500) -> LabeledCubicGraph:
    """Union of three pairwise disjoint perfect matchings, labelled 1, 2, 3; connected."""
    for _ in range(tries):
        used: set = set()
        edges = []
        for lab in (1, 2, 3):
            m = _random_matching(rng, n, used)
            if m is None:
                break
            used.update(m)
            edges.extend((u, v, lab) for u, v in m)
        else:
            g = LabeledCubicGraph(n, edges)
            if validate_cubic(g).ok:
                return g
    raise RuntimeError(f"no connected labelled cubic graph on {n} vertices")


def oracle_graphs(count: int = 22, seed: int = 7) -> list[LabeledCubicGraph]:
    rng = np.random.default_rng(seed)
    out = [k4(), cube3()]
    sizes = [4, 6, 8, 10, 12]
    while len(out) < count:
        out.append(random_cubic_labeled(rng, sizes[len(out) % len(sizes)]))
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(0)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
