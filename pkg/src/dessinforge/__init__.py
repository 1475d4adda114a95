"""Finite groups realised as automorphism groups of labelled cubic graphs,
pants complexes and dessins d'enfants, with every realisation verified."""

from .group_core import FiniteGroup, GeneratorList, Subgroup, builtin_group, normalize_generators, subgroups
from .cayley_trivalent import build_trivalent, cayley_graph, recover_cayley, validate_cubic
from .autgraph import automorphism_group, left_action_embedding
from .geometry import build_pants_complex, find_admissible, hexagon_from, PantsMetric
from .dessin import Dessin, PantsTemplateConfig, build_dessin_G, build_dessin_H, dessin_automorphisms
from .cover import voltage_lift, verify_theorem2

__version__ = "0.1.0"
