"""Linking numbers and second Conway coefficients over all constituent
knots and links of piecewise-linear embeddings of complete graphs."""

from .aggregate import (
    Analysis,
    ClassSum,
    VerificationReport,
    class_sum,
    verify_all,
    verify_bounds_and_parities,
    verify_congruences,
    verify_identities,
)
from .diagram import GaussDiagram, LinkDiagram, extract_link_diagram, gauss_diagram
from .generators import moment_curve, random_embedding
from .geometry import (
    PLEmbedding,
    SceneDiagram,
    build_scene_diagram,
    find_generic_direction,
    validate_embedding,
)
from .graph import CyclePair, canonicalize, enumerate_cycles, enumerate_disjoint_pairs
from .invariants import a2, conway_skein_oracle, linking_number, triangle_disk_lk_oracle

__version__ = "0.1.0"
