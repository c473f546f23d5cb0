"""Permutation groups, Cayley-graph diameters and certified word synthesis."""

from .diametry import (BallProfile, DiameterResult, LengthCertificate, diameter, growth,
                       length_bfs, relative_length, worst_case_diameter)
from .errors import CapacityError, DomainError, EvaluationError, GroupDiamError, ParseError
from .group import PermGroup, composition_series, derived_series, identify_factor, normal_closure
from .invariants import bound_report, epsilon, mu_profile, theta
from .perm import GenSet, Permutation, Word, classify_action, evaluate, orbit_partition, parse_cycles
from .synth import (CertifiedGenSet, derived_tower, direct_product_solve, milnor_stabilize,
                    schreier_generators, socle_cascade, soluble_solve)

__version__ = "0.1.0"

__all__ = [
    "BallProfile", "CapacityError", "CertifiedGenSet", "DiameterResult", "DomainError",
    "EvaluationError", "GenSet", "GroupDiamError", "LengthCertificate", "ParseError",
    "PermGroup", "Permutation", "Word", "bound_report", "classify_action",
    "composition_series", "derived_series", "derived_tower", "diameter", "direct_product_solve",
    "epsilon", "evaluate", "growth", "identify_factor", "length_bfs", "milnor_stabilize",
    "mu_profile", "normal_closure", "orbit_partition", "parse_cycles", "relative_length",
    "schreier_generators", "socle_cascade", "soluble_solve", "theta", "worst_case_diameter",
]
