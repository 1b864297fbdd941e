"""Finite quasihypermetric spaces: classification, the constant M, Schoenberg
embeddings, maximal strict subspaces, L1 bounds and K(n, r) searches."""
from .classify import Classification, classify, form_verdict, is_quasihypermetric, is_strictly_quasihypermetric
from .embed import PointConfig, angle_classification, circumsphere, config_to_metric, schoenberg_embed
from .generators import gen_box_corners, gen_circle, gen_discrete, gen_star
from .errors import MetricError, NotQuasihypermetricError, NumericalFault, ObtuseConfigurationError
from .knr import knr_lower_bound_search
from .measures import MValue, energy, invariant_measure, m_value, m_value_oracle, potential
from .metric import normalize_diameter, require_metric, validate_metric
from .subspace import maximal_strict_subspace

__all__ = [
    "Classification",
    "MValue",
    "MetricError",
    "NotQuasihypermetricError",
    "NumericalFault",
    "ObtuseConfigurationError",
    "PointConfig",
    "angle_classification",
    "circumsphere",
    "classify",
    "config_to_metric",
    "energy",
    "form_verdict",
    "gen_box_corners",
    "gen_circle",
    "gen_discrete",
    "gen_star",
    "invariant_measure",
    "is_quasihypermetric",
    "is_strictly_quasihypermetric",
    "knr_lower_bound_search",
    "m_value",
    "m_value_oracle",
    "maximal_strict_subspace",
    "normalize_diameter",
    "potential",
    "require_metric",
    "schoenberg_embed",
    "validate_metric",
]
