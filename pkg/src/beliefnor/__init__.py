"""Belief Noisy-OR gates, evidential networks and two-terminal reliability."""

from .belief import (  # noqa: F401
    MassFunction,
    Subset,
    bel,
    belief_report,
    betp,
    mass_from_bel,
    mass_from_interval,
    pl,
    validate,
)
from .enet import EvidentialNetwork, Node, build, marginal  # noqa: F401
from .gates import ConditionalMassTable, bnor_table, build_table, imnor_table, nor_cpt  # noqa: F401
from .models import (  # noqa: F401
    GateSpec,
    GateVariant,
    ProbabilityInterval,
    ReliabilityNetwork,
    ReliabilityReport,
)
from .parsing import NetworkParseError, dump_network, load_network  # noqa: F401
from .reliability import compare, evaluate, evaluate_bn  # noqa: F401
from .validation import ValidationError  # noqa: F401

__all__ = [
    "MassFunction",
    "Subset",
    "bel",
    "pl",
    "betp",
    "belief_report",
    "mass_from_bel",
    "mass_from_interval",
    "validate",
    "GateSpec",
    "GateVariant",
    "ProbabilityInterval",
    "ConditionalMassTable",
    "nor_cpt",
    "imnor_table",
    "bnor_table",
    "build_table",
    "EvidentialNetwork",
    "Node",
    "build",
    "marginal",
    "ReliabilityNetwork",
    "ReliabilityReport",
    "evaluate",
    "evaluate_bn",
    "compare",
    "NetworkParseError",
    "load_network",
    "dump_network",
    "ValidationError",
]
