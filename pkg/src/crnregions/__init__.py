"""Multistationarity regions of small mass-action reaction networks.

Parse reaction networks, classify them for multistationarity, emit exact
semialgebraic descriptions of their multistationarity regions, verify the
regions against a root-counting oracle, and probe region connectivity.
"""

from .classify import ClassificationVerdict, MatchedCase, UnsupportedFamilyError, classify
from .connectivity import ProbeConfig, ProbeReport, connect_witnesses, probe
from .massaction import (
    SteadyStateCount,
    count_positive_steady_states,
    ode_rhs,
    steady_state_system,
)
from .network import (
    NetworkParseError,
    ReactionNetwork,
    conservation_matrix,
    format_network,
    parse_network,
    stoichiometric_matrix,
)
from .regions import (
    ConnectivityVerdict,
    Region,
    SignCondition,
    connectivity_verdict,
    membership,
    project_to_allowing,
    region_to_json,
    regions_for_network,
)

__version__ = "0.1.0"

__all__ = [
    "ClassificationVerdict",
    "ConnectivityVerdict",
    "MatchedCase",
    "NetworkParseError",
    "ProbeConfig",
    "ProbeReport",
    "ReactionNetwork",
    "Region",
    "SignCondition",
    "SteadyStateCount",
    "UnsupportedFamilyError",
    "classify",
    "connect_witnesses",
    "conservation_matrix",
    "connectivity_verdict",
    "count_positive_steady_states",
    "format_network",
    "membership",
    "ode_rhs",
    "parse_network",
    "probe",
    "project_to_allowing",
    "region_to_json",
    "regions_for_network",
    "steady_state_system",
    "stoichiometric_matrix",
    "__version__",
]
