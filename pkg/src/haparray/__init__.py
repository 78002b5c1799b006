"""Capacity simulator for antenna arrays on high-altitude platforms."""

from .channel import (
    ChannelParams,
    LinkBudget,
    fspl_db,
    link_budget,
    noise_power,
    p_los,
    sample_channel,
    steering_vectors,
)
from .element_gain import GainPattern, element_gain_linear, gain_matrix
from .geometry import (
    Architecture,
    ArrayGeometry,
    ElementPose,
    UserField,
    build_array,
    build_cylindrical,
    build_hemispherical,
    build_hybrid,
    build_rectangular,
)
from .link_rate import (
    PowerAllocation,
    RateReport,
    rate,
    sinr_closed_form,
    sinr_interference_limited,
    sinr_monte_carlo,
    sum_rate_asymptotic,
)
from .power_control import BisectionConfig, MaxMinResult, feasibility, max_min_power
from .selection import InfeasibleSelectionError, SelectionMatrix, select_brute_force, select_greedy

__all__ = [
    "Architecture",
    "ArrayGeometry",
    "BisectionConfig",
    "ChannelParams",
    "ElementPose",
    "GainPattern",
    "InfeasibleSelectionError",
    "LinkBudget",
    "MaxMinResult",
    "PowerAllocation",
    "RateReport",
    "SelectionMatrix",
    "UserField",
    "build_array",
    "build_cylindrical",
    "build_hemispherical",
    "build_hybrid",
    "build_rectangular",
    "element_gain_linear",
    "feasibility",
    "fspl_db",
    "gain_matrix",
    "link_budget",
    "max_min_power",
    "noise_power",
    "p_los",
    "rate",
    "sample_channel",
    "select_brute_force",
    "select_greedy",
    "sinr_closed_form",
    "sinr_interference_limited",
    "sinr_monte_carlo",
    "steering_vectors",
    "sum_rate_asymptotic",
]

__version__ = "0.1.0"
