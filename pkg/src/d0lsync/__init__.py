"""Synchronizing delay of D0L-systems through graphs of overhangs."""

from .classify import (
    analyze,
    classify_binary_uniform,
    r_values,
    repetitivity_witness,
    sweep,
    theorem_bound,
)
from .interpretations import enumerate_interpretations, sync_report, z_min
from .language import OVER_CAP, factors_up_to, is_factor, max_power
from .overhangs import (
    build_graph,
    enumerate_overhangs,
    export_dot,
    has_cycle,
    is_circular_code,
    is_code,
    sardinas_patterson,
)
from .walks import components, forbidden_subgraphs, l_max, verify_sandwich
from .words import D0LSystem, Morphism, apply, iterate, parse_morphism

__version__ = "0.1.0"
