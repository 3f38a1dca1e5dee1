from .base import SearchSpace
from .delay import DelayModel, parse_delay, parse_duration
from .generators import (
    GenerationError,
    Problem,
    random_explicit_graph,
    random_grid,
    walled_goal_grid,
)
from .graph import ExplicitGraph, walkthrough_graph
from .grid import (
    PRESETS,
    GoalRegion,
    GridConfig,
    GridDomain,
    Primitive,
    eight_connected,
    four_connected,
    lattice18,
    make_grid,
)
from .mapfile import MapFormatError, format_map, load_map, parse_map, save_map

__all__ = [
    "DelayModel",
    "ExplicitGraph",
    "GenerationError",
    "GoalRegion",
    "GridConfig",
    "GridDomain",
    "MapFormatError",
    "PRESETS",
    "Primitive",
    "Problem",
    "SearchSpace",
    "eight_connected",
    "format_map",
    "four_connected",
    "lattice18",
    "load_map",
    "make_grid",
    "parse_delay",
    "parse_duration",
    "parse_map",
    "random_explicit_graph",
    "random_grid",
    "save_map",
    "walkthrough_graph",
    "walled_goal_grid",
]
