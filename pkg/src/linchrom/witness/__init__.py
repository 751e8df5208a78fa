"""The witness pipeline: prune, double every colour, cover, thread a path."""
from .cover import make_disjoint, pick_up_everything
from .packing import packing_census, random_maximal_packing
from .params import PipelineParams, StageError, Telemetry
from .pipeline import WitnessReport, build_witness, format_witness, parse_witness
from .pruning import prune_to_frequent
from .representatives import (
    choose_representatives,
    claiming_round2,
    doubled_colour_set,
    greedy_round1,
)
from .routing import pick_up_two

__all__ = [
    "PipelineParams",
    "StageError",
    "Telemetry",
    "WitnessReport",
    "build_witness",
    "choose_representatives",
    "claiming_round2",
    "doubled_colour_set",
    "format_witness",
    "greedy_round1",
    "make_disjoint",
    "packing_census",
    "parse_witness",
    "pick_up_everything",
    "pick_up_two",
    "prune_to_frequent",
    "random_maximal_packing",
]
