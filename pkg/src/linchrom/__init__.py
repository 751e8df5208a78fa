"""Linear colourings of grids and pseudogrids: exact oracles and a
constructive search for long paths without a centre.
"""
from .colorings import centre_of, is_centred, is_linear
from .gridcore import GridObject, Pseudogrid, build_pseudogrid, plain_pseudogrid
from .witness.params import PipelineParams, StageError
from .witness.pipeline import build_witness

__version__ = "0.1.0"

__all__ = [
    "GridObject",
    "PipelineParams",
    "Pseudogrid",
    "StageError",
    "build_pseudogrid",
    "build_witness",
    "centre_of",
    "is_centred",
    "is_linear",
    "plain_pseudogrid",
]
