"""Fully dynamic approximate maximum matching via a maintained EDCS."""

from .edcs import EdcsInvariantError, EdcsMaintainer, EdcsParams
from .graph import (ChangeSet, DuplicateEdge, DynamicGraph, GraphError, HChange, Kind,
                    MissingEdge, ParseError, SelfLoop, UpdateEvent, VertexOutOfRange,
                    edge, format_stream, load_stream, parse_stream)
from .lazy import CalibratedParams, InvalidEps, LazyEdcs, calibrate
from .matching import MatchingLayer, static_max_matching
from .oracle import (max_matching_blossom, max_matching_bruteforce, max_matching_size,
                     verify_edcs, verify_sparsifier_ratio)
from .pipeline import CheckFailure, RunConfig, run
from .sparsifier import Sparsifier, SparsifierConfig
from .streams import InvalidParams, generate_stream

__all__ = [
    "CalibratedParams", "ChangeSet", "CheckFailure", "DuplicateEdge", "DynamicGraph",
    "EdcsInvariantError", "EdcsMaintainer", "EdcsParams", "GraphError", "HChange",
    "InvalidEps", "InvalidParams", "Kind", "LazyEdcs", "MatchingLayer", "MissingEdge",
    "ParseError", "RunConfig", "SelfLoop", "Sparsifier", "SparsifierConfig",
    "UpdateEvent", "VertexOutOfRange", "calibrate", "edge", "format_stream",
    "generate_stream", "load_stream", "max_matching_blossom", "max_matching_bruteforce",
    "max_matching_size", "parse_stream", "run", "static_max_matching", "verify_edcs",
    "verify_sparsifier_ratio",
]
