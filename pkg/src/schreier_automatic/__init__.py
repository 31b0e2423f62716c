"""Automatic structure and growth of the Schreier graph of (01)^oo under a 3-state automaton group."""

from .automatic import edge_relation_dfa, vertex_dfa, verify_edges, verify_pairs, verify_vertices
from .convolution import PAD, convolve, deconvolve, pairs_language
from .dfa import Dfa, enumerate_language, equivalent, minimize
from .growth import GrowthSeries, diagnostics, growth_series
from .integer_model import build_graph, cross_check, find_correspondence, offsets
from .mealy import GeneratorLetter, MealyMachine, parse_group_word, standard_machine
from .schreier import OmegaSpec, SchreierAction, expand, is_valid_encoding, normalize

__version__ = "0.1.0"
