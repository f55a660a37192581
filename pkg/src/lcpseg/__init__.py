"""Topic segmentation with lexical cohesion profiles.

A text is scored position by position with the cohesiveness of the words
around it, measured by spreading activation on a dictionary-derived
semantic network; segment boundaries sit at the valleys of that profile.
"""

from .activation import ActivationPattern, activate, propagate, similarity
from .evaluation import GoldBoundaries, match_score, paragraph_independence_report
from .lcp import LcpSeries, TokenSequence, WindowSpec, cohesiveness, compute_lcp, tokenize
from .lexnet import (DictionaryEntry, SemanticNetwork, build_network, load_network,
                     read_dictionary, save_network)
from .segmenter import Segmentation, find_valleys, vmp_series
from .significance import SignificanceTable, build_table, significance

__all__ = [
    "ActivationPattern", "activate", "propagate", "similarity",
    "GoldBoundaries", "match_score", "paragraph_independence_report",
    "LcpSeries", "TokenSequence", "WindowSpec", "cohesiveness", "compute_lcp", "tokenize",
    "DictionaryEntry", "SemanticNetwork", "build_network", "load_network",
    "read_dictionary", "save_network",
    "Segmentation", "find_valleys", "vmp_series",
    "SignificanceTable", "build_table", "significance",
]
