"""Paths to the small bundled dictionary, frequency list and sample text."""

from importlib import resources

DESK_DICTIONARY = "desk.dict"
DESK_FREQUENCIES = "desk.freq"
SAMPLE_TEXT = "sample.txt"
SAMPLE_GOLD = "sample.gold"
SAMPLE_PARAGRAPHS = "sample.para"


def data_path(name):
    return str(resources.files("lcpseg") / "data" / name)


def desk_resources():
    """Network and significance table built from the bundled desk files."""
    from .lexnet import build_network, read_dictionary
    from .significance import build_table, read_frequencies

    net = build_network(read_dictionary(data_path(DESK_DICTIONARY)))
    table = build_table(read_frequencies(data_path(DESK_FREQUENCIES)))
    return net, table
