"""
Semantic network built from dictionary definitions.

Every headword becomes a node.  A headword links to each distinct content
word of its definition that is itself a headword; the link weight is the
token's share of the linking tokens in that definition, so the outgoing
weights of a node sum to one.

build_network(): construct a network from dictionary entries.
read_dictionary(): parse a ``headword<TAB>definition`` file.
save_network() / load_network(): the ``lexnet v1`` text format.
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy import sparse

from ._text import normalize_token, normalize_words, strip_punctuation

log = logging.getLogger(__name__)

FORMAT_HEADER = "lexnet v1"
WEIGHT_SUM_TOL = 1e-9

# Function words that carry no definitional content.  Definitions never link
# to these; they stay nodes if the dictionary defines them.
DEFAULT_STOPWORDS = frozenset("""
a an the of to in on at by for with from into onto as or and but nor so if
than then that this these those which who whom whose what when where while
is are was were be been being am do does did has have had having
it its he him his she her hers they them their we us our you your i me my
not no any some such very also too can could may might must shall should
will would one ones something someone somebody anything everything
esp etc usu eg ie especially usually often sometimes
""".split())


class NetworkFormatError(ValueError):
    """A network or dictionary file does not parse."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class NetworkIntegrityError(ValueError):
    """A parsed network violates a structural invariant."""


@dataclass(frozen=True)
class DictionaryEntry:
    headword: str
    definition: tuple

    def __post_init__(self):
        if not self.headword:
            raise ValueError("dictionary entry with empty headword")
        if any(ch.isspace() for ch in self.headword):
            raise ValueError(f"headword {self.headword!r} contains whitespace")
        object.__setattr__(self, "definition", tuple(self.definition))
        for tok in self.definition:
            if not strip_punctuation(tok).strip():
                raise ValueError(
                    f"definition of {self.headword!r} has punctuation-only token {tok!r}")

    @classmethod
    def from_text(cls, headword, definition):
        """Entry from raw strings, normalised like running text."""
        return cls(normalize_token(headword), tuple(normalize_words(definition)))


@dataclass(frozen=True, eq=False)
class SemanticNetwork:
    """Immutable weighted, directed word graph.

    ``edges[i]`` holds the ``(target_index, weight)`` pairs leaving node ``i``.
    Equality compares words and edges exactly; ``dropped_tokens`` is build
    bookkeeping and does not survive a save/load round trip.
    """

    words: tuple
    edges: tuple
    dropped_tokens: int = field(default=0, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(self.words))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if len(self.edges) != len(self.words):
            raise NetworkIntegrityError("edge lists do not match node count")

    def __eq__(self, other):
        if not isinstance(other, SemanticNetwork):
            return NotImplemented
        return self.words == other.words and self.edges == other.edges

    def __hash__(self):
        return hash((self.words, self.edges))

    def __len__(self):
        return len(self.words)

    def __contains__(self, word):
        return word in self.index

    @property
    def node_count(self):
        return len(self.words)

    @property
    def edge_count(self):
        return sum(len(e) for e in self.edges)

    @cached_property
    def index(self):
        return {w: i for i, w in enumerate(self.words)}

    def node(self, word):
        """Index of ``word``; raises KeyError if absent."""
        return self.index[word]

    def word(self, idx):
        return self.words[idx]

    def successors(self, word):
        """Mapping of target word to weight for the edges leaving ``word``."""
        return {self.words[j]: w for j, w in self.edges[self.index[word]]}

    @cached_property
    def inflow(self):
        """Sparse matrix with ``inflow[n, m]`` = weight of edge m -> n."""
        n = len(self.words)
        rows, cols, vals = [], [], []
        for src, out in enumerate(self.edges):
            for dst, w in out:
                rows.append(dst)
                cols.append(src)
                vals.append(w)
        return sparse.csr_matrix(
            (np.asarray(vals, dtype=float), (np.asarray(rows, dtype=np.int64),
                                             np.asarray(cols, dtype=np.int64))),
            shape=(n, n))

    def check(self):
        """Raise NetworkIntegrityError unless every invariant holds."""
        n = len(self.words)
        if n == 0:
            raise NetworkIntegrityError("network has no nodes")
        if len(self.index) != n:
            seen = Counter(self.words)
            dup = next(w for w, c in seen.items() if c > 1)
            raise NetworkIntegrityError(f"duplicate node word {dup!r}")
        for src, out in enumerate(self.edges):
            targets = set()
            for dst, w in out:
                if not 0 <= dst < n:
                    raise NetworkIntegrityError(
                        f"edge {src} -> {dst} points to an unknown node")
                if dst == src:
                    raise NetworkIntegrityError(f"self-loop on node {src}")
                if dst in targets:
                    raise NetworkIntegrityError(f"repeated edge {src} -> {dst}")
                targets.add(dst)
                if not 0.0 < w <= 1.0:
                    raise NetworkIntegrityError(
                        f"edge {src} -> {dst} has weight {w!r} outside (0, 1]")
            if out:
                total = math.fsum(w for _, w in out)
                if abs(total - 1.0) > WEIGHT_SUM_TOL:
                    raise NetworkIntegrityError(
                        f"outgoing weights of node {src} sum to {total!r}")


def build_network(entries, stopwords=DEFAULT_STOPWORDS):
    """Build the semantic network for ``entries``.

    Args:
        entries: sequence of DictionaryEntry, in the order nodes are indexed.
        stopwords: words never used as link targets.

    Returns:
        SemanticNetwork.  Definition tokens that are neither headwords nor
        stopwords are dropped; their count is in ``dropped_tokens``.
    """
    entries = list(entries)
    if not entries:
        raise ValueError("cannot build a network from an empty entry list")
    index = {}
    for e in entries:
        if e.headword in index:
            raise ValueError(f"duplicate headword {e.headword!r}")
        index[e.headword] = len(index)

    stopwords = frozenset(stopwords)
    dropped = 0
    edges = []
    for e in entries:
        src = index[e.headword]
        counts = Counter()
        for tok in e.definition:
            if tok in stopwords:
                continue
            dst = index.get(tok)
            if dst is None:
                dropped += 1
            elif dst != src:
                counts[dst] += 1
        total = sum(counts.values())
        # Counter keeps first-occurrence order, which keeps builds reproducible.
        edges.append(tuple((dst, c / total) for dst, c in counts.items()))
    if dropped:
        log.warning("dropped %d definition tokens that are not headwords", dropped)
    return SemanticNetwork(tuple(index), tuple(edges), dropped_tokens=dropped)


def read_dictionary(source):
    """Parse dictionary lines ``headword<TAB>definition``.

    ``source`` is a path or an open text file.  Blank lines and lines
    starting with ``#`` are skipped.
    """
    if hasattr(source, "read"):
        return _parse_dictionary(source)
    with open(source, encoding="utf-8") as f:
        return _parse_dictionary(f)


def _parse_dictionary(lines):
    entries = []
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if "\t" not in line:
            raise NetworkFormatError("expected headword<TAB>definition", lineno)
        head, definition = line.split("\t", 1)
        try:
            entries.append(DictionaryEntry.from_text(head, definition))
        except ValueError as exc:
            raise NetworkFormatError(str(exc), lineno) from None
    return entries


def _format_weight(w):
    # 17 significant digits round-trip every double exactly.
    return format(w, "#.17g")


def save_network(net, sink):
    """Write ``net`` in ``lexnet v1`` format to a path or text file."""
    if hasattr(sink, "write"):
        _write_network(net, sink)
    else:
        with open(sink, "w", encoding="utf-8", newline="\n") as f:
            _write_network(net, f)


def _write_network(net, f):
    f.write(f"{FORMAT_HEADER} {len(net.words)}\n")
    for i, w in enumerate(net.words):
        f.write(f"N {i} {w}\n")
    for src, out in enumerate(net.edges):
        for dst, w in out:
            f.write(f"E {src} {dst} {_format_weight(w)}\n")


def load_network(source):
    """Read a ``lexnet v1`` network from a path or text file.

    Raises:
        NetworkFormatError: the text does not parse (message carries the line).
        NetworkIntegrityError: it parses but violates a network invariant.
    """
    if hasattr(source, "read"):
        return _read_network(source)
    with open(source, encoding="utf-8") as f:
        return _read_network(f)


def _read_network(lines):
    it = enumerate(lines, 1)
    try:
        lineno, header = next(it)
    except StopIteration:
        raise NetworkFormatError("empty file", 1) from None
    parts = header.split()
    if len(parts) != 3 or " ".join(parts[:2]) != FORMAT_HEADER:
        raise NetworkFormatError(f"expected '{FORMAT_HEADER} <node-count>'", lineno)
    try:
        count = int(parts[2])
    except ValueError:
        raise NetworkFormatError(f"bad node count {parts[2]!r}", lineno) from None
    if count <= 0:
        raise NetworkFormatError("network must have at least one node", lineno)

    words = []
    edges = [[] for _ in range(count)]
    seen_edge = False
    for lineno, line in it:
        fields = line.split()
        if not fields:
            continue
        kind = fields[0]
        if kind == "N":
            if seen_edge:
                raise NetworkFormatError("node line after edge lines", lineno)
            if len(fields) != 3:
                raise NetworkFormatError("expected 'N <index> <word>'", lineno)
            idx = _parse_int(fields[1], lineno)
            if idx != len(words):
                raise NetworkFormatError(
                    f"node index {idx} out of order, expected {len(words)}", lineno)
            if idx >= count:
                raise NetworkFormatError(f"more nodes than the declared {count}", lineno)
            words.append(fields[2])
        elif kind == "E":
            seen_edge = True
            if len(fields) != 4:
                raise NetworkFormatError("expected 'E <src> <dst> <weight>'", lineno)
            src = _parse_int(fields[1], lineno)
            dst = _parse_int(fields[2], lineno)
            try:
                w = float(fields[3])
            except ValueError:
                raise NetworkFormatError(f"bad weight {fields[3]!r}", lineno) from None
            if not 0 <= src < count or not 0 <= dst < count:
                raise NetworkIntegrityError(
                    f"line {lineno}: edge {src} -> {dst} references an unknown node")
            edges[src].append((dst, w))
        else:
            raise NetworkFormatError(f"unknown record type {kind!r}", lineno)

    if len(words) != count:
        raise NetworkFormatError(f"declared {count} nodes, found {len(words)}")
    net = SemanticNetwork(tuple(words), tuple(tuple(e) for e in edges))
    net.check()
    return net


def _parse_int(s, lineno):
    try:
        return int(s)
    except ValueError:
        raise NetworkFormatError(f"bad integer {s!r}", lineno) from None
