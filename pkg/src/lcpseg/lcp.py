"""
Lexical cohesion profile of a token sequence.

The window around position i covers tokens l..r (1-based, clamped to the
text).  Each token in it gets a shape weight from its offset to i, and
g(w) = weight * s(w).  Seeding every window token with g(w)**2 / sum(g)
and propagating gives the window's pattern P; the cohesiveness is
sum(g(w) * a(P, w)) over the window tokens.  With the rectangular shape
the weights are all 1 and this is the plain s-weighted form.
"""

import json
import logging
import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._text import normalize_words
from .activation import DEFAULT_DAMPING, DEFAULT_STEPS, check_params, propagate

log = logging.getLogger(__name__)

SHAPES = ("rectangular", "triangle", "hanning")
SHAPE_ALIASES = {"rect": "rectangular", "rectangle": "rectangular",
                 "tri": "triangle", "triangular": "triangle",
                 "hann": "hanning", "hanning": "hanning",
                 "rectangular": "rectangular", "triangle": "triangle"}
DEFAULT_SHAPE = "hanning"
DEFAULT_DELTA = 25

_BATCH = 256
_PARAGRAPH_BREAK = re.compile(r"\n[ \t\r\f\v]*\n")


@dataclass(frozen=True)
class TokenSequence:
    tokens: tuple
    paragraph_gaps: tuple = ()

    def __len__(self):
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __getitem__(self, i):
        return self.tokens[i]


@dataclass(frozen=True)
class WindowSpec:
    shape: str = DEFAULT_SHAPE
    delta: int = DEFAULT_DELTA

    def __post_init__(self):
        shape = SHAPE_ALIASES.get(self.shape)
        if shape is None:
            raise ValueError(f"unknown window shape {self.shape!r}")
        object.__setattr__(self, "shape", shape)
        if int(self.delta) != self.delta or self.delta < 1:
            raise ValueError(f"window half-width must be a positive integer, got {self.delta!r}")

    def weights(self):
        """Weights for offsets -delta..delta."""
        return np.array([window_weight(self.shape, k, self.delta)
                         for k in range(-self.delta, self.delta + 1)])


@dataclass(frozen=True)
class LcpSeries:
    values: np.ndarray
    tokens: tuple = ()
    window: WindowSpec = field(default_factory=WindowSpec)
    empty_windows: int = 0

    def __len__(self):
        return len(self.values)

    def write_tsv(self, path):
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write("position\ttoken\tc\n")
            for i, (tok, c) in enumerate(zip(self.tokens, self.values), 1):
                f.write(f"{i}\t{tok}\t{float(c)!r}\n")

    def to_json(self):
        return json.dumps([float(c) for c in self.values])


def tokenize(text):
    """Split ``text`` into case-folded, punctuation-free tokens.

    Blank-line paragraph breaks are kept as gap positions (a gap g sits
    between tokens g and g+1) but have no effect on the tokens.
    """
    tokens = []
    gaps = []
    for para in _PARAGRAPH_BREAK.split(text):
        words = normalize_words(para)
        if not words:
            continue
        if tokens:
            gaps.append(len(tokens))
        tokens.extend(words)
    return TokenSequence(tuple(tokens), tuple(gaps))


def window_bounds(i, delta, n):
    """1-based inclusive bounds ``(l, r)`` of the window centred on ``i``."""
    if not 1 <= i <= n:
        raise IndexError(f"position {i} outside 1..{n}")
    l = 1 if i <= delta else i - delta
    r = n if i > n - delta else i + delta
    return l, r


def window_weight(shape, k, delta):
    """Weight of the token at offset ``k`` from the window centre."""
    if abs(k) > delta:
        raise ValueError(f"offset {k} outside window of half-width {delta}")
    shape = SHAPE_ALIASES.get(shape, shape)
    if shape == "rectangular":
        return 1.0
    if shape == "triangle":
        return 1.0 - abs(k) / delta
    if shape == "hanning":
        return 0.5 * (1.0 + math.cos(math.pi * k / delta))
    raise ValueError(f"unknown window shape {shape!r}")


def _window_columns(net, table, windows, steps, damping):
    """Cohesiveness of each window, propagated as one batch.

    ``windows`` holds ``(node_indices, g)`` array pairs, one per window.
    Windows with no positive g come back as 0.
    """
    seeds = np.zeros((net.node_count, len(windows)))
    live = []
    for b, (nodes, g) in enumerate(windows):
        total = math.fsum(g)
        if total > 0.0:
            np.add.at(seeds[:, b], nodes, g * g / total)
            live.append(b)
    out = np.zeros(len(windows))
    if not live:
        return out
    act = propagate(net, seeds[:, live], steps, damping)
    for col, b in enumerate(live):
        nodes, g = windows[b]
        out[b] = math.fsum(g * act[nodes, col])
    return out


def cohesiveness(net, table, window_words, steps=DEFAULT_STEPS, damping=DEFAULT_DAMPING):
    """Cohesiveness of a window given as ``(word, window_weight)`` pairs.

    Words outside the network are ignored.  Returns 0 (with a logged
    warning) when no word of the window is in the network.
    """
    check_params(steps, damping)
    nodes, g = [], []
    for word, weight in window_words:
        idx = net.index.get(word)
        if idx is None:
            continue
        nodes.append(idx)
        g.append(weight * table[word])
    if not nodes:
        log.warning("no window word is in the network")
        return 0.0
    return float(_window_columns(
        net, table, [(np.array(nodes), np.array(g))], steps, damping)[0])


def compute_lcp(tokens, net, table, window=None, steps=DEFAULT_STEPS,
                damping=DEFAULT_DAMPING, workers=1):
    """Cohesiveness c(S_i) for every position i of ``tokens``.

    Args:
        tokens: TokenSequence or list of tokens.
        net: SemanticNetwork.
        table: SignificanceTable.
        window: WindowSpec (default: Hanning, half-width 25).
        steps, damping: activation parameters.
        workers: threads used to evaluate batches of positions; the result
            does not depend on it.

    Returns:
        LcpSeries aligned with the tokens.
    """
    window = window or WindowSpec()
    check_params(steps, damping)
    toks = tuple(tokens)
    n = len(toks)
    if n == 0:
        raise ValueError("cannot compute a profile for an empty token sequence")
    delta = window.delta
    shape_w = window.weights()
    node_of = np.array([net.index.get(t, -1) for t in toks])
    sig = np.array([table[t] for t in toks])

    windows = []
    empty = 0
    for i in range(1, n + 1):
        l, r = window_bounds(i, delta, n)
        pos = np.arange(l - 1, r)
        pos = pos[node_of[pos] >= 0]
        if pos.size == 0:
            empty += 1
        offsets = pos + 1 - i
        windows.append((node_of[pos], shape_w[offsets + delta] * sig[pos]))
    if empty:
        log.warning("%d of %d windows have no word in the network", empty, n)

    batches = [windows[s:s + _BATCH] for s in range(0, n, _BATCH)]

    def run(batch):
        return _window_columns(net, table, batch, steps, damping)

    workers = max(1, int(workers or 1))
    if workers == 1 or len(batches) == 1:
        parts = [run(b) for b in batches]
    else:
        with ThreadPoolExecutor(max_workers=min(workers, len(batches))) as ex:
            parts = list(ex.map(run, batches))
    values = np.concatenate(parts)
    return LcpSeries(values, toks, window, empty)


