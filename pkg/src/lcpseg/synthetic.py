"""Random two-topic texts over a matching toy dictionary.

Each topic has its own vocabulary whose words are defined only in terms of
other words of the same topic, so the two vocabularies form disjoint,
internally linked clusters.  A small set of frequent noise words (linked
only among themselves) is sprinkled through both halves.
"""

from dataclasses import dataclass

import numpy as np

from .lexnet import DictionaryEntry, build_network
from .significance import build_table


@dataclass(frozen=True)
class TwoTopicText:
    entries: tuple
    counts: dict
    tokens: tuple
    junction: int

    def network(self):
        return build_network(self.entries, stopwords=())

    def table(self):
        return build_table(self.counts)


def _cluster(rng, prefix, size, def_len):
    words = [f"{prefix}{j:02d}" for j in range(size)]
    entries = []
    for j, w in enumerate(words):
        others = [x for k, x in enumerate(words) if k != j]
        picks = rng.choice(len(others), size=def_len, replace=True)
        entries.append(DictionaryEntry(w, tuple(others[k] for k in picks)))
    return words, entries


def two_topic_text(seed, segment_len=200, vocab_size=30, noise_words=10,
                   noise_rate=0.1, def_len=4):
    """Two ``segment_len``-token topics back to back; the junction is gap ``segment_len``."""
    rng = np.random.default_rng(seed)
    a_words, a_entries = _cluster(rng, "alpha", vocab_size, def_len)
    b_words, b_entries = _cluster(rng, "beta", vocab_size, def_len)
    n_words, n_entries = _cluster(rng, "noise", noise_words, def_len)

    counts = {}
    for w in a_words + b_words:
        counts[w] = int(rng.integers(5, 60))
    for w in n_words:
        counts[w] = int(rng.integers(800, 2000))

    tokens = []
    for vocab in (a_words, b_words):
        for _ in range(segment_len):
            if rng.random() < noise_rate:
                tokens.append(n_words[rng.integers(len(n_words))])
            else:
                tokens.append(vocab[rng.integers(len(vocab))])
    return TwoTopicText(tuple(a_entries + b_entries + n_entries), counts,
                        tuple(tokens), segment_len)


def noisy_fixture(seed=7, length=300):
    """A deliberately choppy text: short topic runs with many noise tokens."""
    rng = np.random.default_rng(seed)
    base = two_topic_text(seed, segment_len=length // 2, noise_rate=0.3)
    words_a = [t for t in base.tokens[: base.junction]]
    words_b = [t for t in base.tokens[base.junction:]]
    tokens = []
    ia = ib = 0
    while len(tokens) < length:
        run = int(rng.integers(3, 12))
        if rng.random() < 0.5:
            tokens.extend(words_a[ia:ia + run])
            ia += run
        else:
            tokens.extend(words_b[ib:ib + run])
            ib += run
        if ia >= len(words_a):
            ia = 0
        if ib >= len(words_b):
            ib = 0
    return TwoTopicText(base.entries, base.counts, tuple(tokens[:length]), base.junction)
