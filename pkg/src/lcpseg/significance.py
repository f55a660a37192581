"""Word significance as normalised information from corpus frequencies."""

import math
from dataclasses import dataclass, field

from ._text import normalize_token


@dataclass(frozen=True)
class SignificanceTable:
    """Frequency table with the derived per-word significance.

    ``s(w) = log(total / freq(w)) / log(total / min_count)``: the rarest
    word scores 1 and a word that made up the whole corpus would score 0.
    Words missing from the table get ``default``, the score of the rarest
    word.
    """

    freq: dict
    total: int
    p_min: float
    default: float
    scores: dict = field(repr=False)

    def __contains__(self, word):
        return word in self.scores

    def __len__(self):
        return len(self.scores)

    def __getitem__(self, word):
        return self.scores.get(word, self.default)


def build_table(counts):
    """Build a SignificanceTable from a mapping ``word -> count >= 1``."""
    counts = dict(counts)
    if not counts:
        raise ValueError("frequency table needs at least one word")
    for w, c in counts.items():
        if isinstance(c, bool) or int(c) != c:
            raise ValueError(f"count for {w!r} is not an integer: {c!r}")
        if c < 1:
            raise ValueError(f"count for {w!r} must be >= 1, got {c!r}")
    counts = {w: int(c) for w, c in counts.items()}
    total = sum(counts.values())
    min_count = min(counts.values())
    norm = math.log(total / min_count)
    if norm == 0.0:
        # single-word corpus: every word is as rare as the rarest
        scores = {w: 1.0 for w in counts}
    else:
        scores = {w: math.log(total / c) / norm for w, c in counts.items()}
    return SignificanceTable(
        freq=counts, total=total, p_min=min_count / total, default=1.0,
        scores=scores)


def significance(table, word):
    """s(word), falling back to the table default for unseen words."""
    return table[word]


def read_frequencies(source):
    """Parse ``word count`` lines; repeated words are summed.

    ``source`` is a path or an open text file.  Blank lines and ``#``
    comments are skipped.
    """
    if hasattr(source, "read"):
        return _parse_frequencies(source)
    with open(source, encoding="utf-8") as f:
        return _parse_frequencies(f)


def _parse_frequencies(lines):
    counts = {}
    for lineno, line in enumerate(lines, 1):
        fields = line.split()
        if not fields or fields[0].startswith("#"):
            continue
        if len(fields) != 2:
            raise ValueError(f"line {lineno}: expected 'word count'")
        word = normalize_token(fields[0])
        if not word:
            raise ValueError(f"line {lineno}: word {fields[0]!r} is only punctuation")
        try:
            c = int(fields[1])
        except ValueError:
            raise ValueError(f"line {lineno}: bad count {fields[1]!r}") from None
        if c < 1:
            raise ValueError(f"line {lineno}: count must be >= 1, got {c}")
        counts[word] = counts.get(word, 0) + c
    return counts
