"""Scoring predicted boundaries against (multi-judge) gold boundaries."""

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class GoldBoundaries:
    """Gold gaps with the number of judges who marked each one."""

    entries: tuple
    judges: int = 1

    def __post_init__(self):
        entries = tuple((int(g), int(v)) for g, v in self.entries)
        object.__setattr__(self, "entries", entries)
        if int(self.judges) != self.judges or self.judges < 1:
            raise ValueError("judge count must be a positive integer")
        for (g, _), (h, _) in zip(entries, entries[1:]):
            if h <= g:
                raise ValueError(f"gold gaps must be strictly increasing ({g} then {h})")
        for g, v in entries:
            if not 1 <= v <= self.judges:
                raise ValueError(f"gap {g}: votes {v} outside 1..{self.judges}")

    @property
    def gaps(self):
        return tuple(g for g, _ in self.entries)

    def dominant(self, vote_threshold=None):
        """Gaps with at least ``vote_threshold`` votes (default: half the judges, rounded up)."""
        if vote_threshold is None:
            vote_threshold = default_vote_threshold(self.judges)
        if vote_threshold > self.judges:
            raise ValueError(
                f"vote threshold {vote_threshold} exceeds the {self.judges} judges")
        return tuple(g for g, v in self.entries if v >= vote_threshold)


def default_vote_threshold(judges):
    return math.ceil(judges / 2)


@dataclass(frozen=True)
class MatchScore:
    precision: float
    recall: float
    f1: float
    matches: tuple = ()

    def __iter__(self):
        return iter((self.precision, self.recall, self.f1))

    def to_dict(self):
        return {"precision": self.precision, "recall": self.recall, "f1": self.f1,
                "matches": [list(m) for m in self.matches]}


def match_boundaries(pred, gold, tolerance):
    """Greedy one-to-one matching of sorted gap lists.

    Predictions are taken left to right; each one claims the nearest gold
    gap not yet claimed that lies within ``tolerance`` (the earlier gold gap
    on ties).  Returns the ``(pred_gap, gold_gap)`` pairs.
    """
    if tolerance < 0:
        raise ValueError("tolerance must be >= 0")
    free = sorted(set(gold))
    pairs = []
    for p in sorted(pred):
        best = None
        for g in free:
            d = abs(p - g)
            if d <= tolerance and (best is None or d < abs(p - best)):
                best = g
        if best is not None:
            free.remove(best)
            pairs.append((p, best))
    return pairs


def match_score(pred, gold, tolerance=10, vote_threshold=None):
    """Precision, recall and F1 of ``pred`` against the dominant gold gaps.

    ``pred`` is a Segmentation or an iterable of gaps.  With no predictions
    precision is 1; with no gold gaps recall is 1.
    """
    pred_gaps = sorted(set(getattr(pred, "boundaries", pred)))
    gold_gaps = gold.dominant(vote_threshold)
    pairs = match_boundaries(pred_gaps, gold_gaps, tolerance)
    m = len(pairs)
    precision = m / len(pred_gaps) if pred_gaps else 1.0
    recall = m / len(gold_gaps) if gold_gaps else 1.0
    f1 = 0.0 if precision + recall == 0 else 2 * precision * recall / (precision + recall)
    return MatchScore(precision, recall, f1, tuple(pairs))


@dataclass(frozen=True)
class ReportRow:
    gap: int
    paragraph: bool
    segment: bool
    predicted: bool

    @property
    def label(self):
        if self.segment:
            return "segment, paragraph" if self.paragraph else "segment, non-paragraph"
        if self.paragraph:
            return "paragraph, non-segment"
        return "non-segment, non-paragraph"


def paragraph_independence_report(pred, gold, paragraph_gaps, vote_threshold=None,
                                  tolerance=0):
    """One row per gap that is a paragraph break, a gold boundary or a prediction.

    A gap counts as predicted when some predicted boundary lies within
    ``tolerance`` tokens of it.
    """
    pred_gaps = sorted(set(getattr(pred, "boundaries", pred)))
    if isinstance(gold, GoldBoundaries):
        gold_gaps = set(gold.dominant(vote_threshold))
    else:
        gold_gaps = set(gold)
    paras = set(paragraph_gaps)
    rows = []
    for g in sorted(paras | gold_gaps | set(pred_gaps)):
        near = any(abs(p - g) <= tolerance for p in pred_gaps)
        rows.append(ReportRow(g, g in paras, g in gold_gaps, near))
    return rows


def format_report(rows):
    lines = ["gap\tparagraph\tsegment\tpredicted\tclass"]
    for r in rows:
        lines.append(f"{r.gap}\t{'yes' if r.paragraph else 'no'}\t"
                     f"{'yes' if r.segment else 'no'}\t{'yes' if r.predicted else 'no'}\t"
                     f"{r.label}")
    return "\n".join(lines) + "\n"


def read_gold(source):
    """Parse a gold file: ``judges <n>`` header, then ``gap votes`` lines."""
    if hasattr(source, "read"):
        return _parse_gold(source)
    with open(source, encoding="utf-8") as f:
        return _parse_gold(f)


def _parse_gold(lines):
    judges = None
    entries = []
    for lineno, line in enumerate(lines, 1):
        fields = line.split()
        if not fields or fields[0].startswith("#"):
            continue
        if judges is None:
            if len(fields) != 2 or fields[0] != "judges":
                raise ValueError(f"line {lineno}: expected 'judges <n>' header")
            judges = _int(fields[1], lineno)
            continue
        if len(fields) != 2:
            raise ValueError(f"line {lineno}: expected 'gap votes'")
        entries.append((_int(fields[0], lineno), _int(fields[1], lineno)))
    if judges is None:
        raise ValueError("gold file has no 'judges <n>' header")
    entries.sort()
    try:
        return GoldBoundaries(tuple(entries), judges)
    except ValueError as exc:
        raise ValueError(f"invalid gold file: {exc}") from None


def read_paragraphs(source):
    """Parse a paragraph file: one gap per line."""
    if hasattr(source, "read"):
        lines = list(source)
    else:
        with open(source, encoding="utf-8") as f:
            lines = list(f)
    gaps = []
    for lineno, line in enumerate(lines, 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        gaps.append(_int(s, lineno))
    return sorted(set(gaps))


def _int(s, lineno):
    try:
        return int(s)
    except ValueError:
        raise ValueError(f"line {lineno}: bad integer {s!r}") from None
