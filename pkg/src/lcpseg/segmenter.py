"""
Boundary detection on cohesion profiles, plus the vocabulary-management
baseline.

find_valleys(): prominent local minima of a series, as token gaps.
vmp_series(): number of first-occurrence tokens in a trailing interval.
vmp_boundaries(): boundaries at the prominent peaks of a VMP series.
"""

import json
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Segmentation:
    """Boundary gaps (between token g and g+1) with their salience."""

    boundaries: tuple
    salience: tuple
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "params", dict(self.params or {}))
        object.__setattr__(self, "boundaries", tuple(int(g) for g in self.boundaries))
        object.__setattr__(self, "salience", tuple(float(s) for s in self.salience))
        if len(self.boundaries) != len(self.salience):
            raise ValueError("boundaries and salience differ in length")
        if any(b >= a for b, a in zip(self.boundaries, self.boundaries[1:])):
            raise ValueError("boundaries must be strictly increasing")
        if any(s <= 0 for s in self.salience):
            raise ValueError("every boundary needs positive salience")

    def __len__(self):
        return len(self.boundaries)

    def top(self, k=1):
        """The ``k`` most salient boundary gaps, most salient first."""
        order = sorted(range(len(self)), key=lambda j: (-self.salience[j], self.boundaries[j]))
        return [self.boundaries[j] for j in order[:k]]

    def to_dict(self):
        return {"boundaries": [{"gap": g, "salience": s}
                               for g, s in zip(self.boundaries, self.salience)],
                "params": dict(self.params)}

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, d):
        bs = d.get("boundaries", [])
        return cls(tuple(b["gap"] for b in bs), tuple(b["salience"] for b in bs),
                   d.get("params"))


def valley_candidates(c):
    """0-based indices of interior local minima; a plateau counts once, at its left end."""
    out = []
    on_floor = False
    for i in range(1, len(c) - 1):
        is_min = c[i] <= c[i - 1] and c[i] <= c[i + 1]
        if is_min and not (on_floor and c[i - 1] == c[i]):
            out.append(i)
        on_floor = is_min
    return out


def valley_prominence(c, candidates=None):
    """Prominence of each candidate valley of ``c``.

    On each side, walk to the nearest candidate at least as deep (or to the
    end of the series) and take the highest value on the way; the
    prominence is the lower of the two ridges minus the valley value.
    """
    c = np.asarray(c, dtype=float)
    if candidates is None:
        candidates = valley_candidates(c)
    n = len(c)
    prom = []
    for j, i in enumerate(candidates):
        lo = 0
        for k in range(j - 1, -1, -1):
            if c[candidates[k]] <= c[i]:
                lo = candidates[k]
                break
        hi = n - 1
        for k in range(j + 1, len(candidates)):
            if c[candidates[k]] <= c[i]:
                hi = candidates[k]
                break
        left = c[lo:i + 1].max()
        right = c[i:hi + 1].max()
        prom.append(min(left, right) - c[i])
    return prom


def find_valleys(series, min_prominence=0.0, min_separation=1):
    """Salient valleys of ``series`` as a Segmentation.

    Args:
        series: sequence of at least 3 values (e.g. an LcpSeries).
        min_prominence: keep valleys at least this prominent.  Valleys of
            zero prominence are never kept.
        min_separation: no two kept boundaries are closer than this many
            tokens; of a conflicting pair the more prominent one wins, the
            earlier one on ties.

    Returns:
        Segmentation with gap ``i`` for a valley at 1-based position ``i``.
    """
    values = getattr(series, "values", series)
    c = np.asarray(values, dtype=float)
    if c.ndim != 1 or len(c) < 3:
        raise ValueError("valley detection needs a series of at least 3 values")
    if min_prominence < 0:
        raise ValueError("min_prominence must be >= 0")
    if int(min_separation) != min_separation or min_separation < 1:
        raise ValueError("min_separation must be a positive integer")

    cand = valley_candidates(c)
    prom = valley_prominence(c, cand)
    kept = [(p, i) for p, i in zip(prom, cand) if p > 0 and p >= min_prominence]
    kept.sort(key=lambda t: (-t[0], t[1]))
    chosen = []
    for p, i in kept:
        if all(abs(i - j) >= min_separation for _, j in chosen):
            chosen.append((p, i))
    chosen.sort(key=lambda t: t[1])
    params = {"min_prominence": float(min_prominence), "min_separation": int(min_separation)}
    return Segmentation(tuple(i + 1 for _, i in chosen), tuple(p for p, _ in chosen), params)


def default_min_prominence(series, fraction=0.1):
    c = np.asarray(getattr(series, "values", series), dtype=float)
    return float(fraction * (c.max() - c.min())) if len(c) else 0.0


def vmp_series(tokens, interval):
    """New-vocabulary counts over a trailing interval.

    Value i counts the tokens among positions max(1, i-interval+1)..i that
    are the first occurrence of their word in the whole text.
    """
    if int(interval) != interval or interval < 1:
        raise ValueError("interval must be a positive integer")
    seen = set()
    first = []
    for t in tokens:
        first.append(t not in seen)
        seen.add(t)
    cum = np.concatenate([[0], np.cumsum(first, dtype=int)])
    n = len(first)
    return [int(cum[i] - cum[max(0, i - interval)]) for i in range(1, n + 1)]


def vmp_boundaries(vmp, min_prominence=0.0, min_separation=1):
    """Boundaries at the prominent peaks of a VMP series."""
    neg = -np.asarray(vmp, dtype=float)
    seg = find_valleys(neg, min_prominence, min_separation)
    return Segmentation(seg.boundaries, seg.salience, dict(seg.params, source="vmp"))
