"""
Command-line driver: dictionary + frequencies + text -> profile, boundaries
and scores on disk.

    lcpseg --text story.txt --gold story.gold --out results/
    lcpseg --sample --vmp --out results/
    lcpseg --sample --sweep-delta 5:60:5 --out sweep/
"""

import argparse
import hashlib
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import resources
from .activation import DEFAULT_DAMPING, DEFAULT_STEPS
from .evaluation import (default_vote_threshold, format_report, match_score,
                         paragraph_independence_report, read_gold, read_paragraphs)
from .lcp import DEFAULT_DELTA, SHAPE_ALIASES, WindowSpec, compute_lcp, tokenize
from .lexnet import (DEFAULT_STOPWORDS, build_network, load_network, read_dictionary,
                     save_network)
from .segmenter import (Segmentation, default_min_prominence, find_valleys,
                        vmp_boundaries, vmp_series)
from .significance import build_table, read_frequencies

log = logging.getLogger("lcpseg")

CACHE_ENV = "LCPSEG_CACHE_DIR"


class ConfigError(ValueError):
    def __init__(self, name, message):
        self.field = name
        super().__init__(f"{name}: {message}")


class InputError(Exception):
    def __init__(self, path, reason):
        self.path = path
        super().__init__(f"{path}: {reason}")


@dataclass
class RunConfig:
    text: str = None
    out: str = "lcpseg-out"
    dictionary: str = field(default_factory=lambda: resources.data_path(resources.DESK_DICTIONARY))
    frequencies: str = field(default_factory=lambda: resources.data_path(resources.DESK_FREQUENCIES))
    gold: str = None
    paragraphs: str = None
    stopwords: str = None
    window: str = "hanning"
    delta: int = DEFAULT_DELTA
    steps: int = DEFAULT_STEPS
    damping: float = DEFAULT_DAMPING
    min_prominence: float = None
    min_separation: int = None
    tolerance: int = 10
    vote_threshold: int = None
    sweep: tuple = None
    vmp: bool = False
    vmp_interval: int = None
    threads: int = None
    cache_dir: str = None

    def validate(self):
        if self.text is None:
            raise ConfigError("text", "no input text given")
        if self.window not in SHAPE_ALIASES:
            raise ConfigError("window", f"unknown shape {self.window!r}")
        _positive_int("delta", self.delta)
        _positive_int("steps", self.steps)
        if not 0.0 < self.damping < 1.0:
            raise ConfigError("damping", f"must lie in (0, 1), got {self.damping}")
        if self.min_prominence is not None and not self.min_prominence >= 0:
            raise ConfigError("min_prominence", f"must be >= 0, got {self.min_prominence}")
        if self.min_separation is not None:
            _positive_int("min_separation", self.min_separation)
        if int(self.tolerance) != self.tolerance or self.tolerance < 0:
            raise ConfigError("tolerance", f"must be a non-negative integer, got {self.tolerance}")
        if self.vote_threshold is not None:
            _positive_int("vote_threshold", self.vote_threshold)
        if self.vmp_interval is not None:
            _positive_int("vmp_interval", self.vmp_interval)
        if self.threads is not None:
            _positive_int("threads", self.threads)
        if self.sweep is not None:
            lo, hi, step = self.sweep
            if lo < 1 or hi < lo or step < 1:
                raise ConfigError("sweep_delta", f"bad range {lo}:{hi}:{step}")


def _positive_int(name, value):
    if isinstance(value, bool) or int(value) != value or value < 1:
        raise ConfigError(name, f"must be a positive integer, got {value!r}")


def _read(path, parser):
    try:
        return parser(path)
    except OSError as exc:
        raise InputError(path, exc.strerror or str(exc)) from None
    except (ValueError, UnicodeDecodeError) as exc:
        raise InputError(path, str(exc)) from None


def _read_bytes(path):
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(path, exc.strerror or str(exc)) from None


def _read_stopwords(path):
    with open(path, encoding="utf-8") as f:
        return frozenset(w.casefold() for line in f for w in line.split())


def cache_dir(config):
    if config.cache_dir:
        return Path(config.cache_dir)
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "lcpseg"


def network_for(config, stopwords):
    """Load the network from the content-hash cache, building it on a miss."""
    raw = _read_bytes(config.dictionary)
    h = hashlib.sha256(raw)
    h.update(b"\0stopwords\0")
    h.update("\n".join(sorted(stopwords)).encode("utf-8"))
    path = cache_dir(config) / f"{h.hexdigest()}.lexnet"
    if path.exists():
        try:
            return load_network(path)
        except ValueError as exc:
            log.warning("ignoring corrupt cached network %s: %s", path, exc)
    entries = _read(config.dictionary, read_dictionary)
    try:
        net = build_network(entries, stopwords)
    except ValueError as exc:
        raise InputError(config.dictionary, str(exc)) from None
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(f".tmp{os.getpid()}")
        save_network(net, tmp)
        os.replace(tmp, path)
    except OSError as exc:
        log.warning("could not write network cache %s: %s", path, exc)
    return net


def _segment(series, delta, config):
    if len(series) < 3:
        return Segmentation((), (), {"note": "series too short for valley detection"})
    prom = config.min_prominence
    if prom is None:
        prom = default_min_prominence(series)
    sep = config.min_separation or delta
    return find_valleys(series, prom, sep)


def _write_json(path, obj):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(obj, f, indent=2, sort_keys=True)
        f.write("\n")


def _eval_dict(seg, gold, config):
    threshold = config.vote_threshold or default_vote_threshold(gold.judges)
    score = match_score(seg, gold, config.tolerance, threshold)
    d = score.to_dict()
    d.update(tolerance=config.tolerance, vote_threshold=threshold, judges=gold.judges)
    return d


def run_pipeline(config):
    """Run the whole pipeline for ``config``; returns a process exit status."""
    try:
        config.validate()
        _run(config)
    except ConfigError as exc:
        print(f"lcpseg: invalid configuration: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"lcpseg: error: {exc}", file=sys.stderr)
        return 1
    return 0


def _run(config):
    out = Path(config.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise InputError(out, exc.strerror or str(exc)) from None

    stopwords = DEFAULT_STOPWORDS
    if config.stopwords:
        stopwords = _read(config.stopwords, _read_stopwords)
    net = network_for(config, stopwords)
    try:
        table = build_table(_read(config.frequencies, read_frequencies))
    except ValueError as exc:
        raise InputError(config.frequencies, str(exc)) from None
    raw = _read(config.text, lambda p: Path(p).read_text(encoding="utf-8"))
    tokens = tokenize(raw)
    if not len(tokens):
        raise InputError(config.text, "text contains no tokens")
    gold = _read(config.gold, read_gold) if config.gold else None
    paragraphs = _read(config.paragraphs, read_paragraphs) if config.paragraphs else None
    if gold is not None and config.vote_threshold and config.vote_threshold > gold.judges:
        raise ConfigError("vote_threshold",
                          f"{config.vote_threshold} exceeds the {gold.judges} judges")

    save_network(net, out / "network.lexnet")
    workers = config.threads or os.cpu_count() or 1
    params = {"window": WindowSpec(config.window, config.delta).shape,
              "steps": config.steps, "damping": config.damping}

    if config.sweep:
        _sweep(config, tokens, net, table, gold, workers, params, out)
    else:
        window = WindowSpec(config.window, config.delta)
        series = compute_lcp(tokens, net, table, window, config.steps, config.damping,
                             workers=workers)
        series.write_tsv(out / "lcp.tsv")
        seg = _segment(series, config.delta, config)
        segd = seg.to_dict()
        segd["params"].update(params, delta=config.delta)
        _write_json(out / "segments.json", segd)
        summary = f"{len(tokens)} tokens, {len(seg)} boundaries"
        if gold is not None:
            ev = _eval_dict(seg, gold, config)
            _write_json(out / "eval.json", ev)
            summary += f", f1 {ev['f1']:.3f}"
        if paragraphs is not None:
            gold_gaps = gold if gold is not None else ()
            rows = paragraph_independence_report(
                seg, gold_gaps, paragraphs,
                vote_threshold=config.vote_threshold, tolerance=config.tolerance)
            (out / "report.txt").write_text(format_report(rows), encoding="utf-8")
        print(summary)

    if config.vmp:
        interval = config.vmp_interval or config.delta
        vmp = vmp_series(tokens.tokens, interval)
        with open(out / "vmp.tsv", "w", encoding="utf-8", newline="\n") as f:
            f.write("position\ttoken\tvmp\n")
            for i, (tok, v) in enumerate(zip(tokens.tokens, vmp), 1):
                f.write(f"{i}\t{tok}\t{v}\n")
        if len(vmp) >= 3:
            prom = config.min_prominence
            if prom is None:
                prom = default_min_prominence(vmp)
            vseg = vmp_boundaries(vmp, prom, config.min_separation or config.delta)
        else:
            vseg = Segmentation((), (), {"source": "vmp"})
        vd = vseg.to_dict()
        vd["params"].update(interval=interval)
        _write_json(out / "vmp_segments.json", vd)
        if gold is not None:
            _write_json(out / "vmp_eval.json", _eval_dict(vseg, gold, config))


def _sweep(config, tokens, net, table, gold, workers, params, out):
    lo, hi, step = config.sweep
    rows = ["delta\tboundaries\tprecision\trecall\tf1"]
    for delta in range(lo, hi + 1, step):
        window = WindowSpec(config.window, delta)
        series = compute_lcp(tokens, net, table, window, config.steps, config.damping,
                             workers=workers)
        series.write_tsv(out / f"lcp_delta{delta:03d}.tsv")
        seg = _segment(series, delta, config)
        segd = seg.to_dict()
        segd["params"].update(params, delta=delta)
        _write_json(out / f"segments_delta{delta:03d}.json", segd)
        if gold is not None:
            ev = _eval_dict(seg, gold, config)
            rows.append(f"{delta}\t{len(seg)}\t{ev['precision']!r}\t{ev['recall']!r}\t{ev['f1']!r}")
        else:
            rows.append(f"{delta}\t{len(seg)}\t\t\t")
    (out / "sweep.tsv").write_text("\n".join(rows) + "\n", encoding="utf-8")
    print(f"swept delta {lo}..{hi} step {step}; summary in {out / 'sweep.tsv'}")


def parse_sweep(s):
    parts = s.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected A:B:STEP")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError("expected integers A:B:STEP") from None


def build_parser():
    p = argparse.ArgumentParser(
        prog="lcpseg",
        description="Lexical cohesion profile and topic-boundary detection.")
    src = p.add_argument_group("inputs")
    src.add_argument("--dict", dest="dictionary",
                     help="dictionary file, headword<TAB>definition (default: bundled desk dictionary)")
    src.add_argument("--freq", dest="frequencies",
                     help="frequency file, 'word count' per line (default: bundled)")
    src.add_argument("--text", help="input text")
    src.add_argument("--gold", help="gold boundaries: 'judges <n>' then 'gap votes' lines")
    src.add_argument("--paragraphs", help="paragraph gaps, one per line")
    src.add_argument("--stopwords", help="whitespace-separated stopword file")
    src.add_argument("--sample", action="store_true",
                     help="use the bundled sample text, gold and paragraph files")
    lcp = p.add_argument_group("profile")
    lcp.add_argument("--window", default="hanning", choices=["rect", "triangle", "hanning"])
    lcp.add_argument("--delta", type=int, default=DEFAULT_DELTA, help="window half-width")
    lcp.add_argument("--steps", type=int, default=DEFAULT_STEPS)
    lcp.add_argument("--damping", type=float, default=DEFAULT_DAMPING)
    lcp.add_argument("--threads", type=int, default=None)
    seg = p.add_argument_group("boundaries and scoring")
    seg.add_argument("--min-prominence", type=float, default=None,
                     help="default: 0.1 * (max - min) of the series")
    seg.add_argument("--min-separation", type=int, default=None, help="default: delta")
    seg.add_argument("--tolerance", type=int, default=10)
    seg.add_argument("--vote-threshold", type=int, default=None,
                     help="default: half the judges, rounded up")
    mode = p.add_argument_group("modes")
    mode.add_argument("--sweep-delta", type=parse_sweep, default=None, metavar="A:B:STEP")
    mode.add_argument("--vmp", action="store_true", help="also compute the VMP baseline")
    mode.add_argument("--vmp-interval", type=int, default=None, help="default: delta")
    p.add_argument("--out", default="lcpseg-out", help="output directory")
    return p


def config_from_args(args):
    cfg = RunConfig(
        text=args.text, out=args.out, gold=args.gold, paragraphs=args.paragraphs,
        stopwords=args.stopwords, window=args.window, delta=args.delta,
        steps=args.steps, damping=args.damping, min_prominence=args.min_prominence,
        min_separation=args.min_separation, tolerance=args.tolerance,
        vote_threshold=args.vote_threshold, sweep=args.sweep_delta, vmp=args.vmp,
        vmp_interval=args.vmp_interval, threads=args.threads)
    if args.dictionary:
        cfg.dictionary = args.dictionary
    if args.frequencies:
        cfg.frequencies = args.frequencies
    if args.sample:
        cfg.text = cfg.text or resources.data_path(resources.SAMPLE_TEXT)
        cfg.gold = cfg.gold or resources.data_path(resources.SAMPLE_GOLD)
        cfg.paragraphs = cfg.paragraphs or resources.data_path(resources.SAMPLE_PARAGRAPHS)
    return cfg


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="lcpseg: %(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    return run_pipeline(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
