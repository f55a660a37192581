import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcpseg.activation import activate
from lcpseg.lcp import (LcpSeries, WindowSpec, cohesiveness, compute_lcp, tokenize,
                        window_bounds, window_weight)
from lcpseg.lexnet import DictionaryEntry, build_network
from lcpseg.resources import SAMPLE_TEXT, data_path
from lcpseg.significance import build_table

import oracles
from conftest import entry

# Frozen from oracles.cohesiveness on the x<->y network, s = 1, rectangular window.
TWO_NODE_DEFAULT = 2.0           # steps 10, damping 0.8 (both nodes saturate)
TWO_NODE_UNSATURATED = 1.417     # steps 3, damping 0.3


class TestTokenize:

    def test_sentence(self):
        assert tokenize("Molly saw a cat. It was her pet.").tokens == (
            "molly", "saw", "a", "cat", "it", "was", "her", "pet")

    def test_empty(self):
        assert tokenize("").tokens == ()
        assert tokenize("  ... !! ").tokens == ()

    def test_apostrophe(self):
        assert tokenize("don't stop").tokens == ("dont", "stop")

    def test_paragraph_gaps_are_metadata(self):
        t = tokenize("One two.\n\nThree four five.\n   \nSix.")
        assert t.tokens == ("one", "two", "three", "four", "five", "six")
        assert t.paragraph_gaps == (2, 5)
        assert tokenize("One two. Three four five. Six.").tokens == t.tokens

    @given(st.text())
    def test_token_invariants(self, text):
        for tok in tokenize(text):
            assert tok
            assert not any(ch.isspace() for ch in tok)
            assert tok == tok.casefold()


class TestWindows:

    @pytest.mark.parametrize("i, expected", [(50, (25, 75)), (10, (1, 35)), (190, (165, 200))])
    def test_bounds(self, i, expected):
        assert window_bounds(i, 25, 200) == expected

    def test_bounds_out_of_range(self):
        with pytest.raises(IndexError):
            window_bounds(0, 5, 10)
        with pytest.raises(IndexError):
            window_bounds(11, 5, 10)

    @given(st.integers(1, 60), st.integers(1, 150), st.data())
    def test_bounds_match_enumeration(self, delta, n, data):
        i = data.draw(st.integers(1, n))
        assert window_bounds(i, delta, n) == oracles.window_bounds(i, delta, n)

    def test_weight_examples(self):
        assert window_weight("hanning", 0, 25) == 1.0
        assert window_weight("hanning", 25, 25) == 0.0
        assert window_weight("hanning", -25, 25) == 0.0
        assert window_weight("triangle", 5, 25) == pytest.approx(0.8)
        assert window_weight("rectangular", -7, 25) == 1.0

    def test_weight_out_of_window(self):
        with pytest.raises(ValueError):
            window_weight("hanning", 26, 25)

    @pytest.mark.parametrize("shape", ["rectangular", "triangle", "hanning"])
    @pytest.mark.parametrize("delta", [1, 2, 5, 25, 60])
    def test_weights_match_numpy_windows(self, shape, delta):
        ours = WindowSpec(shape, delta).weights()
        np.testing.assert_allclose(ours, oracles.window_weights(shape, delta), atol=1e-12)

    @given(st.integers(1, 80), st.data())
    def test_weight_bounds(self, delta, data):
        k = data.draw(st.integers(-delta, delta))
        rect, tri, han = (window_weight(s, k, delta) for s in ("rect", "triangle", "hanning"))
        assert 0 <= tri <= rect == 1
        assert 0 <= han <= 1
        assert window_weight("hanning", 0, delta) == window_weight("triangle", 0, delta) == 1

    def test_spec_validation(self):
        assert WindowSpec("rect", 3).shape == "rectangular"
        with pytest.raises(ValueError):
            WindowSpec("gaussian", 3)
        with pytest.raises(ValueError):
            WindowSpec("hanning", 0)


@pytest.fixture
def pair_net():
    return build_network([entry("x", "y"), entry("y", "x")], stopwords=())


class TestCohesiveness:

    def test_two_node_golden(self, pair_net, flat_table):
        window = [("x", 1.0), ("y", 1.0)]
        assert cohesiveness(pair_net, flat_table, window) == pytest.approx(
            TWO_NODE_DEFAULT, abs=1e-12)
        assert cohesiveness(pair_net, flat_table, window, steps=3, damping=0.3) == \
            pytest.approx(TWO_NODE_UNSATURATED, abs=1e-12)

    def test_single_word_collapses(self, desk):
        net, table = desk
        s = table["cat"]
        p = activate(net, {"cat": s})
        assert cohesiveness(net, table, [("cat", 1.0)]) == pytest.approx(s * p["cat"], abs=1e-15)

    def test_words_outside_network_ignored(self, desk):
        net, table = desk
        with_unknown = cohesiveness(net, table, [("cat", 1.0), ("zzzz", 1.0), ("pet", 1.0)])
        assert with_unknown == cohesiveness(net, table, [("cat", 1.0), ("pet", 1.0)])

    def test_no_word_in_network(self, desk, caplog):
        net, table = desk
        assert cohesiveness(net, table, [("zzzz", 1.0), ("qqqq", 1.0)]) == 0.0
        assert "no window word" in caplog.text

    def test_cohesive_beats_incoherent(self, desk):
        net, table = desk
        good = tokenize("Molly saw a cat. It was her family pet. She wished to keep a lion.")
        bad = tokenize("There is no one but me. Put on your clothes. I can not walk more.")
        c_good = cohesiveness(net, table, [(w, 1.0) for w in good])
        c_bad = cohesiveness(net, table, [(w, 1.0) for w in bad])
        assert c_good > c_bad

    @given(st.data())
    @settings(max_examples=120, deadline=None)
    def test_matches_oracle(self, data):
        words = [f"w{i}" for i in range(6)]
        entries = [DictionaryEntry(w, tuple(data.draw(st.lists(st.sampled_from(words),
                                                               max_size=4))))
                   for w in words]
        net = build_network(entries, stopwords=())
        counts = {w: data.draw(st.integers(1, 50)) for w in words}
        table = build_table(counts)
        window = data.draw(st.lists(st.tuples(st.sampled_from(words + ["oov"]),
                                              st.floats(0.0, 1.0)), min_size=1, max_size=8))
        got = cohesiveness(net, table, window)
        ref = oracles.cohesiveness(oracles.edge_dict(net), lambda w: table[w], window, 10, 0.8)
        assert got == pytest.approx(ref, abs=1e-9)
        assert got >= 0


def two_cluster(m):
    """A-words and B-words each linked in a ring, no cross links; text A*m then B*m."""
    a = [f"a{i}" for i in range(5)]
    b = [f"b{i}" for i in range(5)]
    entries = [entry(w, f"{ws[(i + 1) % 5]} {ws[(i + 2) % 5]}")
               for ws in (a, b) for i, w in enumerate(ws)]
    tokens = [a[(7 * i) % 5] for i in range(m)] + [b[(3 * i) % 5] for i in range(m)]
    net = build_network(entries, stopwords=())
    table = build_table({w: 3 for w in a + b})
    return net, table, tokens


class TestComputeLcp:

    def test_single_token(self, desk):
        net, table = desk
        series = compute_lcp(["cat"], net, table)
        assert len(series) == 1
        assert series.values[0] == cohesiveness(net, table, [("cat", 1.0)])

    def test_empty_rejected(self, desk):
        net, table = desk
        with pytest.raises(ValueError):
            compute_lcp([], net, table)

    @pytest.mark.parametrize("delta", [4, 10, 25])
    def test_disjoint_vocabularies_valley(self, delta):
        m = 60
        net, table, tokens = two_cluster(m)
        c = compute_lcp(tokens, net, table, WindowSpec("hanning", delta)).values
        # brute force over the interior (clamped edge windows are shorter)
        interior = range(delta, 2 * m - delta)
        i_min = min(interior, key=lambda i: c[i]) + 1
        assert abs(i_min - m) <= delta / 2

    def test_constant_text(self, desk):
        net, table = desk
        n, delta = 40, 5
        c = compute_lcp(["cat"] * n, net, table, WindowSpec("hanning", delta)).values
        inner = c[delta:n - delta]
        assert np.max(np.abs(inner - inner[0])) <= 1e-12

    def test_translation_invariance_bitwise(self, desk):
        net, table = desk
        unit = tokenize("the cat drank milk from a bowl by the fire").tokens
        tokens = unit * 8
        delta = 5
        c = compute_lcp(tokens, net, table, WindowSpec("triangle", delta)).values
        period = len(unit)
        for i in range(delta, len(tokens) - delta - period):
            assert c[i] == c[i + period]

    def test_matches_per_window_cohesiveness(self, desk):
        net, table = desk
        tokens = tokenize("The cat drank milk. The waiter brought wine and bread zzz.").tokens
        spec = WindowSpec("hanning", 3)
        series = compute_lcp(tokens, net, table, spec)
        n = len(tokens)
        for i in range(1, n + 1):
            l, r = window_bounds(i, 3, n)
            window = [(tokens[p - 1], window_weight("hanning", p - i, 3)) for p in range(l, r + 1)]
            assert series.values[i - 1] == cohesiveness(net, table, window)

    def test_rectangular_reduces_to_unweighted(self, desk):
        net, table = desk
        tokens = tokenize("Molly saw a cat. It was her family pet.").tokens
        series = compute_lcp(tokens, net, table, WindowSpec("rectangular", 50))
        whole = cohesiveness(net, table, [(w, 1.0) for w in tokens])
        assert np.all(series.values == whole)

    def test_workers_do_not_change_result(self, desk):
        net, table = desk
        with open(data_path(SAMPLE_TEXT), encoding="utf-8") as f:
            text = f.read()
        tokens = tokenize(text).tokens * 3
        a = compute_lcp(tokens, net, table, WindowSpec("hanning", 10), workers=1).values
        b = compute_lcp(tokens, net, table, WindowSpec("hanning", 10), workers=4).values
        assert np.array_equal(a, b)

    @given(st.lists(st.sampled_from(["cat", "pet", "the", "wine", "zzz", "red", "blood"]),
                    min_size=1, max_size=40),
           st.sampled_from(["rect", "triangle", "hanning"]), st.integers(1, 8))
    @settings(max_examples=60, deadline=None)
    def test_non_negative_and_aligned(self, desk, tokens, shape, delta):
        net, table = desk
        s = compute_lcp(tokens, net, table, WindowSpec(shape, delta))
        assert len(s) == len(tokens)
        assert (s.values >= 0).all()

    def test_outputs(self, desk, tmp_path):
        net, table = desk
        s = compute_lcp(["cat", "pet", "lion"], net, table, WindowSpec("hanning", 2))
        s.write_tsv(tmp_path / "l.tsv")
        rows = (tmp_path / "l.tsv").read_text().splitlines()
        assert rows[0] == "position\ttoken\tc"
        assert rows[2].split("\t")[:2] == ["2", "pet"]
        assert float(rows[2].split("\t")[2]) == s.values[1]
        assert json.loads(s.to_json()) == [float(v) for v in s.values]
        assert isinstance(s, LcpSeries)
