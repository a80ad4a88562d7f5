"""Deterministic automata, regexes, and the language algebra."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splicelab.automata import (
    conjugacy_closure,
    dfa_all,
    dfa_complement,
    dfa_concat,
    dfa_difference,
    dfa_empty,
    dfa_equivalent,
    dfa_from_words,
    dfa_intersect,
    dfa_is_finite,
    dfa_none,
    dfa_shortest,
    dfa_subset,
    dfa_to_regex,
    dfa_union,
    difference_witness,
    enumerate_dfa,
    parse_regex,
    pattern_dfa,
    pump_witness,
    regex_letters,
    regex_to_dfa,
    render_regex,
    state_languages,
)
from splicelab.core import ParseError

from helpers import random_regex, regex_matches

AB = ("a", "b")


def all_words(letters, max_len):
    out = [""]
    frontier = [""]
    for _ in range(max_len):
        frontier = [w + c for w in frontier for c in letters]
        out.extend(frontier)
    return out


class TestRegexParsing:
    def test_basic_operators(self):
        node = parse_regex("(ab)+|c?")
        assert regex_letters(node) == {"a", "b", "c"}

    def test_epsilon_token(self):
        d = regex_to_dfa(parse_regex("_"), AB)
        assert d.accepts("")
        assert not d.accepts("a")

    def test_whitespace_ignored(self):
        d1 = regex_to_dfa(parse_regex(" a  b* "), AB)
        d2 = regex_to_dfa(parse_regex("ab*"), AB)
        assert dfa_equivalent(d1, d2)

    @pytest.mark.parametrize("bad", ["", "a|", "(ab", "a)b", "*a", "a||b"])
    def test_malformed(self, bad):
        with pytest.raises(ParseError):
            parse_regex(bad)

    def test_render_roundtrip(self):
        rng = random.Random(7)
        for _ in range(40):
            text = random_regex(rng, "ab")
            node = parse_regex(text)
            again = parse_regex(render_regex(node))
            assert dfa_equivalent(regex_to_dfa(node, AB), regex_to_dfa(again, AB))


class TestRegexToDfa:
    def test_against_independent_matcher(self):
        rng = random.Random(11)
        words = all_words(AB, 5)
        for _ in range(60):
            text = random_regex(rng, "ab")
            node = parse_regex(text)
            d = regex_to_dfa(node, AB)
            for w in words:
                assert d.accepts(w) == regex_matches(node, w), (text, w)

    def test_total_transition_function(self):
        d = regex_to_dfa(parse_regex("a"), AB)
        assert len(d.transitions) == d.n_states
        for row in d.transitions:
            assert len(row) == len(AB)
            assert all(0 <= t < d.n_states for t in row)

    def test_normalized_equality(self):
        # normalized DFAs for the same language are structurally equal
        d1 = regex_to_dfa(parse_regex("(a|b)(a|b)*"), AB)
        d2 = regex_to_dfa(parse_regex("(a|b)*(a|b)"), AB)
        assert d1 == d2


class TestBooleans:
    @given(st.lists(st.text(alphabet="ab", max_size=4), max_size=4),
           st.lists(st.text(alphabet="ab", max_size=4), max_size=4))
    @settings(max_examples=40)
    def test_set_algebra_on_finite_languages(self, xs, ys):
        a, b = dfa_from_words(AB, xs), dfa_from_words(AB, ys)
        sx, sy = set(xs), set(ys)
        probe = all_words(AB, 4)
        u, i, d = dfa_union(a, b), dfa_intersect(a, b), dfa_difference(a, b)
        for w in probe:
            assert u.accepts(w) == (w in (sx | sy))
            assert i.accepts(w) == (w in (sx & sy))
            assert d.accepts(w) == (w in (sx - sy))

    def test_complement(self):
        d = dfa_complement(dfa_none(AB))
        assert dfa_equivalent(d, dfa_all(AB))

    def test_mixed_alphabets_rejected(self):
        with pytest.raises(ValueError):
            dfa_union(dfa_all(AB), dfa_all(("a", "c")))


class TestQueries:
    def test_emptiness_and_shortest(self):
        assert dfa_empty(dfa_none(AB))
        assert dfa_shortest(dfa_none(AB)) is None
        assert dfa_shortest(dfa_from_words(AB, ["ba", "b"])) == "b"

    def test_shortest_is_length_lex_least(self):
        d = dfa_from_words(AB, ["bb", "ba", "ab"])
        assert dfa_shortest(d) == "ab"

    def test_difference_witness(self):
        a = dfa_from_words(AB, ["a", "ab"])
        b = dfa_from_words(AB, ["a"])
        assert difference_witness(a, b) == "ab"
        assert difference_witness(b, a) is None

    def test_subset_equivalent(self):
        a = regex_to_dfa(parse_regex("(ab)+"), AB)
        b = regex_to_dfa(parse_regex("(ab)*"), AB)
        assert dfa_subset(a, b)
        assert not dfa_subset(b, a)
        assert dfa_equivalent(dfa_union(a, dfa_from_words(AB, [""])), b)

    def test_finiteness(self):
        assert dfa_is_finite(dfa_from_words(AB, ["a", "babb"]))
        assert not dfa_is_finite(regex_to_dfa(parse_regex("ab*"), AB))
        # unreachable loops do not count
        assert dfa_is_finite(dfa_intersect(regex_to_dfa(parse_regex("a*"), AB),
                                           dfa_from_words(AB, ["aa"])))

    def test_pump_witness(self):
        d = regex_to_dfa(parse_regex("ab+a"), AB)
        got = pump_witness(d)
        assert got is not None
        x, y, z = got
        assert y
        for k in range(4):
            assert d.accepts(x + y * k + z)

    def test_enumerate_dfa(self):
        d = regex_to_dfa(parse_regex("a*b"), AB)
        assert enumerate_dfa(d, 3) == ["b", "ab", "aab"]


class TestPatternDfa:
    def test_matches_formal_pattern(self):
        d = pattern_dfa(AB, "a", "a")
        assert not d.accepts("a")
        assert d.accepts("aa")
        assert d.accepts("aba")
        assert not d.accepts("ab")

    def test_one_sided(self):
        assert pattern_dfa(AB, "", "b").accepts("b")
        assert pattern_dfa(AB, "a", "").accepts("a")
        assert pattern_dfa(AB, "", "").accepts("")


class TestStructural:
    def test_concat(self):
        d = dfa_concat(dfa_from_words(AB, ["a", "ab"]), dfa_from_words(AB, ["b"]))
        assert sorted(enumerate_dfa(d, 3)) == ["ab", "abb"]

    def test_concat_with_infinite_left(self):
        d = dfa_concat(regex_to_dfa(parse_regex("a*"), AB), dfa_from_words(AB, ["b"]))
        assert dfa_equivalent(d, regex_to_dfa(parse_regex("a*b"), AB))

    def test_state_languages_decompose(self):
        d = regex_to_dfa(parse_regex("ab*a"), AB)
        full = set(enumerate_dfa(d, 5))
        rebuilt = set()
        for q in range(d.n_states):
            into_q, out_q = state_languages(d, q)
            for x in enumerate_dfa(into_q, 5):
                for y in enumerate_dfa(out_q, 5 - len(x)):
                    rebuilt.add(x + y)
        assert rebuilt == full

    def test_conjugacy_closure(self):
        d = conjugacy_closure(dfa_from_words(AB, ["aab"]))
        assert set(enumerate_dfa(d, 3)) == {"aab", "aba", "baa"}

    def test_conjugacy_closure_idempotent_on_closed(self):
        d = regex_to_dfa(parse_regex("(a|b)*"), AB)
        assert dfa_equivalent(conjugacy_closure(d), d)

    def test_dfa_to_regex_roundtrip(self):
        rng = random.Random(23)
        for _ in range(25):
            text = random_regex(rng, "ab")
            d = regex_to_dfa(parse_regex(text), AB)
            back = regex_to_dfa(dfa_to_regex(d), AB)
            assert dfa_equivalent(d, back), text
