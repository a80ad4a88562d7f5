"""Text formats: systems, grammars, automata."""

import pytest

from splicelab.automata import dfa_equivalent, parse_regex, regex_to_dfa
from splicelab.core import (
    CIRCULAR,
    CONCAT,
    ParseError,
    SplicingRule,
    UnsupportedError,
)
from splicelab.examples import ALL_EXAMPLES
from splicelab.fileformat import (
    parse_dfa,
    parse_grammar,
    parse_system,
    serialize_dfa,
    serialize_grammar,
    serialize_system,
)
from splicelab.grammar import Cfg, enumerate_cfg


class TestSystemFormat:
    @pytest.mark.parametrize("name", sorted(ALL_EXAMPLES))
    def test_round_trip(self, name):
        system = ALL_EXAMPLES[name]()
        assert parse_system(serialize_system(system)) == system

    def test_serialization_is_stable(self):
        system = ALL_EXAMPLES["mixed_system"]()
        once = serialize_system(system)
        assert serialize_system(parse_system(once)) == once

    def test_comments_and_blanks(self):
        text = """
        # a one-rule system
        alphabet a b

        initial finite ab
        splice a#b$a#b
        """
        system = parse_system(text)
        assert system.initial.words == frozenset({"ab"})

    def test_rule_whitespace_ignored(self):
        a = parse_system("alphabet a b\ninitial finite ab\nsplice a # b $ a # b\n")
        b = parse_system("alphabet a b\ninitial finite ab\nsplice a#b$a#b\n")
        assert a == b

    def test_dash_is_empty_handle(self):
        system = parse_system("alphabet a b\ninitial finite ab\nsplice b#-$-#a\n")
        assert system.rules == frozenset({SplicingRule("b", "", "", "a")})

    def test_concat_rules(self):
        system = parse_system("alphabet a b c\ninitial finite c ab\nconcat -#c$-#b\n")
        (rule,) = system.rules
        assert rule.usage == CONCAT

    def test_circular_mode(self):
        system = parse_system(
            "alphabet a b\nmode circular\ninitial finite ab\nsplice a#b$a#b\n"
        )
        assert system.mode == CIRCULAR

    def test_regex_initial(self):
        system = parse_system("alphabet a b c\ninitial regex c*ab|c\n")
        assert system.initial.kind == "regular"
        assert system.initial.contains("ccab")
        assert not system.initial.had_epsilon

    def test_regex_initial_epsilon_flag(self):
        system = parse_system("alphabet a b\ninitial regex (ab)*\n")
        assert system.initial.had_epsilon
        assert not system.initial.contains("")

    def test_error_lines(self):
        bad = "alphabet a b\ninitial finite ab\nsplice a#b$a\n"
        with pytest.raises(ParseError) as err:
            parse_system(bad)
        assert err.value.line == 3

    def test_epsilon_axiom_rejected(self):
        with pytest.raises(ParseError):
            parse_system("alphabet a b\ninitial finite ab _\n")

    def test_regex_letters_outside_alphabet(self):
        with pytest.raises(ParseError):
            parse_system("alphabet a b\ninitial regex c*\n")

    def test_rule_letters_outside_alphabet(self):
        with pytest.raises(ParseError):
            parse_system("alphabet a b\ninitial finite ab\nsplice a#b$c#d\n")

    def test_unknown_directive(self):
        with pytest.raises(ParseError):
            parse_system("alphabet a b\ninitial finite ab\naxiom ab\n")

    def test_missing_sections(self):
        with pytest.raises(ParseError):
            parse_system("initial finite ab\n")
        with pytest.raises(ParseError):
            parse_system("alphabet a b\n")

    def test_alphabet_must_come_first(self):
        with pytest.raises(ParseError):
            parse_system("initial finite ab\nalphabet a b\n")


class TestGrammarFormat:
    def test_parse_basic(self):
        g = parse_grammar("start S\nterminals a b\nS -> a S b | ab\n")
        assert enumerate_cfg(g, 6) == ["ab", "aabb", "aaabbb"]

    def test_empty_body_token(self):
        g = parse_grammar("start S\nS -> _ | a S\n")
        assert enumerate_cfg(g, 2) == ["", "a", "aa"]

    def test_terminal_strings_split(self):
        g = parse_grammar("start S\nS -> ab\n")
        assert g.bodies("S") == [("a", "b")]

    def test_round_trip(self):
        g = Cfg(("a", "b"), ("S", "T"), [("S", ("a", "T", "b")), ("T", ())], "S")
        assert parse_grammar(serialize_grammar(g)) == g

    def test_variables_inside_strings_rejected(self):
        with pytest.raises(ParseError):
            parse_grammar("start S\nS -> aSb\n")

    def test_missing_start(self):
        with pytest.raises(ParseError):
            parse_grammar("S -> a\n")

    def test_lowercase_head_rejected(self):
        with pytest.raises(ParseError):
            parse_grammar("start S\ns -> a\n")

    def test_inferred_terminals_sorted(self):
        g = parse_grammar("start S\nS -> b a\n")
        assert g.terminals == ("a", "b")

    def test_serialize_needs_single_letter_terminals(self):
        g = Cfg(("a", "M_a_b"), ("S",), [("S", ("a", "M_a_b"))], "S")
        with pytest.raises(UnsupportedError):
            serialize_grammar(g)


class TestDfaFormat:
    def test_round_trip(self):
        d = regex_to_dfa(parse_regex("a*b"), ("a", "b"))
        again = parse_dfa(serialize_dfa(d))
        assert dfa_equivalent(d, again)

    def test_missing_transition(self):
        text = "alphabet a\nstates 2\nstart 0\nfinal 1\n0 a 1\n"
        with pytest.raises(ParseError):
            parse_dfa(text)

    def test_duplicate_transition(self):
        text = "alphabet a\nstates 1\nstart 0\nfinal 0\n0 a 0\n0 a 0\n"
        with pytest.raises(ParseError):
            parse_dfa(text)

    def test_state_out_of_range(self):
        text = "alphabet a\nstates 1\nstart 0\nfinal 0\n0 a 4\n"
        with pytest.raises(ParseError):
            parse_dfa(text)

    def test_unknown_letter(self):
        text = "alphabet a\nstates 1\nstart 0\nfinal 0\n0 b 0\n"
        with pytest.raises(ParseError):
            parse_dfa(text)
