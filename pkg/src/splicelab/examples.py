"""Ready-made splicing systems exercising every capability of the library.

Each function builds a small, well-understood system; the module is the
shared fixture pool for the test suite, the demos, and quick REPL
experiments.
"""

from __future__ import annotations

from .automata import parse_regex, regex_to_dfa
from .core import (
    CIRCULAR,
    CONCAT,
    FLAT,
    Alphabet,
    InitialSet,
    SplicingRule,
    SplicingSystem,
)


def regular_initial(regex: str, alphabet: Alphabet) -> InitialSet:
    """A regular initial set from a pattern, remembering its source."""
    dfa = regex_to_dfa(parse_regex(regex), alphabet.letters)
    return InitialSet.regular(dfa, source_regex=regex)


def anbn() -> SplicingSystem:
    """One rule a#b$a#b over the axiom ab: generates { aⁿbⁿ : n ≥ 1 }."""
    return SplicingSystem(
        alphabet=Alphabet("ab"),
        initial=InitialSet.finite(["ab"]),
        rules=frozenset([SplicingRule("a", "b", "a", "b")]),
        mode=FLAT,
    )


def anbn_circular() -> SplicingSystem:
    """The circular twin of anbn: generates { ⟲(aⁿbⁿ) : n ≥ 1 }."""
    return SplicingSystem(
        alphabet=Alphabet("ab"),
        initial=InitialSet.finite(["ab"]),
        rules=frozenset([SplicingRule("a", "b", "a", "b")]),
        mode=CIRCULAR,
    )


def dyck() -> SplicingSystem:
    """The fully unconstrained rule over axiom ab: nonempty balanced words,
    reading a as an opening and b as a closing parenthesis."""
    return SplicingSystem(
        alphabet=Alphabet("ab"),
        initial=InitialSet.finite(["ab"]),
        rules=frozenset([SplicingRule("", "", "", "")]),
        mode=FLAT,
    )


def nested_insertions() -> SplicingSystem:
    """Pure insertion system over the regular axioms c*ab ∪ c; insertions
    stack blocks of aⁿbⁿ and single c's behind a leading c."""
    alphabet = Alphabet("abc")
    return SplicingSystem(
        alphabet=alphabet,
        initial=regular_initial("c*ab|c", alphabet),
        rules=frozenset(
            [
                SplicingRule("c", "b", "", "a"),
                SplicingRule("c", "c", "", "b"),
                SplicingRule("a", "b", "a", "b"),
            ]
        ),
        mode=FLAT,
    )


def concat_chain() -> SplicingSystem:
    """Concatenation-only system generating c*ab ∪ {c}: anything ending in
    c may absorb a word ending in b on its right."""
    rules = [SplicingRule("", "c", "", "b", usage=CONCAT)]
    rules += [SplicingRule("", "c", x, "b", usage=CONCAT) for x in "abc"]
    return SplicingSystem(
        alphabet=Alphabet("abc"),
        initial=InitialSet.finite(["ab", "c"]),
        rules=frozenset(rules),
        mode=FLAT,
    )


def mixed_system() -> SplicingSystem:
    """Insertions plus an end-extension rule: the pipeline showcase whose
    language is built from c*ab ∪ c by stacking aⁿbⁿ blocks."""
    return SplicingSystem(
        alphabet=Alphabet("abc"),
        initial=InitialSet.finite(["ab", "c"]),
        rules=frozenset(
            [
                SplicingRule("a", "b", "a", "b"),
                SplicingRule("c", "", "", "b"),
            ]
        ),
        mode=FLAT,
    )


def paired_concat() -> SplicingSystem:
    """Concatenation system with a non-regular language: grows matched
    (ac)ⁿ…(db)ⁿ pairs around ab."""
    return SplicingSystem(
        alphabet=Alphabet("abcd"),
        initial=InitialSet.finite(["ab", "a", "b", "c", "d"]),
        rules=frozenset(
            [
                SplicingRule("", "c", "a", "b", usage=CONCAT),
                SplicingRule("c", "b", "d", "", usage=CONCAT),
                SplicingRule("", "a", "c", "d", usage=CONCAT),
                SplicingRule("a", "d", "b", "", usage=CONCAT),
            ]
        ),
        mode=FLAT,
    )


def doubling() -> SplicingSystem:
    """Non-alphabetic system whose bracketed words double: between the
    markers x and y, the closure holds exactly the (0123)^(2ⁿ) powers.
    Four sweep pairs insert 0, 1, 2, 3 in turn at the head of each block."""
    u = "0123"
    rules = [
        SplicingRule("x", u, "0", ""),
        SplicingRule("0" + u, u, "0", ""),
        SplicingRule("0", u + "y", "1", ""),
        SplicingRule("0", u + "01" + u, "1", ""),
        SplicingRule("x01", u, "2", ""),
        SplicingRule("012" + u + "01", u, "2", ""),
        SplicingRule("012", u + "y", "3", ""),
        SplicingRule("012", u * 3, "3", ""),
    ]
    return SplicingSystem(
        alphabet=Alphabet("0123xy"),
        initial=InitialSet.finite(["x" + u + "y", "0", "1", "2", "3"]),
        rules=frozenset(rules),
        mode=FLAT,
    )


ALL_EXAMPLES = {
    "anbn": anbn,
    "anbn_circular": anbn_circular,
    "dyck": dyck,
    "nested_insertions": nested_insertions,
    "concat_chain": concat_chain,
    "mixed_system": mixed_system,
    "paired_concat": paired_concat,
    "doubling": doubling,
}
