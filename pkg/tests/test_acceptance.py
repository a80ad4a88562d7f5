"""Acceptance gate: fourteen exact-language criteria covering closures,
grammar compilation, the equality decider, and the system rewrites.

Every check is symbolic (set equality over words, grammar isomorphism);
there are no tolerances.  Each criterion prints one pass/fail line on the
real stdout so the gate's status is readable in any log, regardless of
pytest's capture settings.  Two criteria assert a recorded closed form
that is inconsistent with the language the corresponding system actually
generates; those legs are marked as strict expected failures and each has
a passing sibling asserting the cross-checked language.
"""

import itertools
import random
import sys

import pytest

from splicelab.automata import enumerate_dfa, parse_regex, regex_to_dfa
from splicelab.closure import closure_bounded, witness
from splicelab.core import CIRCULAR, CONCAT, SPLICE, replay_sequence
from splicelab.decider import alphabetic_generability, decide_equal
from splicelab.examples import (
    anbn,
    anbn_circular,
    concat_chain,
    doubling,
    dyck,
    nested_insertions,
    paired_concat,
)
from splicelab.grammar import Cfg, GeneralizedCfg, enumerate_cfg, kral_eliminate
from splicelab.synthesis import concat_grammar, synthesize
from splicelab.transform import (
    circular_to_flat,
    complete_system,
    normalize_sequence,
    to_heterogeneous,
)

from helpers import (
    cfg_isomorphic,
    is_balanced,
    lazy_generalized_words,
    random_regex,
    random_system,
    rotations,
)


def report(capsys, tag: str, ok: bool, note: str = "") -> None:
    line = f"[acceptance] {tag}: {'PASS' if ok else 'FAIL'}"
    if note:
        line += f" ({note})"
    with capsys.disabled():
        print("\n" + line, file=sys.stdout, flush=True)


def blocks(n_max: int) -> list[str]:
    return ["a" * n + "b" * n for n in range(1, n_max + 1)]


def test_criterion_01_block_language(capsys):
    system = anbn()
    want = blocks(6)
    got = closure_bounded(system, 12)
    synth = enumerate_cfg(synthesize(system), 12)
    ok = got == want and synth == want
    report(capsys, "criterion 01 block language", ok)
    assert got == want
    assert synth == want


def test_criterion_02_circular_block_language(capsys):
    system = anbn_circular()
    conj: set[str] = set()
    for w in blocks(5):
        conj |= rotations(w)
    lin: set[str] = set()
    for w in closure_bounded(system, 10):
        lin |= set(w.linearize())
    synth = set(enumerate_cfg(synthesize(system), 10))
    ok = lin == conj and synth == conj
    report(capsys, "criterion 02 circular block language", ok)
    assert lin == conj
    assert synth == conj


def test_criterion_03_balanced_words(capsys):
    system = dyck()
    words = closure_bounded(system, 8)
    counts: dict[int, int] = {}
    for w in words:
        counts[len(w)] = counts.get(len(w), 0) + 1
    oracle = {
        n: sum(1 for t in itertools.product("ab", repeat=n) if is_balanced("".join(t)))
        for n in (2, 4, 6, 8)
    }
    synth = set(enumerate_cfg(synthesize(system), 8))
    ok = counts == oracle == {2: 1, 4: 2, 6: 5, 8: 14} and synth == set(words)
    report(capsys, "criterion 03 balanced words", ok)
    assert oracle == {2: 1, 4: 2, 6: 5, 8: 14}
    assert counts == oracle
    assert synth == set(words)


def test_criterion_04_doubling_blocks(capsys):
    block = "0123"
    closure = set(closure_bounded(doubling(), 14))
    one = "x" + block + "y"
    two = "x" + block * 2 + "y"
    three = "x" + block * 3 + "y"
    ok = one in closure and two in closure and three not in closure
    report(capsys, "criterion 04 doubling blocks", ok)
    assert one in closure
    assert two in closure
    assert len(three) <= 14 and three not in closure


def _pure_insertion_formula(bound: int) -> set[str]:
    """Expansion of c (c ∪ L)⁺ L ∪ {c} with L the block words aⁿbⁿ."""
    units = ["c"] + blocks(bound // 2)
    words = {"c"}

    def grow(prefix: str) -> None:
        for unit in units:
            w = prefix + unit
            if len(w) + 2 <= bound:
                grow(w)
            for tail in blocks(bound // 2):
                if len(w) + len(tail) <= bound:
                    words.add(w + tail)

    grow("c")
    return words


@pytest.mark.xfail(
    strict=True,
    reason="the recorded closed form both omits derivable words (ab, cab, ...) "
    "and contains words the system cannot derive (cabab, ...); the passing "
    "sibling criterion checks the compiled grammar against the closure",
)
def test_criterion_05_pure_insertion_closed_form(capsys):
    synth = set(enumerate_cfg(synthesize(nested_insertions()), 10))
    formula = _pure_insertion_formula(10)
    ok = synth == formula
    report(capsys, "criterion 05 pure insertion closed form", ok, "expected failure")
    assert ok


def test_criterion_05_pure_insertion_grammar_matches_closure(capsys):
    system = nested_insertions()
    synth = set(enumerate_cfg(synthesize(system), 10))
    closure = set(closure_bounded(system, 10))
    ok = synth == closure
    report(capsys, "criterion 05 pure insertion grammar vs closure", ok)
    assert synth == closure


def test_criterion_06_concatenation_language(capsys):
    grammar = concat_grammar(complete_system(concat_chain()))
    want = {"c"} | {"c" * k + "ab" for k in range(0, 7)}
    got = set(enumerate_cfg(grammar, 8))
    ok = got == want
    report(capsys, "criterion 06 concatenation language", ok)
    assert got == want


def _paired_formula(bound: int) -> set[str]:
    """L ∪ cL ∪ cLd ∪ acLd with L = {(ac)ⁿ ab (db)ⁿ}."""
    cores = []
    n = 0
    while 2 + 4 * n <= bound:
        cores.append("ac" * n + "ab" + "db" * n)
        n += 1
    out: set[str] = set()
    for core in cores:
        for w in (core, "c" + core, "c" + core + "d", "ac" + core + "d"):
            if len(w) <= bound:
                out.add(w)
    return out


@pytest.mark.xfail(
    strict=True,
    reason="the recorded closed form omits the four single-letter axioms, "
    "which are part of the language by definition; the passing sibling "
    "criterion checks the closed form plus those axioms",
)
def test_criterion_07_paired_concatenation_closed_form(capsys):
    grammar = concat_grammar(complete_system(paired_concat()))
    got = set(enumerate_cfg(grammar, 10))
    formula = _paired_formula(10)
    ok = got == formula
    report(capsys, "criterion 07 paired concatenation closed form", ok, "expected failure")
    assert ok


def test_criterion_07_paired_concatenation_with_axioms(capsys):
    system = complete_system(paired_concat())
    grammar = concat_grammar(system)
    got = set(enumerate_cfg(grammar, 10))
    want = _paired_formula(10) | {"a", "b", "c", "d"}
    closure = set(closure_bounded(system, 10))
    ok = got == want and got == closure
    report(capsys, "criterion 07 paired concatenation plus axioms", ok)
    assert got == want
    assert got == closure


def test_criterion_08_flattened_circular_closure(capsys):
    flat = circular_to_flat(anbn_circular())
    got = set(closure_bounded(flat, 8))
    want: set[str] = set()
    for n in range(0, 5):
        for m in range(0, 5):
            if n + m >= 1 and 2 * (n + m) <= 8:
                want.add("a" * n + "b" * (n + m) + "a" * m)
                want.add("b" * n + "a" * (n + m) + "b" * m)
    ok = got == want
    report(capsys, "criterion 08 flattened circular closure", ok)
    assert got == want


def test_criterion_09_variable_elimination_golden(capsys):
    rhs = Cfg(
        ("a", "b", "c", "d", "S"),
        ("X", "Y", "Z"),
        [
            ("X", ("a",)),
            ("X", ("S", "Y")),
            ("Y", ("b", "Y", "Z")),
            ("Y", ("b", "Z")),
            ("Z", ("c", "Z")),
            ("Z", ("d",)),
        ],
        "X",
    )
    generalized = GeneralizedCfg(("a", "b", "c", "d"), ("S",), "S", (("S", rhs),))
    flat = kral_eliminate(generalized)
    expected = Cfg(
        ("a", "b", "c", "d"),
        ("S", "X", "Y", "Z"),
        [
            ("S", ("X",)),
            ("X", ("a",)),
            ("X", ("S", "Y")),
            ("Y", ("b", "Y", "Z")),
            ("Y", ("b", "Z")),
            ("Z", ("c", "Z")),
            ("Z", ("d",)),
        ],
        "S",
    )
    same_shape = cfg_isomorphic(flat, expected)
    same_words = set(enumerate_cfg(flat, 6)) == lazy_generalized_words(generalized, 6)
    ok = same_shape and same_words
    report(capsys, "criterion 09 variable elimination golden", ok)
    assert same_shape
    assert same_words


def test_criterion_10_decider_differential(capsys):
    rng = random.Random(100)
    disagreements = []
    for i in range(200):
        system = random_system(rng, usages=(SPLICE, CONCAT))
        letters = system.alphabet.letters
        regex = random_regex(rng, "".join(letters))
        target = regex_to_dfa(parse_regex(regex), letters)
        verdict = decide_equal(system, target)
        closure = set(closure_bounded(system, 8))
        if system.initial.had_epsilon:
            closure.add("")
        words = set(enumerate_dfa(target, 8))
        if target.accepts(""):
            words.add("")
        if verdict.equal != (closure == words):
            disagreements.append((i, regex, verdict))
    ok = not disagreements
    report(capsys, "criterion 10 decider differential", ok, "200 system/regex pairs")
    assert disagreements == []


def test_criterion_11_generability(capsys):
    a_plus = regex_to_dfa(parse_regex("aa*"), ("a",))
    even_blocks = regex_to_dfa(parse_regex("aa(aa)*"), ("a",))
    a_star_b = regex_to_dfa(parse_regex("a*b"), ("a", "b"))
    found_plus = alphabetic_generability(a_plus)
    found_even = alphabetic_generability(even_blocks)
    found_none = alphabetic_generability(a_star_b)
    certified = (
        found_plus is not None
        and decide_equal(found_plus, a_plus).equal
        and found_even is not None
        and decide_equal(found_even, even_blocks).equal
    )
    ok = certified and found_none is None
    report(capsys, "criterion 11 generability", ok)
    assert found_plus is not None and decide_equal(found_plus, a_plus).equal
    assert found_even is not None and decide_equal(found_even, even_blocks).equal
    assert found_none is None


def test_criterion_12_transform_preservation(capsys):
    rng = random.Random(120)
    failures = []
    for i in range(200):
        flat = random_system(rng, usages=(SPLICE, CONCAT))
        base = set(closure_bounded(flat, 7))
        completed = complete_system(flat)
        if set(closure_bounded(completed, 7)) != base:
            failures.append(("complete", i))
        split = to_heterogeneous(completed)
        if set(closure_bounded(split, 7)) != base:
            failures.append(("split", i))
        circ = random_system(rng, mode=CIRCULAR)
        linearized: set[str] = set()
        for w in closure_bounded(circ, 7):
            linearized |= set(w.linearize())
        if set(closure_bounded(circular_to_flat(circ), 7)) != linearized:
            failures.append(("flatten", i))
    ok = not failures
    report(capsys, "criterion 12 transform preservation", ok, "200 systems, 3 rewrites each")
    assert failures == []


def test_criterion_13_sequence_normalization(capsys):
    rng = random.Random(130)
    checked = 0
    while checked < 100:
        system = to_heterogeneous(
            complete_system(random_system(rng, usages=(SPLICE, CONCAT)))
        )
        for word in closure_bounded(system, 6)[:6]:
            seq = witness(system, word, 6)
            if len(seq.steps) > 5:
                continue
            out = normalize_sequence(system, seq)
            usages = [s.rule.usage for s in out.steps]
            first_insert = next(
                (i for i, u in enumerate(usages) if u == SPLICE), len(usages)
            )
            assert all(u == SPLICE for u in usages[first_insert:])
            assert replay_sequence(system, out) == word
            checked += 1
            if checked >= 100:
                break
    report(capsys, "criterion 13 sequence normalization", True, "100 sequences")
    assert checked == 100


def test_criterion_14_end_to_end_synthesis(capsys):
    rng = random.Random(140)
    mismatches = []
    for i in range(100):
        system = random_system(rng, usages=(SPLICE, CONCAT))
        want = set(closure_bounded(system, 8))
        if system.initial.had_epsilon:
            want.add("")
        got = set(enumerate_cfg(synthesize(system), 8))
        if got != want:
            mismatches.append(i)
    ok = not mismatches
    report(capsys, "criterion 14 end-to-end synthesis", ok, "100 systems")
    assert mismatches == []
