"""Shared test utilities: independent oracles and random generators.

The oracles here deliberately avoid the library's own application and
closure code paths; they re-derive results from the definitions with
plain string manipulation so that agreement is meaningful.
"""

from __future__ import annotations

import random
from functools import lru_cache

from splicelab.core import (
    CIRCULAR,
    CONCAT,
    FLAT,
    SPLICE,
    Alphabet,
    InitialSet,
    SplicingRule,
    SplicingSystem,
)
from splicelab.grammar import Cfg, GeneralizedCfg, enumerate_cfg_tuples

# --------------------------------------------------------------------------
# Independent regex matcher (over the parsed AST)


def regex_matches(node: tuple, word: str) -> bool:
    @lru_cache(maxsize=None)
    def go(n: tuple, w: str) -> bool:
        kind = n[0]
        if kind == "empty":
            return False
        if kind == "eps":
            return w == ""
        if kind == "lit":
            return w == n[1]
        if kind == "union":
            return any(go(p, w) for p in n[1])
        if kind == "cat":
            parts = n[1]
            if not parts:
                return w == ""
            rest = ("cat", parts[1:])
            return any(go(parts[0], w[:i]) and go(rest, w[i:]) for i in range(len(w) + 1))
        if kind == "star":
            if w == "":
                return True
            return any(go(n[1], w[:i]) and go(n, w[i:]) for i in range(1, len(w) + 1))
        raise AssertionError(f"unknown node {n!r}")

    return go(node, word)


# --------------------------------------------------------------------------
# Naive splicing closure (independent of splicelab.closure)


def _fits(word: str, prefix: str, suffix: str) -> bool:
    if prefix and suffix:
        return (
            len(word) >= len(prefix) + len(suffix)
            and word.startswith(prefix)
            and word.endswith(suffix)
        )
    if prefix:
        return word.startswith(prefix)
    if suffix:
        return word.endswith(suffix)
    return True


def naive_apply(rule: SplicingRule, u: str, v: str) -> set[str]:
    """Every word producible from the ordered pair (u, v) by the rule."""
    out: set[str] = set()
    if not _fits(v, rule.gamma, rule.delta):
        return out
    if rule.usage == CONCAT:
        if _fits(u, rule.alpha, rule.beta):
            out.add(u + v)
        return out
    for cut in range(len(u) + 1):
        if u[:cut].endswith(rule.alpha) and u[cut:].startswith(rule.beta):
            out.add(u[:cut] + v + u[cut:])
    return out


def naive_flat_closure(system: SplicingSystem, max_len: int) -> set[str]:
    words = {w for w in system.initial.enumerate(max_len) if w}
    rules = sorted(system.rules)
    while True:
        fresh: set[str] = set()
        for u in words:
            for v in words:
                if len(u) + len(v) > max_len:
                    continue
                for rule in rules:
                    fresh |= naive_apply(rule, u, v)
        fresh = {w for w in fresh if len(w) <= max_len} - words
        if not fresh:
            return words
        words |= fresh


def rotations(word: str) -> set[str]:
    return {word[i:] + word[:i] for i in range(max(len(word), 1))}


def in_one_step_image(accepts, rules, word: str) -> bool:
    """Whether ``word`` arises from one rule application to two accepted
    words.  Operand lengths always sum to the result's length, so all
    candidate pairs come from cutting ``word`` apart."""
    n = len(word)
    for rule in rules:
        if rule.usage == CONCAT:
            for i in range(n + 1):
                u, v = word[:i], word[i:]
                if word in naive_apply(rule, u, v) and accepts(u) and accepts(v):
                    return True
            continue
        for i in range(n + 1):
            for j in range(i, n + 1):
                u, v = word[:i] + word[j:], word[i:j]
                if not (accepts(u) and accepts(v)):
                    continue
                if word in naive_apply(rule, u, v):
                    return True
    return False


def is_balanced(word: str, open_ch: str = "a", close_ch: str = "b") -> bool:
    """Nonempty word over {open, close} that is well-nested as brackets."""
    if not word or set(word) - {open_ch, close_ch}:
        return False
    depth = 0
    for ch in word:
        depth += 1 if ch == open_ch else -1
        if depth < 0:
            return False
    return depth == 0


def naive_circular_closure(system: SplicingSystem, max_len: int) -> set[str]:
    """Closure of a circular system, returned as the full set of rotations
    of its members (the flat shadow of the circular language)."""
    words: set[str] = set()
    for w in system.initial.enumerate(max_len):
        if w:
            words |= rotations(w)
    rules = sorted(system.rules)
    while True:
        fresh: set[str] = set()
        for u in words:
            for v in words:
                if len(u) + len(v) > max_len:
                    continue
                for rule in rules:
                    # u here ranges over all rotations, so it plays the role
                    # of the linear form beta.x.alpha directly; likewise v
                    # must lie in gamma A* delta
                    if not _fits(v, rule.gamma, rule.delta):
                        continue
                    if not _fits(u, rule.beta, rule.alpha):
                        continue
                    fresh |= rotations(u + v)
        fresh = {w for w in fresh if len(w) <= max_len} - words
        if not fresh:
            return words
        words |= fresh


# --------------------------------------------------------------------------
# Random generators (all driven by an explicit random.Random)


def random_word(rng: random.Random, letters: str, max_len: int = 3) -> str:
    return "".join(rng.choice(letters) for _ in range(rng.randint(1, max_len)))


def random_rule(rng: random.Random, letters: str, usage: str) -> SplicingRule:
    handles = [rng.choice([""] * 2 + list(letters)) for _ in range(4)]
    return SplicingRule(*handles, usage=usage)


def random_system(
    rng: random.Random,
    *,
    max_letters: int = 2,
    max_initial: int = 2,
    max_rules: int = 2,
    usages: tuple[str, ...] = (SPLICE,),
    mode: str = FLAT,
    max_word_len: int = 3,
) -> SplicingSystem:
    letters = "abc"[: rng.randint(1, max_letters)]
    words = {
        random_word(rng, letters, max_word_len)
        for _ in range(rng.randint(1, max_initial))
    }
    rules = {
        random_rule(rng, letters, rng.choice(usages))
        for _ in range(rng.randint(0, max_rules))
    }
    return SplicingSystem(
        alphabet=Alphabet(letters),
        initial=InitialSet.finite(words),
        rules=frozenset(rules),
        mode=mode,
    )


def random_regex(rng: random.Random, letters: str, depth: int = 3) -> str:
    if depth == 0 or rng.random() < 0.3:
        return rng.choice(list(letters) + ["_"])
    shape = rng.randrange(4)
    if shape == 0:
        return random_regex(rng, letters, depth - 1) + random_regex(rng, letters, depth - 1)
    if shape == 1:
        return f"({random_regex(rng, letters, depth - 1)}|{random_regex(rng, letters, depth - 1)})"
    if shape == 2:
        return f"({random_regex(rng, letters, depth - 1)})*"
    return f"({random_regex(rng, letters, depth - 1)})" + rng.choice("+?")


# --------------------------------------------------------------------------
# Lazy expander for generalized grammars (oracle for variable elimination)


def lazy_generalized_words(g: GeneralizedCfg, max_len: int) -> set[str]:
    """Bounded language of a generalized grammar by direct sentential-form
    expansion, replacing one variable occurrence at a time by a word of its
    right-hand-side language."""
    rhs_words: dict[str, list[tuple[str, ...]]] = {}
    for var, lang in g.rhs_languages:
        rhs_words[var] = list(enumerate_cfg_tuples(lang, max_len))
    varset = set(g.variables)

    # least terminal yield of each variable, for pruning sentential forms
    yields: dict[str, float] = {v: float("inf") for v in varset}
    changed = True
    while changed:
        changed = False
        for var, options in rhs_words.items():
            for word in options:
                total = sum(yields[s] if s in varset else len(s) for s in word)
                if total < yields[var]:
                    yields[var] = total
                    changed = True

    def cost(form: tuple[str, ...]) -> float:
        return sum(yields[s] if s in varset else len(s) for s in form)

    done: set[str] = set()
    seen: set[tuple[str, ...]] = set()
    agenda = [(g.start,)]
    while agenda:
        form = agenda.pop()
        if form in seen or cost(form) > max_len:
            continue
        seen.add(form)
        var_at = next((i for i, s in enumerate(form) if s in varset), None)
        if var_at is None:
            done.add("".join(form))
            continue
        for repl in rhs_words[form[var_at]]:
            agenda.append(form[:var_at] + repl + form[var_at + 1 :])
    return done


# --------------------------------------------------------------------------
# Grammar isomorphism (for golden-shape checks, small grammars only)


def cfg_isomorphic(g: Cfg, h: Cfg) -> bool:
    """Whether the grammars are identical up to a renaming of variables
    that fixes the start symbol.  Brute force; intended for tiny grammars."""
    import itertools

    if len(g.variables) != len(h.variables):
        return False
    if sorted(g.terminals) != sorted(h.terminals):
        return False
    if len(g.productions) != len(h.productions):
        return False
    g_vars = sorted(g.variables)
    for perm in itertools.permutations(sorted(h.variables)):
        mapping = dict(zip(g_vars, perm))
        if mapping[g.start] != h.start:
            continue
        mapped = {
            (mapping[head], tuple(mapping.get(s, s) for s in body))
            for head, body in g.productions
        }
        if mapped == set(h.productions):
            return True
    return False


def words_by_length(words, *lengths) -> dict[int, int]:
    counts: dict[int, int] = {n: 0 for n in lengths}
    for w in words:
        if len(w) in counts:
            counts[len(w)] += 1
    return counts
