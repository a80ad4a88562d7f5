"""Ground-truth semantics: bounded closure by saturation, membership by
backtracking tape decomposition, and derivation witnesses.

The bounded closure is exact, not an approximation: every production's
result is as long as both operands together, so the words of the language
up to length n can only ever be built from other words up to length n.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Iterable, Union

from .core import (
    CIRCULAR,
    BudgetExceededError,
    CircularWord,
    InitialRef,
    Production,
    ProductionSequence,
    SpliceError,
    SplicingRule,
    SplicingSystem,
    StepRef,
    UnsupportedError,
    apply_concat,
    canonical_rotation,
    iter_circular_splices,
    iter_splice_cuts,
    matches_pattern,
)

DEFAULT_BUDGET = 10**6

Parent = Union[None, tuple]


def _alphabetic_splice_tables(rules: list[SplicingRule]):
    """Lookup tables for alphabetic splice rules: the set of handle tuples,
    and per-(gamma, delta) the available (alpha, beta) flanks."""
    tuples = set()
    by_gd: dict[tuple[str, str], set[tuple[str, str]]] = defaultdict(set)
    for r in rules:
        tuples.add(r.handles)
        by_gd[(r.gamma, r.delta)].add((r.alpha, r.beta))
    return tuples, by_gd


def _gd_combos(v: str) -> list[tuple[str, str]]:
    """The (gamma, delta) handle pairs an inserted word ``v`` can satisfy
    (alphabetic rules): empty handles always, letter handles matching the
    ends, both-letter handles only when v has two positions."""
    out = [("", "")]
    if v:
        out.append(("", v[-1]))
        out.append((v[0], ""))
        if len(v) >= 2:
            out.append((v[0], v[-1]))
    return list(dict.fromkeys(out))


def _ab_combos(x: str, y: str) -> list[tuple[str, str]]:
    """The (alpha, beta) flank pairs available at a cut with letter ``x``
    on the left (or '' at the word start) and ``y`` on the right."""
    out = [("", "")]
    if y:
        out.append(("", y))
    if x:
        out.append((x, ""))
    if x and y:
        out.append((x, y))
    return out


class _FlatProducer:
    """Enumerates productions between two flat words for a fixed system."""

    def __init__(self, system: SplicingSystem):
        self.splice = system.splice_rules
        self.concat = system.concat_rules
        self.fast = all(r.is_alphabetic for r in self.splice)
        if self.fast:
            self.tuples, self.by_gd = _alphabetic_splice_tables(self.splice)
            self._ab_cache: dict[str, frozenset] = {}

    def _merged_ab(self, v: str) -> frozenset:
        got = self._ab_cache.get(v)
        if got is None:
            merged: set[tuple[str, str]] = set()
            for gd in _gd_combos(v):
                merged |= self.by_gd.get(gd, set())
            got = frozenset(merged)
            self._ab_cache[v] = got
        return got

    def splice_results(self, u: str, v: str):
        """Yield (result, rule, cut) for every insertion of v into u."""
        if not u or not v:
            return
        if self.fast:
            ab = self._merged_ab(v)
            if not ab:
                return
            gds = _gd_combos(v)
            for i in range(len(u) + 1):
                x = u[i - 1] if i else ""
                y = u[i] if i < len(u) else ""
                if not any(p in ab for p in _ab_combos(x, y)):
                    continue
                hit = None
                for a, b in _ab_combos(x, y):
                    for g, d in gds:
                        if (a, b, g, d) in self.tuples:
                            hit = SplicingRule(a, b, g, d)
                            break
                    if hit:
                        break
                if hit is not None:
                    yield u[:i] + v + u[i:], hit, i
        else:
            for rule in self.splice:
                if not matches_pattern(v, rule.gamma, rule.delta):
                    continue
                for i in iter_splice_cuts(rule, u):
                    yield u[:i] + v + u[i:], rule, i

    def concat_results(self, u: str, v: str):
        """Yield at most one (result, rule, cut) for the concatenation uv."""
        for rule in self.concat:
            if apply_concat(rule, u, v) is not None:
                yield u + v, rule, len(u)
                return


def _initial_circular(system: SplicingSystem, max_len: int) -> list[CircularWord]:
    reps: dict[CircularWord, None] = {}
    for w in system.initial.enumerate(max_len):
        reps.setdefault(CircularWord(w), None)
    return sorted(reps, key=CircularWord.sort_key)


def _saturate_flat(system: SplicingSystem, max_len: int):
    produce = _FlatProducer(system)
    order: list[str] = []
    index: dict[str, int] = {}
    parents: dict[str, Parent] = {}
    agenda: deque[str] = deque()

    def add(w: str, parent: Parent) -> None:
        if len(w) > max_len or w in index:
            return
        index[w] = len(order)
        order.append(w)
        parents[w] = parent
        agenda.append(w)

    for w in system.initial.enumerate(max_len):
        add(w, None)
    while agenda:
        z = agenda.popleft()
        peers = order[: index[z] + 1]
        for y in peers:
            if len(z) + len(y) > max_len:
                continue
            for u, v in ((z, y), (y, z)):
                for w, rule, cut in produce.splice_results(u, v):
                    add(w, (rule, u, v, cut))
                for w, rule, cut in produce.concat_results(u, v):
                    add(w, (rule, u, v, cut))
    return index, parents


def _saturate_circular(system: SplicingSystem, max_len: int):
    splice = system.splice_rules
    if system.concat_rules:
        raise UnsupportedError("circular systems take splice rules only")
    order: list[CircularWord] = []
    index: dict[CircularWord, int] = {}
    parents: dict[CircularWord, Parent] = {}
    agenda: deque[CircularWord] = deque()

    def add(w: CircularWord, parent: Parent) -> None:
        if len(w) > max_len or w in index:
            return
        index[w] = len(order)
        order.append(w)
        parents[w] = parent
        agenda.append(w)

    for cw in _initial_circular(system, max_len):
        add(cw, None)
    while agenda:
        z = agenda.popleft()
        peers = order[: index[z] + 1]
        for y in peers:
            if len(z) + len(y) > max_len:
                continue
            for cu, cv in ((z, y), (y, z)):
                for rule in splice:
                    for i, j, w in iter_circular_splices(rule, cu, cv):
                        add(w, (rule, cu, cv, (i, j)))
    return index, parents


def closure_bounded(system: SplicingSystem, max_len: int):
    """All words of the system's language up to ``max_len``, length-lex
    sorted; circular systems yield canonical CircularWords.  The empty
    word never appears (it belongs to the language iff it was an axiom,
    which the loader records separately)."""
    if max_len < 1:
        raise ValueError("the length bound must be at least 1")
    if system.mode == CIRCULAR:
        index, _ = _saturate_circular(system, max_len)
        return sorted(index, key=CircularWord.sort_key)
    index, _ = _saturate_flat(system, max_len)
    return sorted(index, key=lambda w: (len(w), w))


def witness(system: SplicingSystem, word, max_len: int) -> ProductionSequence:
    """A replayable production sequence for ``word``, reconstructed from
    the bounded closure's parent pointers.  Raises SpliceError when the
    word is not in the closure within the bound."""
    if system.mode == CIRCULAR:
        if isinstance(word, str):
            word = CircularWord(word)
        index, parents = _saturate_circular(system, max_len)
    else:
        index, parents = _saturate_flat(system, max_len)
    if word not in index:
        raise SpliceError(f"{word} is not in the closure within length {max_len}")

    steps: list[Production] = []
    refs: dict = {}

    def build(w):
        if w in refs:
            return refs[w]
        parent = parents[w]
        if parent is None:
            ref = InitialRef(w)
        else:
            rule, u, v, cut = parent
            left = build(u)
            right = build(v)
            steps.append(Production(rule, left, right, cut, w))
            ref = StepRef(len(steps) - 1)
        refs[w] = ref
        return ref

    top = build(word)
    if isinstance(top, InitialRef):
        return ProductionSequence((), seed=word)
    return ProductionSequence(tuple(steps))


# --------------------------------------------------------------------------
# Membership by tape decomposition


@dataclass
class _Budget:
    nodes: int

    def spend(self) -> None:
        self.nodes -= 1
        if self.nodes < 0:
            raise BudgetExceededError("membership search budget exceeded")


def _flat_undos(system: SplicingSystem, produce: _FlatProducer, seg: str):
    """Yield undo moves for the last tape segment: each forward production
    that could have produced ``seg``, as (kind, rule, left, right, cut)."""
    n = len(seg)
    if produce.fast:
        for p in range(n + 1):
            for q in range(p + 1, n + 1):
                if p == 0 and q == n:
                    continue
                rest = seg[:p] + seg[q:]
                v = seg[p:q]
                x = seg[p - 1] if p else ""
                y = seg[q] if q < n else ""
                hit = None
                for a, b in _ab_combos(x, y):
                    for g, d in _gd_combos(v):
                        if (a, b, g, d) in produce.tuples:
                            hit = SplicingRule(a, b, g, d)
                            break
                    if hit:
                        break
                if hit is not None:
                    yield ("splice", hit, rest, v, p)
    else:
        seen_spans = set()
        for rule in system.splice_rules:
            for p in range(n + 1):
                for q in range(p + 1, n + 1):
                    if (p == 0 and q == n) or (p, q) in seen_spans:
                        continue
                    v = seg[p:q]
                    if not matches_pattern(v, rule.gamma, rule.delta):
                        continue
                    if rule.alpha and not seg[:p].endswith(rule.alpha):
                        continue
                    if rule.beta and not seg[q:].startswith(rule.beta):
                        continue
                    seen_spans.add((p, q))
                    yield ("splice", rule, seg[:p] + seg[q:], v, p)
    for p in range(1, n):
        u, v = seg[:p], seg[p:]
        for rule in system.concat_rules:
            if apply_concat(rule, u, v) is not None:
                yield ("concat", rule, u, v, p)
                break


def _circular_undos(system: SplicingSystem, seg: CircularWord):
    """Undo moves for a circular segment: pick a rotation, split it into a
    left part matching beta..alpha and a right part matching gamma..delta."""
    rep = seg.representative
    n = len(rep)
    emitted = set()
    for rot in range(n):
        z = rep[rot:] + rep[:rot]
        for k in range(1, n):
            left, right = z[:k], z[k:]
            for rule in system.splice_rules:
                if not matches_pattern(left, rule.beta, rule.alpha):
                    continue
                if not matches_pattern(right, rule.gamma, rule.delta):
                    continue
                cu, cv = CircularWord(left), CircularWord(right)
                i = _rotation_offset(cu.representative, left)
                j = _rotation_offset(cv.representative, right)
                key = (rule, cu, cv, i, j)
                if key in emitted:
                    continue
                emitted.add(key)
                yield ("splice", rule, cu, cv, (i, j))


def _rotation_offset(rep: str, arranged: str) -> int:
    for i in range(len(rep)):
        if rep[i:] + rep[:i] == arranged:
            return i
    raise AssertionError("arranged word is not a rotation of its representative")


def _search(
    system: SplicingSystem,
    produce: _FlatProducer | None,
    tape: tuple,
    failed: set,
    budget: _Budget,
    log: list,
):
    """Depth-first tape decomposition; True iff the tape can be cleared.
    Successful moves are appended to ``log`` (failed branches are rolled
    back), so on success the log read backwards is a forward derivation."""
    if not tape:
        return True
    if tape in failed:
        return False
    budget.spend()
    last = tape[-1]
    if system.initial_contains(last):
        log.append(("axiom", last))
        if _search(system, produce, tape[:-1], failed, budget, log):
            return True
        log.pop()
    if system.mode == CIRCULAR:
        moves = _circular_undos(system, last)
    else:
        assert produce is not None
        moves = _flat_undos(system, produce, last)
    for move in moves:
        kind, rule, left, right, cut = move
        log.append((kind, rule, left, right, cut, last))
        if _search(system, produce, tape[:-1] + (left, right), failed, budget, log):
            return True
        log.pop()
    failed.add(tape)
    return False


def _run_search(system: SplicingSystem, word, budget_nodes: int):
    produce = None if system.mode == CIRCULAR else _FlatProducer(system)
    tape = (word,)
    log: list = []
    ok = _search(system, produce, tape, set(), _Budget(budget_nodes), log)
    return ok, log


def _sequence_from_log(log: list) -> ProductionSequence:
    steps: list[Production] = []
    stack: list[tuple] = []  # (ref, word)
    for entry in reversed(log):
        if entry[0] == "axiom":
            stack.append((InitialRef(entry[1]), entry[1]))
            continue
        kind, rule, left, right, cut, result = entry
        ref_v, got_v = stack.pop()
        ref_u, got_u = stack.pop()
        assert got_u == left and got_v == right, "derivation log out of order"
        steps.append(Production(rule, ref_u, ref_v, cut, result))
        stack.append((StepRef(len(steps) - 1), result))
    assert len(stack) == 1
    if not steps:
        return ProductionSequence((), seed=stack[0][1])
    return ProductionSequence(tuple(steps))


def member(system: SplicingSystem, word, budget: int = DEFAULT_BUDGET) -> bool:
    """Whether ``word`` belongs to the system's language.  The empty word
    is answered from the loader's ε-flag; BudgetExceededError signals an
    inconclusive search."""
    if isinstance(word, str) and word == "":
        return system.initial.had_epsilon
    if system.mode == CIRCULAR and isinstance(word, str):
        word = CircularWord(word)
    ok, _ = _run_search(system, word, budget)
    return ok


def derivation(
    system: SplicingSystem, word, budget: int = DEFAULT_BUDGET
) -> ProductionSequence | None:
    """A replayable derivation of ``word``, or None when it is not in the
    language."""
    if isinstance(word, str) and word == "":
        raise ValueError("the empty word has no derivation; it is axiom-level")
    if system.mode == CIRCULAR and isinstance(word, str):
        word = CircularWord(word)
    ok, log = _run_search(system, word, budget)
    if not ok:
        return None
    return _sequence_from_log(log)
