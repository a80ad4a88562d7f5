"""Deterministic finite automata and regular expressions.

Every public constructor and operation returns a *normalized* DFA: total,
trimmed, minimized, and renumbered by breadth-first discovery order.  Two
normalized DFAs over the same alphabet accept the same language iff they
are structurally equal, which makes equivalence checks trivial and all
outputs deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import Alphabet, ParseError


@dataclass(frozen=True)
class Dfa:
    """A total DFA; ``transitions[state][letter_index]`` is the target."""

    alphabet: tuple[str, ...]
    transitions: tuple[tuple[int, ...], ...]
    start: int
    finals: frozenset[int]

    @property
    def n_states(self) -> int:
        return len(self.transitions)

    def step(self, state: int, letter: str) -> int:
        return self.transitions[state][self.alphabet.index(letter)]

    def accepts(self, word: str) -> bool:
        index = {a: i for i, a in enumerate(self.alphabet)}
        state = self.start
        for ch in word:
            if ch not in index:
                return False
            state = self.transitions[state][index[ch]]
        return state in self.finals


def _normalize(
    alphabet: tuple[str, ...],
    delta: list[list[int]],
    start: int,
    finals: set[int],
) -> Dfa:
    """Trim, minimize (partition refinement), and renumber by BFS order."""
    n = len(delta)
    k = len(alphabet)
    reachable = {start}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for t in delta[s]:
            if t not in reachable:
                reachable.add(t)
                queue.append(t)
    # Map unreachable states out of the picture by working on reachables
    # plus one implicit dead sink that trimming may need.
    states = sorted(reachable)
    pos = {s: i for i, s in enumerate(states)}
    m = len(states)
    dd = [[pos[delta[s][a]] for a in range(k)] for s in states]
    ff = {pos[s] for s in states if s in finals}
    st = pos[start]

    part = [1 if s in ff else 0 for s in range(m)]
    while True:
        sigs: dict[tuple, int] = {}
        new = [0] * m
        for s in range(m):
            sig = (part[s],) + tuple(part[dd[s][a]] for a in range(k))
            new[s] = sigs.setdefault(sig, len(sigs))
        if new == part:
            break
        part = new
    classes = max(part) + 1
    cdelta = [[0] * k for _ in range(classes)]
    cfinals: set[int] = set()
    for s in range(m):
        c = part[s]
        for a in range(k):
            cdelta[c][a] = part[dd[s][a]]
        if s in ff:
            cfinals.add(c)
    cstart = part[st]

    order: dict[int, int] = {cstart: 0}
    queue = deque([cstart])
    while queue:
        s = queue.popleft()
        for a in range(k):
            t = cdelta[s][a]
            if t not in order:
                order[t] = len(order)
                queue.append(t)
    final_delta = [[0] * k for _ in range(len(order))]
    for s, i in order.items():
        for a in range(k):
            final_delta[i][a] = order[cdelta[s][a]]
    return Dfa(
        alphabet=alphabet,
        transitions=tuple(tuple(row) for row in final_delta),
        start=0,
        finals=frozenset(order[s] for s in cfinals),
    )


class Nfa:
    """Work-in-progress NFA with epsilon moves; determinize to get a Dfa."""

    def __init__(self, alphabet: tuple[str, ...]):
        self.alphabet = tuple(alphabet)
        self.edges: list[dict[str | None, set[int]]] = []
        self.start = self.new_state()
        self.finals: set[int] = set()

    def new_state(self) -> int:
        self.edges.append({})
        return len(self.edges) - 1

    def add_edge(self, src: int, symbol: str | None, dst: int) -> None:
        self.edges[src].setdefault(symbol, set()).add(dst)

    def add_word_path(self, src: int, word: str) -> int:
        """A fresh chain of states reading ``word`` from ``src``."""
        cur = src
        for ch in word:
            nxt = self.new_state()
            self.add_edge(cur, ch, nxt)
            cur = nxt
        return cur

    def _closure(self, states: frozenset[int]) -> frozenset[int]:
        seen = set(states)
        stack = list(states)
        while stack:
            s = stack.pop()
            for t in self.edges[s].get(None, ()):
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)

    def determinize(self) -> Dfa:
        k = len(self.alphabet)
        start = self._closure(frozenset([self.start]))
        ids: dict[frozenset[int], int] = {start: 0}
        delta: list[list[int]] = []
        queue = deque([start])
        subsets = [start]
        while queue:
            cur = queue.popleft()
            row = [0] * k
            for a, letter in enumerate(self.alphabet):
                move = set()
                for s in cur:
                    move |= self.edges[s].get(letter, set())
                nxt = self._closure(frozenset(move))
                if nxt not in ids:
                    ids[nxt] = len(subsets)
                    subsets.append(nxt)
                    queue.append(nxt)
                row[a] = ids[nxt]
            delta.append(row)
        finals = {i for i, sub in enumerate(subsets) if sub & self.finals}
        return _normalize(self.alphabet, delta, 0, finals)


def _letters(alphabet) -> tuple[str, ...]:
    if isinstance(alphabet, Alphabet):
        return alphabet.letters
    return tuple(sorted(alphabet))


# --------------------------------------------------------------------------
# Simple constructors


def dfa_none(alphabet) -> Dfa:
    """The empty language."""
    letters = _letters(alphabet)
    return Dfa(letters, (tuple(0 for _ in letters),), 0, frozenset())


def dfa_all(alphabet) -> Dfa:
    """All words, including the empty one."""
    letters = _letters(alphabet)
    return Dfa(letters, (tuple(0 for _ in letters),), 0, frozenset([0]))


def dfa_from_words(alphabet, words) -> Dfa:
    """The finite language consisting of exactly ``words``."""
    letters = _letters(alphabet)
    nfa = Nfa(letters)
    for w in words:
        end = nfa.add_word_path(nfa.start, w)
        nfa.finals.add(end)
    return nfa.determinize()


def pattern_dfa(alphabet, prefix: str = "", suffix: str = "") -> Dfa:
    """The language ``prefix A* suffix`` (formal concatenation)."""
    letters = _letters(alphabet)
    nfa = Nfa(letters)
    loop = nfa.add_word_path(nfa.start, prefix)
    for ch in letters:
        nfa.add_edge(loop, ch, loop)
    end = nfa.add_word_path(loop, suffix)
    nfa.finals.add(end)
    return nfa.determinize()


# --------------------------------------------------------------------------
# Regular expressions

# AST nodes: ("empty",) ("eps",) ("lit", ch) ("union", parts) ("cat", parts)
# ("star", body)

EMPTY = ("empty",)
EPS = ("eps",)


def lit(ch: str) -> tuple:
    return ("lit", ch)


def union(*parts: tuple) -> tuple:
    flat: list[tuple] = []
    for p in parts:
        if p == EMPTY:
            continue
        if p[0] == "union":
            flat.extend(p[1])
        elif p not in flat:
            flat.append(p)
    if not flat:
        return EMPTY
    if len(flat) == 1:
        return flat[0]
    return ("union", tuple(flat))


def cat(*parts: tuple) -> tuple:
    flat: list[tuple] = []
    for p in parts:
        if p == EMPTY:
            return EMPTY
        if p == EPS:
            continue
        if p[0] == "cat":
            flat.extend(p[1])
        else:
            flat.append(p)
    if not flat:
        return EPS
    if len(flat) == 1:
        return flat[0]
    return ("cat", tuple(flat))


def star(body: tuple) -> tuple:
    if body in (EMPTY, EPS):
        return EPS
    if body[0] == "star":
        return body
    return ("star", body)


_REGEX_META = set("()|*+?_ \t")


def parse_regex(text: str) -> tuple:
    """Parse the concrete regex syntax: letters, ``|``, juxtaposition,
    ``*``, ``+``, ``?``, parentheses, and ``_`` for the empty word."""
    pos = 0

    def peek() -> str | None:
        nonlocal pos
        while pos < len(text) and text[pos] in " \t":
            pos += 1
        return text[pos] if pos < len(text) else None

    def parse_alt() -> tuple:
        parts = [parse_seq()]
        while peek() == "|":
            nonlocal pos
            pos += 1
            parts.append(parse_seq())
        return union(*parts)

    def parse_seq() -> tuple:
        items = []
        while True:
            ch = peek()
            if ch is None or ch in ")|":
                break
            items.append(parse_item())
        if not items:
            raise ParseError("empty regex branch; use _ for the empty word")
        return cat(*items)

    def parse_item() -> tuple:
        nonlocal pos
        ch = peek()
        if ch == "(":
            pos += 1
            inner = parse_alt()
            if peek() != ")":
                raise ParseError("unbalanced parenthesis in regex")
            pos += 1
            node = inner
        elif ch == "_":
            pos += 1
            node = EPS
        elif ch is None or ch in _REGEX_META:
            raise ParseError(f"unexpected {ch!r} in regex")
        else:
            pos += 1
            node = lit(ch)
        while True:
            nxt = peek()
            if nxt == "*":
                pos += 1
                node = star(node)
            elif nxt == "+":
                pos += 1
                node = cat(node, star(node))
            elif nxt == "?":
                pos += 1
                node = union(EPS, node)
            else:
                return node

    node = parse_alt()
    if peek() is not None:
        raise ParseError(f"trailing {peek()!r} in regex")
    return node


def regex_letters(node: tuple) -> set[str]:
    if node[0] == "lit":
        return {node[1]}
    if node[0] in ("union", "cat"):
        out: set[str] = set()
        for p in node[1]:
            out |= regex_letters(p)
        return out
    if node[0] == "star":
        return regex_letters(node[1])
    return set()


def regex_to_dfa(regex, alphabet) -> Dfa:
    """Compile a regex (text or AST) to the minimal DFA over ``alphabet``."""
    node = parse_regex(regex) if isinstance(regex, str) else regex
    letters = _letters(alphabet)
    extra = regex_letters(node) - set(letters)
    if extra:
        raise ValueError(f"regex uses letters outside the alphabet: {sorted(extra)}")
    nfa = Nfa(letters)

    def build(n: tuple, src: int) -> int:
        if n == EMPTY:
            return nfa.new_state()
        if n == EPS:
            return src
        kind = n[0]
        if kind == "lit":
            dst = nfa.new_state()
            nfa.add_edge(src, n[1], dst)
            return dst
        if kind == "cat":
            cur = src
            for p in n[1]:
                cur = build(p, cur)
            return cur
        if kind == "union":
            out = nfa.new_state()
            for p in n[1]:
                end = build(p, src)
                nfa.add_edge(end, None, out)
            return out
        if kind == "star":
            hub = nfa.new_state()
            nfa.add_edge(src, None, hub)
            end = build(n[1], hub)
            nfa.add_edge(end, None, hub)
            return hub
        raise ValueError(f"bad regex node {n!r}")

    end = build(node, nfa.start)
    nfa.finals.add(end)
    return nfa.determinize()


def render_regex(node: tuple) -> str:
    """Render an AST back to the concrete syntax (no node for the empty
    language: callers must special-case it)."""
    kind = node[0]
    if kind == "eps":
        return "_"
    if kind == "lit":
        return node[1]
    if kind == "star":
        body = node[1]
        inner = render_regex(body)
        if body[0] in ("union", "cat"):
            inner = f"({inner})"
        return inner + "*"
    if kind == "cat":
        parts = []
        for p in node[1]:
            s = render_regex(p)
            if p[0] == "union":
                s = f"({s})"
            parts.append(s)
        return "".join(parts)
    if kind == "union":
        return "|".join(render_regex(p) for p in node[1])
    raise ValueError(f"cannot render {node!r}")


# --------------------------------------------------------------------------
# Boolean algebra and decision procedures


def _require_same_alphabet(a: Dfa, b: Dfa) -> None:
    if a.alphabet != b.alphabet:
        raise ValueError(f"alphabet mismatch: {a.alphabet} vs {b.alphabet}")


def dfa_boolean(op: str, a: Dfa, b: Dfa) -> Dfa:
    """Product construction for union / intersect / difference."""
    _require_same_alphabet(a, b)
    k = len(a.alphabet)
    ids: dict[tuple[int, int], int] = {(a.start, b.start): 0}
    pairs = [(a.start, b.start)]
    delta: list[list[int]] = []
    i = 0
    while i < len(pairs):
        s, t = pairs[i]
        row = [0] * k
        for x in range(k):
            nxt = (a.transitions[s][x], b.transitions[t][x])
            if nxt not in ids:
                ids[nxt] = len(pairs)
                pairs.append(nxt)
            row[x] = ids[nxt]
        delta.append(row)
        i += 1
    if op == "union":
        keep = lambda s, t: s in a.finals or t in b.finals
    elif op == "intersect":
        keep = lambda s, t: s in a.finals and t in b.finals
    elif op == "difference":
        keep = lambda s, t: s in a.finals and t not in b.finals
    else:
        raise ValueError(f"unknown boolean op {op!r}")
    finals = {ids[(s, t)] for (s, t) in pairs if keep(s, t)}
    return _normalize(a.alphabet, delta, 0, finals)


def dfa_union(a: Dfa, b: Dfa) -> Dfa:
    return dfa_boolean("union", a, b)


def dfa_intersect(a: Dfa, b: Dfa) -> Dfa:
    return dfa_boolean("intersect", a, b)


def dfa_difference(a: Dfa, b: Dfa) -> Dfa:
    return dfa_boolean("difference", a, b)


def dfa_complement(a: Dfa) -> Dfa:
    finals = set(range(a.n_states)) - set(a.finals)
    return _normalize(a.alphabet, [list(r) for r in a.transitions], a.start, finals)


def dfa_empty(a: Dfa) -> bool:
    """Normalized DFAs are trimmed, so emptiness is the absence of finals."""
    return not a.finals


def dfa_shortest(a: Dfa) -> str | None:
    """Length-lex least accepted word, or None for the empty language."""
    if a.start in a.finals:
        return ""
    words = {a.start: ""}
    queue = deque([a.start])
    while queue:
        s = queue.popleft()
        for x, letter in enumerate(a.alphabet):
            t = a.transitions[s][x]
            if t not in words:
                words[t] = words[s] + letter
                if t in a.finals:
                    return words[t]
                queue.append(t)
    return None


def difference_witness(a: Dfa, b: Dfa) -> str | None:
    """Length-lex least word accepted by ``a`` but not ``b``."""
    return dfa_shortest(dfa_difference(a, b))


def dfa_subset(a: Dfa, b: Dfa) -> bool:
    return dfa_empty(dfa_difference(a, b))


def dfa_equivalent(a: Dfa, b: Dfa) -> bool:
    _require_same_alphabet(a, b)
    return a == b


def _live_states(a: Dfa) -> set[int]:
    """States on some accepting path (all states are reachable already)."""
    rev: dict[int, set[int]] = {s: set() for s in range(a.n_states)}
    for s in range(a.n_states):
        for t in a.transitions[s]:
            rev[t].add(s)
    live = set(a.finals)
    queue = deque(a.finals)
    while queue:
        s = queue.popleft()
        for p in rev[s]:
            if p not in live:
                live.add(p)
                queue.append(p)
    return live


def dfa_is_finite(a: Dfa) -> bool:
    """Finite iff no cycle passes through a live state."""
    live = _live_states(a)
    color: dict[int, int] = {}

    def dfs(s: int) -> bool:
        color[s] = 1
        for t in a.transitions[s]:
            if t not in live:
                continue
            if color.get(t) == 1:
                return False
            if t not in color and not dfs(t):
                return False
        color[s] = 2
        return True

    return all(dfs(s) for s in sorted(live) if s not in color)


def pump_witness(a: Dfa) -> tuple[str, str, str] | None:
    """For an infinite language, a decomposition (x, y, z) with nonempty
    ``y`` such that every ``x y^k z`` is accepted; None when finite."""
    live = _live_states(a)
    if a.start not in live:
        return None

    def shortest_path(src: int, targets: set[int], allowed: set[int]) -> tuple[str, int] | None:
        if src in targets:
            return "", src
        words = {src: ""}
        queue = deque([src])
        while queue:
            s = queue.popleft()
            for x, letter in enumerate(a.alphabet):
                t = a.transitions[s][x]
                if t not in allowed or t in words:
                    continue
                words[t] = words[s] + letter
                if t in targets:
                    return words[t], t
                queue.append(t)
        return None

    for pivot in sorted(live):
        # A nonempty cycle from pivot back to pivot through live states.
        best = None
        for x, letter in enumerate(a.alphabet):
            t = a.transitions[pivot][x]
            if t not in live:
                continue
            hit = shortest_path(t, {pivot}, live)
            if hit is not None:
                cand = letter + hit[0]
                if best is None or (len(cand), cand) < (len(best), best):
                    best = cand
        if best is None:
            continue
        to_pivot = shortest_path(a.start, {pivot}, live)
        from_pivot = shortest_path(pivot, set(a.finals), live)
        if to_pivot is not None and from_pivot is not None:
            return to_pivot[0], best, from_pivot[0]
    return None


def state_languages(a: Dfa, q: int) -> tuple[Dfa, Dfa]:
    """(words leading from the start to ``q``, words leading from ``q`` to
    acceptance)."""
    if not 0 <= q < a.n_states:
        raise ValueError(f"no state {q}")
    delta = [list(r) for r in a.transitions]
    left = _normalize(a.alphabet, delta, a.start, {q})
    right = _normalize(a.alphabet, delta, q, set(a.finals))
    return left, right


def dfa_concat(a: Dfa, b: Dfa) -> Dfa:
    _require_same_alphabet(a, b)
    nfa = Nfa(a.alphabet)
    base_a = [nfa.new_state() for _ in range(a.n_states)]
    base_b = [nfa.new_state() for _ in range(b.n_states)]
    nfa.add_edge(nfa.start, None, base_a[a.start])
    for s in range(a.n_states):
        for x, letter in enumerate(a.alphabet):
            nfa.add_edge(base_a[s], letter, base_a[a.transitions[s][x]])
    for s in range(b.n_states):
        for x, letter in enumerate(b.alphabet):
            nfa.add_edge(base_b[s], letter, base_b[b.transitions[s][x]])
    for f in a.finals:
        nfa.add_edge(base_a[f], None, base_b[b.start])
    nfa.finals = {base_b[f] for f in b.finals}
    return nfa.determinize()


def conjugacy_closure(a: Dfa) -> Dfa:
    """All rotations of all accepted words.

    For every guessed split state g the machine reads the suffix part from
    g to acceptance, jumps back to the original start, and must end the
    prefix part exactly at g.
    """
    nfa = Nfa(a.alphabet)
    phase1 = {}
    phase2 = {}
    for g in range(a.n_states):
        for s in range(a.n_states):
            phase1[(s, g)] = nfa.new_state()
            phase2[(s, g)] = nfa.new_state()
    for g in range(a.n_states):
        nfa.add_edge(nfa.start, None, phase1[(g, g)])
        for s in range(a.n_states):
            for x, letter in enumerate(a.alphabet):
                t = a.transitions[s][x]
                nfa.add_edge(phase1[(s, g)], letter, phase1[(t, g)])
                nfa.add_edge(phase2[(s, g)], letter, phase2[(t, g)])
            if s in a.finals:
                nfa.add_edge(phase1[(s, g)], None, phase2[(a.start, g)])
        nfa.finals.add(phase2[(g, g)])
    return nfa.determinize()


def enumerate_dfa(a: Dfa, max_len: int) -> list[str]:
    """Accepted words of length <= max_len in length-lex order."""
    dist: dict[int, int] = {f: 0 for f in a.finals}
    queue = deque(a.finals)
    rev: dict[int, set[int]] = {s: set() for s in range(a.n_states)}
    for s in range(a.n_states):
        for t in a.transitions[s]:
            rev[t].add(s)
    while queue:
        s = queue.popleft()
        for p in rev[s]:
            if p not in dist:
                dist[p] = dist[s] + 1
                queue.append(p)
    out: list[str] = []

    def gen(state: int, prefix: str, remaining: int) -> None:
        if remaining == 0:
            if state in a.finals:
                out.append(prefix)
            return
        for x, letter in enumerate(a.alphabet):
            t = a.transitions[state][x]
            if dist.get(t, max_len + 1) <= remaining - 1:
                gen(t, prefix + letter, remaining - 1)

    for length in range(max_len + 1):
        if dist.get(a.start, max_len + 1) <= length:
            gen(a.start, "", length)
    return out


def dfa_to_regex(a: Dfa) -> tuple:
    """Recover a regex AST by state elimination; EMPTY for the empty
    language."""
    if dfa_empty(a):
        return EMPTY
    n = a.n_states
    src, dst = n, n + 1  # fresh outer start / accept
    edge: dict[tuple[int, int], tuple] = {}

    def add(i: int, j: int, r: tuple) -> None:
        if r == EMPTY:
            return
        edge[(i, j)] = union(edge.get((i, j), EMPTY), r)

    for s in range(n):
        for x, letter in enumerate(a.alphabet):
            add(s, a.transitions[s][x], lit(letter))
    add(src, a.start, EPS)
    for f in a.finals:
        add(f, dst, EPS)
    for mid in range(n):
        loop = edge.pop((mid, mid), EMPTY)
        loop_star = star(loop) if loop != EMPTY else EPS
        ins = [(i, r) for (i, j), r in edge.items() if j == mid and i != mid]
        outs = [(j, r) for (i, j), r in edge.items() if i == mid and j != mid]
        for key in [k for k in edge if mid in k]:
            edge.pop(key)
        for i, rin in ins:
            for j, rout in outs:
                add(i, j, cat(rin, loop_star, rout))
    return edge.get((src, dst), EMPTY)
