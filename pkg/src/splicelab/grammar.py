"""Context-free grammar kernel and the grammar-level constructions used by
the synthesis pipeline.

Symbols are plain strings.  A body symbol is a variable iff it appears in
the grammar's ``variables``; everything else must be a declared terminal.
Terminals are usually single letters, but composite symbols (seam markers
like ``M_a_b``, graft pseudo-terminals) are allowed, so enumeration counts
symbols, not characters.
"""

from __future__ import annotations

import itertools
import re
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable

from .automata import (
    Dfa,
    dfa_empty,
    dfa_intersect,
    pattern_dfa,
)
from .core import Alphabet, InitialSet

Body = tuple[str, ...]

_FRESH = itertools.count()


def fresh_name(base: str, avoid: Iterable[str] = ()) -> str:
    """A new variable name not present in ``avoid``.  The counter is global
    so names minted by nested constructions never collide with each other."""
    avoid = set(avoid)
    while True:
        name = f"{base}{next(_FRESH)}"
        if name not in avoid:
            return name


@dataclass(frozen=True)
class Cfg:
    """An immutable context-free grammar.

    ``variables`` is ordered (declaration order drives elimination order and
    deterministic output); ``productions`` is an ordered, duplicate-free
    list of (head, body) pairs.
    """

    terminals: tuple[str, ...]
    variables: tuple[str, ...]
    productions: tuple[tuple[str, Body], ...]
    start: str

    def __init__(self, terminals, variables, productions, start):
        terminals = tuple(terminals)
        variables = tuple(dict.fromkeys(variables))
        seen: dict[tuple[str, Body], None] = {}
        for head, body in productions:
            seen[(head, tuple(body))] = None
        productions = tuple(seen)
        overlap = set(terminals) & set(variables)
        if overlap:
            raise ValueError(f"symbols both terminal and variable: {sorted(overlap)}")
        if start not in variables:
            raise ValueError(f"start symbol {start!r} is not a variable")
        varset = set(variables)
        known = varset | set(terminals)
        for head, body in productions:
            if head not in varset:
                raise ValueError(f"production head {head!r} is not a variable")
            for sym in body:
                if sym not in known:
                    raise ValueError(f"undeclared symbol {sym!r} in a body")
        object.__setattr__(self, "terminals", terminals)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "productions", productions)
        object.__setattr__(self, "start", start)

    def bodies(self, var: str) -> list[Body]:
        return [b for h, b in self.productions if h == var]

    @property
    def varset(self) -> frozenset[str]:
        return frozenset(self.variables)


def finite_cfg(terminals, words: Iterable[str], start: str | None = None) -> Cfg:
    """A grammar for a finite set of (nonempty or empty) words given as
    strings of single-character terminals."""
    terminals = tuple(terminals)
    start = start or fresh_name("F", terminals)
    prods = [(start, tuple(w)) for w in sorted(set(words), key=lambda w: (len(w), w))]
    return Cfg(terminals, (start,), prods, start)


def cfg_rename(g: Cfg, mapping: dict[str, str]) -> Cfg:
    """Rename variables; ``mapping`` may be partial."""

    def m(sym: str) -> str:
        return mapping.get(sym, sym)

    return Cfg(
        g.terminals,
        tuple(m(v) for v in g.variables),
        tuple((m(h), tuple(m(s) if s in g.varset else s for s in b)) for h, b in g.productions),
        m(g.start),
    )


def cfg_with_terminals(g: Cfg, terminals: Iterable[str]) -> Cfg:
    """The same grammar with an enlarged terminal alphabet."""
    merged = tuple(dict.fromkeys(tuple(g.terminals) + tuple(terminals)))
    return Cfg(merged, g.variables, g.productions, g.start)


# --------------------------------------------------------------------------
# Trimming, emptiness, light simplification


def _generating(g: Cfg) -> set[str]:
    gen: set[str] = set()
    changed = True
    while changed:
        changed = False
        for head, body in g.productions:
            if head in gen:
                continue
            if all(s not in g.varset or s in gen for s in body):
                gen.add(head)
                changed = True
    return gen


def cfg_empty(g: Cfg) -> bool:
    return g.start not in _generating(g)


def cfg_trim(g: Cfg) -> Cfg:
    """Drop non-generating and unreachable variables (and their rules).
    The start variable is always kept, so an empty language trims to a
    grammar with no productions."""
    gen = _generating(g)
    useful = [(h, b) for h, b in g.productions if h in gen and all(s not in g.varset or s in gen for s in b)]
    reach = {g.start}
    changed = True
    while changed:
        changed = False
        for head, body in useful:
            if head in reach:
                for s in body:
                    if s in g.varset and s not in reach:
                        reach.add(s)
                        changed = True
    keep = [v for v in g.variables if v in reach and v in gen]
    if g.start not in keep:
        keep = [g.start] + keep
    prods = [(h, b) for h, b in useful if h in reach]
    return Cfg(g.terminals, keep, prods, g.start)


def cfg_simplify(g: Cfg) -> Cfg:
    """Inline non-start variables that have a single production whose body
    is empty or one symbol, and drop self-loop productions.  Language is
    preserved; shapes get close to hand-written grammars."""
    prods = [(h, b) for h, b in g.productions if b != (h,)]
    variables = list(g.variables)
    while True:
        by_head: dict[str, list[Body]] = defaultdict(list)
        for h, b in prods:
            by_head[h].append(b)
        target = None
        for v in variables:
            if v == g.start:
                continue
            bs = by_head.get(v, [])
            if len(bs) == 1 and len(bs[0]) <= 1 and bs[0] != (v,):
                target = (v, bs[0])
                break
        if target is None:
            break
        v, replacement = target
        new_prods = []
        for h, b in prods:
            if h == v:
                continue
            out: list[str] = []
            for s in b:
                out.extend(replacement if s == v else (s,))
            new_prods.append((h, tuple(out)))
        prods = list(dict.fromkeys(new_prods))
        variables.remove(v)
    return cfg_trim(Cfg(g.terminals, variables, prods, g.start))


_MINTED = re.compile(r"^([A-Z])[0-9]+$")


def cfg_canonical(g: Cfg) -> Cfg:
    """Renumber machine-minted variables (a capital letter plus digits) in
    order of first appearance, so equal constructions serialize to
    identical bytes no matter what the name allocator did.  Hand-named
    variables are left alone."""
    taken = {v for v in g.variables if not _MINTED.match(v)} | set(g.terminals)
    order: list[str] = []
    seen: set[str] = set()

    def visit(sym: str) -> None:
        if sym in g.varset and sym not in seen and _MINTED.match(sym):
            seen.add(sym)
            order.append(sym)

    visit(g.start)
    for head, body in g.productions:
        visit(head)
        for sym in body:
            visit(sym)
    for v in g.variables:
        visit(v)

    mapping: dict[str, str] = {}
    next_index: dict[str, int] = {}
    for v in order:
        letter = _MINTED.match(v).group(1)
        n = next_index.get(letter, 0)
        while True:
            n += 1
            name = f"{letter}{n}"
            if name not in taken:
                break
        next_index[letter] = n
        taken.add(name)
        mapping[v] = name
    return cfg_rename(g, mapping)


# --------------------------------------------------------------------------
# Regular embeddings and intersection


def cfg_from_dfa(d: Dfa, prefix: str = "Q") -> Cfg:
    """Right-linear grammar for the automaton's language."""
    variables = [f"{prefix}{s}" for s in range(d.n_states)]
    prods: list[tuple[str, Body]] = []
    for s in range(d.n_states):
        for x, letter in enumerate(d.alphabet):
            prods.append((variables[s], (letter, variables[d.transitions[s][x]])))
        if s in d.finals:
            prods.append((variables[s], ()))
    g = Cfg(d.alphabet, variables, prods, variables[d.start])
    return cfg_trim(g)


def _binarize(g: Cfg) -> Cfg:
    variables = list(g.variables)
    prods: list[tuple[str, Body]] = []
    avoid = set(g.variables) | set(g.terminals)
    for head, body in g.productions:
        while len(body) > 2:
            link = fresh_name("N", avoid)
            avoid.add(link)
            variables.append(link)
            prods.append((head, (body[0], link)))
            head, body = link, body[1:]
        prods.append((head, body))
    return Cfg(g.terminals, variables, prods, g.start)


def bar_hillel(g: Cfg, d: Dfa) -> Cfg:
    """Grammar for L(g) ∩ L(d) by the triple construction on a binarized
    copy of ``g``."""
    if set(g.terminals) != set(d.alphabet):
        raise ValueError(
            f"terminal alphabet {sorted(g.terminals)} does not match "
            f"automaton alphabet {sorted(d.alphabet)}"
        )
    g = _binarize(g)
    n = d.n_states
    idx = {a: i for i, a in enumerate(d.alphabet)}
    avoid = set(g.variables) | set(g.terminals)
    names: dict[tuple[str, int, int], str] = {}

    def trip(v: str, p: int, q: int) -> str:
        key = (v, p, q)
        if key not in names:
            names[key] = fresh_name("B", avoid)
        return names[key]

    start = fresh_name("B", avoid)
    prods: list[tuple[str, Body]] = []
    for f in sorted(d.finals):
        prods.append((start, (trip(g.start, d.start, f),)))
    for head, body in g.productions:
        if len(body) == 0:
            for p in range(n):
                prods.append((trip(head, p, p), ()))
        elif len(body) == 1:
            s = body[0]
            if s in g.varset:
                for p in range(n):
                    for q in range(n):
                        prods.append((trip(head, p, q), (trip(s, p, q),)))
            else:
                for p in range(n):
                    prods.append((trip(head, p, d.transitions[p][idx[s]]), (s,)))
        else:
            s1, s2 = body
            for p in range(n):
                mids = range(n) if s1 in g.varset else [d.transitions[p][idx[s1]]]
                for q in mids:
                    sym1 = trip(s1, p, q) if s1 in g.varset else s1
                    ends = range(n) if s2 in g.varset else [d.transitions[q][idx[s2]]]
                    for r in ends:
                        sym2 = trip(s2, q, r) if s2 in g.varset else s2
                        prods.append((trip(head, p, r), (sym1, sym2)))
    variables = [start] + list(names.values())
    return cfg_trim(Cfg(g.terminals, variables, prods, start))


# --------------------------------------------------------------------------
# Bounded enumeration


def _min_lengths(g: Cfg) -> dict[str, int | None]:
    """Least derivable word length per variable (None = generates nothing)."""
    best: dict[str, int | None] = {v: None for v in g.variables}
    changed = True
    while changed:
        changed = False
        for head, body in g.productions:
            total = 0
            for s in body:
                part = 1 if s not in g.varset else best[s]
                if part is None:
                    total = None
                    break
                total += part
            if total is not None and (best[head] is None or total < best[head]):
                best[head] = total
                changed = True
    return best


def _compositions(body: Body, total: int, min_of) -> Iterable[tuple[int, ...]]:
    mins = [min_of(s) for s in body]
    if any(m is None for m in mins):
        return
    suffix = [0] * (len(body) + 1)
    for i in range(len(body) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + mins[i]
    acc: list[int] = []

    def rec(i: int, remaining: int):
        if i == len(body):
            if remaining == 0:
                yield tuple(acc)
            return
        hi = remaining - suffix[i + 1]
        for ln in range(mins[i], hi + 1):
            acc.append(ln)
            yield from rec(i + 1, remaining - ln)
            acc.pop()

    yield from rec(0, total)


def enumerate_cfg_tuples(g: Cfg, max_len: int) -> list[Body]:
    """All derivable symbol tuples with at most ``max_len`` symbols, in
    length-lex order.  Exact: a per-(variable, length) fixpoint."""
    minlen = _min_lengths(g)
    if minlen[g.start] is None or max_len < 0:
        return []
    bodies: dict[str, list[Body]] = defaultdict(list)
    for h, b in g.productions:
        bodies[h].append(b)

    def min_of(s: str) -> int | None:
        return minlen[s] if s in g.varset else 1

    table: dict[tuple[str, int], set[Body]] = {}

    def words_of(s: str, ln: int) -> set[Body]:
        if s in g.varset:
            return table.get((s, ln), set())
        return {(s,)} if ln == 1 else set()

    for ln in range(max_len + 1):
        for v in g.variables:
            table[(v, ln)] = set()
        changed = True
        while changed:
            changed = False
            for v in g.variables:
                if minlen[v] is None or minlen[v] > ln:
                    continue
                out = table[(v, ln)]
                before = len(out)
                for body in bodies[v]:
                    for comp in _compositions(body, ln, min_of):
                        parts = [words_of(s, c) for s, c in zip(body, comp)]
                        if any(not p for p in parts):
                            continue
                        for combo in itertools.product(*parts):
                            out.add(sum(combo, ()))
                if len(out) != before:
                    changed = True
    result: list[Body] = []
    for ln in range(max_len + 1):
        result.extend(sorted(table[(g.start, ln)]))
    return result


def enumerate_cfg(g: Cfg, max_len: int) -> list[str]:
    """Derivable words of at most ``max_len`` symbols, joined to strings."""
    return ["".join(t) for t in enumerate_cfg_tuples(g, max_len)]


# --------------------------------------------------------------------------
# Substitution (grafting)


def substitute(g: Cfg, sigma: dict[str, Cfg]) -> Cfg:
    """Replace each terminal ``t`` in ``sigma`` by the language of
    ``sigma[t]``: every grafted grammar is renamed apart and its start
    variable stands in for the terminal.  Keys not among ``g``'s terminals
    are ignored.  Grafted words are final — no re-substitution."""
    applicable = {t: h for t, h in sigma.items() if t in g.terminals}
    variables = list(g.variables)
    prods: list[tuple[str, Body]] = []
    new_terminals = [t for t in g.terminals if t not in applicable]
    starts: dict[str, str] = {}
    avoid = set(g.variables) | set(g.terminals)
    for t in sorted(applicable):
        graft = applicable[t]
        avoid |= set(graft.terminals)
        mapping = {}
        for v in graft.variables:
            mapping[v] = fresh_name("G", avoid)
            avoid.add(mapping[v])
        renamed = cfg_rename(graft, mapping)
        starts[t] = renamed.start
        variables.extend(renamed.variables)
        prods.extend(renamed.productions)
        for term in renamed.terminals:
            if term not in new_terminals:
                new_terminals.append(term)
    body_prods = []
    for head, body in g.productions:
        body_prods.append((head, tuple(starts.get(s, s) for s in body)))
    return Cfg(tuple(new_terminals), variables, body_prods + prods, g.start)


# --------------------------------------------------------------------------
# Generalized grammars and variable elimination


@dataclass(frozen=True)
class GeneralizedCfg:
    """A grammar whose right-hand side per variable is a whole context-free
    language: each ``rhs_languages`` entry maps a variable to a Cfg over
    the terminals plus the generalized variables (treated there as
    terminals)."""

    terminals: tuple[str, ...]
    variables: tuple[str, ...]
    start: str
    rhs_languages: tuple[tuple[str, Cfg], ...]

    def __init__(self, terminals, variables, start, rhs_languages):
        terminals = tuple(terminals)
        variables = tuple(variables)
        rhs_languages = tuple((v, c) for v, c in rhs_languages)
        if start not in variables:
            raise ValueError(f"start symbol {start!r} is not a variable")
        heads = [v for v, _ in rhs_languages]
        if sorted(heads) != sorted(variables) or len(set(heads)) != len(heads):
            raise ValueError("exactly one right-hand-side language per variable")
        allowed = set(terminals) | set(variables)
        for v, cfg in rhs_languages:
            stray = set(cfg.terminals) - allowed
            if stray:
                raise ValueError(
                    f"right-hand side of {v!r} uses undeclared symbols {sorted(stray)}"
                )
        object.__setattr__(self, "terminals", terminals)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "rhs_languages", rhs_languages)

    def rhs(self, var: str) -> Cfg:
        for v, cfg in self.rhs_languages:
            if v == var:
                return cfg
        raise KeyError(var)


def kral_single(g: GeneralizedCfg) -> Cfg:
    """Flatten a single-variable generalized grammar: take the grammar H of
    the right-hand-side language (over terminals plus the variable S), turn
    its S-occurrences into genuine variable occurrences, and add S → start
    of H."""
    if len(g.variables) != 1:
        raise ValueError("kral_single requires exactly one variable")
    s = g.start
    h = g.rhs(s)
    forbidden = {s} | set(g.terminals)
    avoid = forbidden | set(h.variables)
    mapping = {v: fresh_name("K", avoid) for v in h.variables if v in forbidden}
    h = cfg_rename(h, mapping)
    variables = (s,) + h.variables
    prods = [(s, (h.start,))] + list(h.productions)
    return Cfg(g.terminals, variables, prods, s)


def kral_eliminate(g: GeneralizedCfg) -> Cfg:
    """Flatten a generalized grammar to an ordinary one by eliminating
    non-start variables in declaration order: each variable's own closure
    is flattened with kral_single and substituted into the remaining
    right-hand-side languages; the start is flattened last."""
    rhs = {v: c for v, c in g.rhs_languages}
    remaining = list(g.variables)
    for x in [v for v in g.variables if v != g.start]:
        others = [v for v in remaining if v != x]
        closure = kral_single(
            GeneralizedCfg(
                tuple(g.terminals) + tuple(others),
                (x,),
                x,
                ((x, rhs[x]),),
            )
        )
        for v in others:
            if x in rhs[v].terminals:
                rhs[v] = cfg_trim(substitute(rhs[v], {x: closure}))
        remaining.remove(x)
        del rhs[x]
    final = kral_single(
        GeneralizedCfg(g.terminals, (g.start,), g.start, ((g.start, rhs[g.start]),))
    )
    return cfg_simplify(cfg_trim(final))


# --------------------------------------------------------------------------
# Seam markers


def marker(a: str, b: str) -> str:
    """The seam-marker symbol recording an insertion context between a
    letter ``a`` on the left and ``b`` on the right."""
    return f"M_{a}_{b}"


def is_marker(sym: str) -> bool:
    return len(sym) == 5 and sym[0] == "M" and sym[1] == sym[3] == "_"


def word_ins(w: str) -> Body:
    """Interleave seam markers between adjacent letters:
    ``abc`` → ``a M_a_b b M_b_c c``.  Single letters map to themselves."""
    if not w:
        raise ValueError("the empty word has no marker image")
    out: list[str] = [w[0]]
    for x, y in zip(w, w[1:]):
        out.append(marker(x, y))
        out.append(y)
    return tuple(out)


def strip_markers(t: Body) -> str:
    """Inverse of word_ins on its image."""
    return "".join(s for s in t if not is_marker(s))


def _remove_epsilon(g: Cfg) -> Cfg:
    nullable: set[str] = set()
    changed = True
    while changed:
        changed = False
        for head, body in g.productions:
            if head not in nullable and all(s in nullable for s in body):
                nullable.add(head)
                changed = True
    if g.start in nullable:
        raise ValueError("language contains the empty word")
    prods: list[tuple[str, Body]] = []
    for head, body in g.productions:
        optional = [i for i, s in enumerate(body) if s in nullable]
        for dropped in itertools.chain.from_iterable(
            itertools.combinations(optional, k) for k in range(len(optional) + 1)
        ):
            kept = tuple(s for i, s in enumerate(body) if i not in dropped)
            if kept:
                prods.append((head, kept))
    return Cfg(g.terminals, g.variables, prods, g.start)


def ins_image(g: Cfg) -> Cfg:
    """Grammar for { word_ins(w) : w ∈ L(g) } over the alphabet extended
    with seam markers.  Each variable is annotated with the (first, last)
    letters of the words it derives, so markers can be placed at every
    seam of every binarized rule."""
    g = cfg_trim(g)
    if cfg_empty(g):
        return Cfg(g.terminals, (g.start,), (), g.start)
    g = _remove_epsilon(_binarize(g))
    g = cfg_trim(g)

    pairs: dict[str, set[tuple[str, str]]] = {v: set() for v in g.variables}

    def sym_pairs(s: str) -> set[tuple[str, str]]:
        return pairs[s] if s in g.varset else {(s, s)}

    changed = True
    while changed:
        changed = False
        for head, body in g.productions:
            if len(body) == 1:
                fresh = sym_pairs(body[0]) - pairs[head]
            else:
                firsts = {f for f, _ in sym_pairs(body[0])}
                lasts = {l for _, l in sym_pairs(body[1])}
                fresh = {(f, l) for f in firsts for l in lasts} - pairs[head]
            if fresh:
                pairs[head] |= fresh
                changed = True

    avoid = set(g.variables) | set(g.terminals)
    names: dict[tuple[str, str, str], str] = {}

    def ann(v: str, f: str, l: str) -> str:
        key = (v, f, l)
        if key not in names:
            names[key] = fresh_name("A", avoid)
        return names[key]

    used_markers: set[str] = set()
    prods: list[tuple[str, Body]] = []
    for head, body in g.productions:
        if len(body) == 1:
            s = body[0]
            for f, l in sorted(sym_pairs(s)):
                sym = s if s not in g.varset else ann(s, f, l)
                prods.append((ann(head, f, l), (sym,)))
        else:
            s1, s2 = body
            for f1, l1 in sorted(sym_pairs(s1)):
                for f2, l2 in sorted(sym_pairs(s2)):
                    m = marker(l1, f2)
                    used_markers.add(m)
                    left = s1 if s1 not in g.varset else ann(s1, f1, l1)
                    right = s2 if s2 not in g.varset else ann(s2, f2, l2)
                    prods.append((ann(head, f1, l2), (left, m, right)))
    start = fresh_name("A", avoid)
    start_prods = [(start, (ann(g.start, f, l),)) for f, l in sorted(pairs[g.start])]
    terminals = tuple(g.terminals) + tuple(sorted(used_markers))
    variables = [start] + list(names.values())
    return cfg_trim(Cfg(terminals, variables, start_prods + prods, start))


# --------------------------------------------------------------------------
# Initial-set splitting


def split_first_last(
    initial: InitialSet, alphabet: Alphabet
) -> tuple[dict[tuple[str, str], Cfg], set[str]]:
    """Partition an ε-free initial set by first and last letters: a grammar
    per (a, b) for the words of length ≥ 2 starting with a and ending with
    b, plus the set of single letters present.  Empty components are
    omitted."""
    letters = alphabet.letters
    components: dict[tuple[str, str], Cfg] = {}
    singletons: set[str] = set()
    if initial.kind == "finite":
        assert initial.words is not None
        for a in letters:
            if a in initial.words:
                singletons.add(a)
        for a in letters:
            for b in letters:
                ws = [
                    w
                    for w in initial.words
                    if len(w) >= 2 and w[0] == a and w[-1] == b
                ]
                if ws:
                    components[(a, b)] = finite_cfg(letters, ws)
        return components, singletons
    if initial.kind == "regular":
        assert initial.dfa is not None
        for a in letters:
            if initial.dfa.accepts(a):
                singletons.add(a)
        for a in letters:
            for b in letters:
                part = dfa_intersect(initial.dfa, pattern_dfa(letters, a, b))
                if not dfa_empty(part):
                    components[(a, b)] = cfg_from_dfa(part)
        return components, singletons
    assert initial.cfg is not None
    base = cfg_with_terminals(initial.cfg, letters)
    if set(base.terminals) != set(letters):
        raise ValueError("initial grammar uses letters outside the alphabet")
    for a in letters:
        if a in enumerate_cfg(base, 1):
            singletons.add(a)
    for a in letters:
        for b in letters:
            part = bar_hillel(base, pattern_dfa(letters, a, b))
            if not cfg_empty(part):
                components[(a, b)] = part
    return components, singletons
