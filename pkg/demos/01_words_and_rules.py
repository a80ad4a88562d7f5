"""
Words, rules, and single rule applications
==========================================

A splicing system rewrites a pool of words: each rule has four handles
(alpha, beta, gamma, delta) and either *inserts* one word into another or
*concatenates* two words.  This script builds the objects by hand and
applies single rules, before any closure machinery gets involved.
"""

from splicelab import (
    CONCAT,
    Alphabet,
    CircularWord,
    InitialSet,
    SplicingRule,
    SplicingSystem,
    apply_concat,
    apply_splice,
    apply_splice_circular,
    serialize_system,
)

# A rule is written alpha#beta$gamma#delta.  Used as an insertion rule, it
# takes a word u containing the seam alpha·beta and a word v of the shape
# gamma...delta, and drops v into the seam:  x alpha [v] beta y.
rule = SplicingRule("a", "b", "a", "b")
print("insert", rule, "into 'ab' at the a|b seam:")
for w in sorted(apply_splice(rule, "ab", "ab")):
    print("   ", w)

# Every seam occurrence produces one result, so a longer host word can
# yield several words at once.
print("insert into 'abab':", sorted(apply_splice(rule, "abab", "ab")))

# The same four handles can instead be used as a concatenation rule: u
# must look like alpha...beta and v like gamma...delta, and the result is
# simply uv.  Handles left empty (written '-' in the text format) match
# the empty context.
glue = SplicingRule("", "c", "", "b", usage=CONCAT)
print("concatenate 'c' and 'ab':", apply_concat(glue, "c", "ab"))
print("concatenate 'ab' and 'c':", apply_concat(glue, "ab", "c"))  # no match

# Circular words are equivalence classes under rotation; the constructor
# normalizes to the least rotation, so equal cycles compare equal.
print("circular 'ab' == circular 'ba':", CircularWord("ab") == CircularWord("ba"))

# A circular application first rotates u so the seam beta·alpha wraps
# around the joining point, rotates v to the shape gamma...delta, and
# joins the two cycles into one.
out = apply_splice_circular(rule, CircularWord("ab"), CircularWord("ab"))
print("circular splice of (ab) with itself:", sorted(w.representative for w in out))

# A system bundles an alphabet, an initial word set, and rules.  Systems
# serialize to a small text format (round-tripped by parse_system).
system = SplicingSystem(
    Alphabet(("a", "b")),
    InitialSet("finite", words=frozenset({"ab"})),
    frozenset({rule}),
)
print("\nserialized system:")
print(serialize_system(system))
