"""
Deciding equality against a regular language
============================================

For alphabetic systems (all rule handles are single letters or empty) the
generated language equals a regular language K exactly when three
inclusions hold: the axioms lie in K, splicing K into itself stays in K,
and every K-word outside the one-step image is an axiom.  Each inclusion
is checkable on automata, so equality is decidable and failures come with
a concrete witness word.
"""

from splicelab import (
    alphabetic_generability,
    decide_equal,
    enumerate_dfa,
    parse_regex,
    regex_to_dfa,
    serialize_system,
    splice_image,
)
from splicelab.examples import anbn, concat_chain

# The block language a^n b^n is famously not regular, and the decider
# reports the first inclusion that breaks, with a witness.
system = anbn()
target = regex_to_dfa(parse_regex("(ab)(ab)*"), ("a", "b"))
verdict = decide_equal(system, target)
print("a^n b^n vs (ab)+:", verdict)

# Inclusion 2 failing means: splicing two target words produced a word
# outside the target.  The witness is exactly such a word.
print("witness:", verdict.witness, "| failing inclusion:", verdict.failing_inclusion)

# The concatenation-chain system *is* regular, and the decider certifies
# it: every c-prefixing join stays inside c*ab|c.
chain = concat_chain()
print("\nchain system:")
print(serialize_system(chain))
good = regex_to_dfa(parse_regex("c*ab|c"), ("a", "b", "c"))
print("vs c*ab|c:", decide_equal(chain, good))

# A near miss: the same regex with an extra word cc.  cc is neither an
# axiom nor producible by one join of target words, so inclusion 3 breaks
# and cc itself is the witness.
near = regex_to_dfa(parse_regex("c*ab|c|cc"), ("a", "b", "c"))
print("vs c*ab|c|cc:", decide_equal(chain, near))

# The engine underneath is the one-step image of a regular set: a DFA
# accepting every word obtainable by one rule application between two
# target words.
image = splice_image(good, chain.rules)
print("one-step image of the target, length <= 4:", enumerate_dfa(image, 4))

# The reverse question — given a regular K, is there an alphabetic system
# generating it? — is answered by searching the finite space of
# alphabetic rules for an admissible set and checking the residue.
found = alphabetic_generability(regex_to_dfa(parse_regex("aa*"), ("a",)))
print("\na+ is generable by:")
print(serialize_system(found))
print("certified:", decide_equal(found, regex_to_dfa(parse_regex("aa*"), ("a",))))

# Languages needing unbounded memory admit no such system.
print("a*b generable:", alphabetic_generability(regex_to_dfa(parse_regex("a*b"), ("a", "b"))))
