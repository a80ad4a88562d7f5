"""
Bounded closures, membership, and derivation traces
===================================================

The closure of a splicing system is everything derivable from the initial
words by repeated rule application.  Closures are generally infinite, so
the workbench materializes them up to a length bound, answers membership
queries, and produces replayable step-by-step derivations.
"""

from splicelab import (
    BudgetExceededError,
    closure_bounded,
    derivation,
    member,
    replay_sequence,
    witness,
)
from splicelab.examples import anbn, doubling, nested_insertions

# The one-rule system with axiom ab and insertion rule a#b$a#b generates
# exactly the words a^n b^n.
system = anbn()
print("words of length <= 10:", closure_bounded(system, 10))

# member() searches the closure outward from the axioms.  The budget
# bounds how many words the search may visit before giving up.
print("aaabbb in the language:", member(system, "aaabbb"))
print("aabbb  in the language:", member(system, "aabbb"))

try:
    member(system, "aaabbb", budget=0)
except BudgetExceededError as err:
    print("zero budget raises:", err)

# derivation() returns the actual production sequence, or None for a
# non-member.  Each step records the rule, the two operands (axioms or
# earlier steps), the cut position, and the resulting word.
seq = derivation(system, "aaabbb")
for i, step in enumerate(seq.steps, 1):
    print(f"  step {i}: [{step.rule}] -> {step.result}")

# The sequence is replayable: feeding it back through the system's rules
# reproduces the word, which is how traces are validated.
print("replay gives:", replay_sequence(system, seq))

# witness() does the same via the bounded closure's parent pointers, and
# is handy when a length bound is more natural than a search budget.
print("witness steps:", len(witness(system, "aabb", 6).steps))

# A richer example: insertion rules growing c-prefixed nests.
nests = nested_insertions()
print("\nnested insertions, length <= 5:", closure_bounded(nests, 5))
print("derivation of caabb:")
for i, step in enumerate(derivation(nests, "caabb").steps, 1):
    print(f"  step {i}: [{step.rule}] -> {step.result}")

# Rules may use longer (non-alphabetic) handles too.  This system copies
# the block between the markers one letter at a time: alongside the
# finished words x0123y and x01230123y the closure holds the mid-copy
# stages, but a third copy is never completed.
print("\ndoubling closure <= 14:", closure_bounded(doubling(), 14))
