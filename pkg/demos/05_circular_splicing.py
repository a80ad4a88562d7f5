"""
Circular words and flattening circular systems
==============================================

In circular mode the pool holds cyclic words: operands are rotated so the
rule handles meet at the joining points, and two cycles merge into one.
The closure engine, membership search, equality decider, and grammar
pipeline all work on circular systems; the key rewrite is circular_to_flat,
which builds a flat system whose language is the set of all linearizations.
"""

from splicelab import (
    CircularWord,
    circular_rule_expansion,
    circular_to_flat,
    closure_bounded,
    conjugates,
    decide_equal,
    derivation,
    enumerate_cfg,
    member,
    parse_regex,
    regex_to_dfa,
    replay_sequence,
    synthesize,
)
from splicelab.examples import anbn_circular

# The circular variant of the block system: splicing (ab) into itself
# merges the cycles, giving the cyclic words with equal a- and b-counts
# that stay balanced — representatives a^n b^n.
system = anbn_circular()
reps = closure_bounded(system, 8)
print("closure representatives <= 8:", [w.representative for w in reps])

# A circular word's linearizations are its rotations.
print("linearizations of (aabb):", sorted(CircularWord("aabb").linearize()))

# Membership accepts plain strings and treats them as cycles.
print("member 'bbaa':", member(system, "bbaa"))

# Derivations record the rotation used on each operand, so replays are
# exact even though operands are equivalence classes.
seq = derivation(system, CircularWord("aabb"))
for i, step in enumerate(seq.steps, 1):
    print(f"  step {i}: [{step.rule}] -> {step.result}")
print("replay:", replay_sequence(system, seq))

# Flattening: each circular rule expands to flat insertion and
# concatenation rules covering every way the handles can meet.
rule = next(iter(system.rules))
print("\nflat expansion of", rule)
for r in sorted(circular_rule_expansion(rule), key=str):
    print("   ", r)

# The flat system's language is exactly the rotations of the circular
# closure, so non-representative spellings like abba now appear directly.
flat = circular_to_flat(system)
flat_words = set(closure_bounded(flat, 8))
rotated = set()
for w in reps:
    rotated |= conjugates(w.representative)
print("flat closure == all rotations:", flat_words == rotated)

# The equality decider in circular mode first checks the target is closed
# under rotation (a cyclic language must be), then runs the inclusions.
target = regex_to_dfa(parse_regex("(ab)(ab)*"), ("a", "b"))
print("\nvs (ab)+:", decide_equal(system, target))

# And the grammar pipeline flattens internally, so synthesize() works on
# circular systems directly.
print("grammar == flat closure:", set(enumerate_cfg(synthesize(system), 8)) == flat_words)
