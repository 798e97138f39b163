"""Deriving type bounds, indecomposability and rigidity with proof traces.

Run with:  python demos/type_bounds_and_rigidity.py
"""

from sbmotives import (
    DivisionContext,
    SBVariety,
    classify_reduced_dimension,
    dimension_obstruction,
    indecomposability_judgment,
    rigidity_judgment,
    type_bound,
)

# A variety is "of type t" when every summand of its motive other than the
# upper one is a Tate twist of an upper motive of level at most t; type -1
# leaves only the upper motive and forces indecomposability.

# At every prime, the level bound gives type k-1.  At p = 2 a halving
# induction improves this to max(k-2, -1); the numeric heart of the
# induction step is a dimension comparison that holds across the board.
print("dimension obstruction, small range:")
for n in range(1, 5):
    for k in range(1, n + 1):
        print(f"  n={n} k={k}:", dimension_obstruction(n, k))

# The derived bounds, tabulated.
print("\ntype bounds (p=2 improves, odd primes keep the level bound):")
for p in (2, 3):
    for n in (3,):
        row = [type_bound(SBVariety(DivisionContext(p, n), k)).bound for k in range(n + 1)]
        print(f"  p={p}, n={n}: bounds by level {row}")

# Every derivation carries a replayable trace.  Each step records the rule,
# its citation from the fixed catalog, the numeric side conditions, and the
# conclusion; replay() re-checks each step from the recorded numbers alone.
bound = type_bound(SBVariety(DivisionContext(2, 3), 1))
print(f"\nbound for SB_2, deg D = 8: {bound.bound}  (trace replays: {bound.trace.replay()})")
print(bound.trace.render_text())

# Type -1 plus the rank-one degree-zero Chow group yields indecomposability.
# The calculus never claims the opposite: anything short of -1 is "unknown".
print("\nindecomposability:")
for p, n, k in [(2, 3, 1), (3, 2, 1), (2, 1, 1)]:
    judgment = indecomposability_judgment(SBVariety(DivisionContext(p, n), k))
    print(f"  p={p}, n={n}, k={k}: {judgment.status.value} (bound {judgment.bound})")

# A bound of at most 0 transfers along every division-preserving extension,
# settling the decomposition-lifting question for that variety.
print("\nrigidity:")
for p, n, k in [(2, 3, 2), (5, 2, 1), (3, 2, 2)]:
    judgment = rigidity_judgment(SBVariety(DivisionContext(p, n), k))
    print(f"  p={p}, n={n}, k={k}: {judgment.status.value} (bound {judgment.bound})")

# Arbitrary reduced dimensions reduce to prime-primary sub-cases.  Covered:
# squarefree k (levels 0 and 1) and k = 4 * odd squarefree (level 2 at p=2).
print("\ncoverage of reduced dimensions 1..30:")
for k in range(1, 31):
    case = classify_reduced_dimension(k)
    if case.covered:
        subs = ", ".join(f"SB_{c.reduced_dimension}@p={c.prime}" for c in case.reductions)
        print(f"  k={k:2d}: covered ({case.reason.value}) via {subs or 'trivial'}")
    else:
        print(f"  k={k:2d}: open (blocking factor {case.blocking_factor})")
