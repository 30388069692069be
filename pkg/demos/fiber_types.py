"""Fiber types of the projection to the (S, t) base."""
from __future__ import annotations

from fractions import Fraction

from keyvar import singcheck as sc

# %% Invariants over a few base points
examples = {
    "generic": ([1, 0, 0, 1, 0, 1], [1, 2, 3]),
    "rank 2, t off the conic": ([1, 0, 0, 1, 0, 0], [0, 0, 1]),
    "origin": ([0] * 6, [0, 0, 0]),
}
for name, (entries, t) in examples.items():
    s = sc.symmetric_from_entries([Fraction(x) for x in entries])
    inv = sc.fiber_invariants(s, [Fraction(x) for x in t])
    print(f"{name:>24}: {inv.as_dict()}")

# %% The constructed representative of every fiber type
for name, s, t, label in sc.FIBER_REPRESENTATIVES:
    got = sc.fiber_invariants(s, t).label
    print(f"{name:>10}: {got}{'' if got == label else f'  (expected {label})'}")

# %% Labels do not change under the twisted GL3 action
print("twist mismatches:", sc.fiber_twist_mismatches(10, seed=8) or "none")
