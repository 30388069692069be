"""Recover weight systems from the multiset of the nine equation degrees."""
from __future__ import annotations

from collections import Counter
from itertools import combinations
from typing import Iterable

from .grading import WeightSystem, ws_from_free


def _remove(c: Counter, x: int) -> Counter | None:
    if c[x] <= 0:
        return None
    out = c.copy()
    out[x] -= 1
    if not out[x]:
        del out[x]
    return out


def search_weights(degrees: Iterable[int], allow_negative: bool = True) -> list[dict]:
    """All weight systems whose degree multiset is ``degrees``.

    Each result is ``{"weights": WeightSystem, "negative": bool}``; results
    are deduplicated and sorted by their free parameters.  With
    ``allow_negative=False`` systems with a negative weight are dropped.
    """
    degs = sorted(int(d) for d in degrees)
    if len(degs) != 9:
        raise ValueError(f"expected nine degrees, got {len(degs)}")
    total = sum(degs)
    if total % 3:
        return []
    delta = total // 3
    pool = Counter(degs)
    found: dict[tuple, WeightSystem] = {}
    for d8 in sorted(pool):
        if d8 % 2:
            continue
        wr = d8 // 2
        rest8 = _remove(pool, d8)
        for d0 in sorted(rest8):
            rest0 = _remove(rest8, d0)
            for d4 in sorted(rest0):
                rest4 = _remove(rest0, d4)
                wu = delta - wr - d0 - d4
                gap = wr - wu
                six = sorted(rest4.elements())
                for idx in set(combinations(range(6), 3)):
                    first = [six[i] for i in idx]
                    second = [six[i] for i in range(6) if i not in idx]
                    if any(a - b != gap for a, b in zip(first, second)):
                        continue
                    wp = [d - wr for d in first]
                    ws = ws_from_free(d0, *wp, wr, wu)
                    if sorted(ws.degrees) != degs:
                        continue
                    found[tuple(ws.free_parameters().values())] = ws
    out = []
    for key in sorted(found):
        ws = found[key]
        if ws.negative and not allow_negative:
            continue
        out.append({"weights": ws, "negative": ws.negative})
    return out
