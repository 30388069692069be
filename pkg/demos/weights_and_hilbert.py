"""Weights, degrees and Hilbert series of a few Fano classes."""
from __future__ import annotations

from keyvar import hilbert as hs
from keyvar.classdb import load_class
from keyvar.weightsearch import search_weights

# %% Weights from the six free parameters
rec = load_class(393)
ws = rec.weights
print("No.393 free parameters:", ws.free_parameters())
print("coordinate weights:", ws.as_dict())
print("equation degrees:", ws.degrees, "delta =", ws.delta, "k =", ws.k)

# %% Going back: which weight systems produce these nine degrees?
found = search_weights(ws.degrees)
print(f"{len(found)} weight systems share these degrees; the table row is among them:",
      any(x["weights"] == ws for x in found))
for x in found[:5]:
    tag = " (has negative weights)" if x["negative"] else ""
    print("  ", x["weights"].free_parameters(), tag)

# %% Hilbert numerator and series for the smallest class
rec = load_class(24078)
ws = rec.weights
print("No.24078 numerator:", hs.hilbert_numerator(ws))
print("palindromic:", hs.is_palindromic(ws))
print("k minus the cut degrees:", hs.anticanonical_defect(ws, rec.cuts))
print("first terms:", hs.hilbert_series(ws, rec.variant, rec.cuts, 8))
print("genus:", hs.genus(rec))
