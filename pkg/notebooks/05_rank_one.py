"""
Rank-one certificates and their absence
=======================================

A loxodromic g is rank one when some power skewers a pair of halfspaces
whose hyperplanes are L-separated.  A found certificate is re-checked by an
independent routine.  When none exists we look for the opposite evidence:
a flat half-strip along the axis, a wide SMin, or a commuting element that
moves the axis sideways.
"""

from cubelab import lazy, raag
from cubelab.lazy import LineComplex, RaagCover, TreeComplex, product
from cubelab.rankone import (
    check_certificate, cross_validate, find_half_flat, find_skewered_pair,
    smin_quasiline_probe, trichotomy_classify,
)

F2 = RaagCover(raag.DefiningGraph.free(2))
P4 = RaagCover(raag.DefiningGraph.path(4))
Z2 = product(LineComplex(), LineComplex())

# %%
# every loxodromic in a tree is rank one, with strongly separated walls
g = lazy.raag_element(F2, "ab")
cert = find_skewered_pair(g, F2, 0, 3)
print("power", cert.power, "L", cert.L)
check_certificate(cert, F2, g)
print(cert.dumps()[:200], "...")

# %%
# ad in A(P4): a and d do not commute and share no common neighbour
g = lazy.raag_element(P4, "ad")
cert = find_skewered_pair(g, P4, 2, 4)
print("ad:", "certificate" if cert else "none", cert and (cert.power, cert.L))

# %%
# a translation of Z2 has none; a half-flat and a wide SMin show why
g = lazy.product_isometry(lazy.line_translation(1), lazy.identity())
print("certificate:", find_skewered_pair(g, Z2, 4, 6))
hf = find_half_flat(g, Z2, 8, 5)
print("half-flat", hf.dimensions)
for row in reversed(hf.grid[:3]):
    print("  ", row[:6])
for d in (2, 3, 4):
    print("depth", d, "probe (length, width):", smin_quasiline_probe(g, Z2, d, 2))

# %%
# the trichotomy classifier prefers a certificate, then a commuting witness
cands = [lazy.product_isometry(lazy.identity(), lazy.line_translation(1))]
for name, g, lc, ctx in [
    ("F2 ab", lazy.raag_element(F2, "ab"), F2, None),
    ("Z2 (1,0)", g, Z2, {"candidates": cands}),
]:
    v = trichotomy_classify(g, lc, ctx, depth=4)
    print(f"{name:10s} {v.case:12s} {v.notes}")

# %%
# on RAAG covers the geometric search is checked against the algebra
for w, dg in [("ad", P4.graph), ("ac", P4.graph), ("b", P4.graph)]:
    rep = cross_validate(w, dg, 4, 2)
    print(w, rep["status"], rep["summary"])
