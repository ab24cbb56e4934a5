"""
Classifying isometries on windows
=================================

An isometry is elliptic, an inversion, or loxodromic.  For a loxodromic one
we find its translation length, a validated combinatorial axis, the
minimal displacement sets Min(g^n) and their union SMin, and split SMin as
a product of an axis direction and a transverse direction.
"""

from cubelab import lazy
from cubelab.isometry import (
    axis, classify, decompose_smin, fixed_set_growth, min_set_window, smin_window,
    translation_length,
)
from cubelab.lazy import LineComplex, RaagCover, TreeComplex, product
from cubelab import raag

Z2 = product(LineComplex(), LineComplex())
T3 = TreeComplex(3)
LT3 = product(LineComplex(), T3)
T = lazy.line_translation(1)
ID = lazy.identity()

# %%
for name, g, lc in [
    ("rotation of T3", lazy.tree_rotation([1, 2, 0]), T3),
    ("reflection of the line", lazy.line_reflection(1), LineComplex()),
    ("translation of Z2", lazy.product_isometry(T, T), Z2),
]:
    c = classify(g, lc, 3)
    print(f"{name:24s} {c.verdict:11s} depth {c.depth_used}")

# %%
# translation length and a validated axis in the free group
F2 = RaagCover(raag.DefiningGraph.free(2))
g = lazy.raag_element(F2, "ab")
print("|ab| =", translation_length(g, F2, 4)[0])
ax = axis(g, F2, 4)
print("axis base", ax.base, "period", ax.period_path, "checked to", ax.horizon)

# %%
# in Z2 the translation (1, 0) moves every vertex by one, so Min is the
# whole window
g = lazy.product_isometry(T, ID)
m = min_set_window(g, 1, Z2, 3)
print("Min(g):", len(m.vertices), "vertices, displacement", m.displacement)

# %%
# (t, id) on line x T3: SMin is the whole window, and it splits as the
# line times the tree, one coordinate each
g = lazy.product_isometry(T, ID)
s = smin_window(g, LT3, 3, 2)
d = decompose_smin(g, LT3, 3, 2)
print("SMin size", len(s.vertices), "axis walls", len(d.axis_labels),
      "transverse walls", len(d.transverse_labels), "pairs checked", d.checked_pairs)

# %%
# (t, rho) with rho the order-3 rotation: only the fixed tree vertex
# survives in Min(g), but rho^3 = 1 so Min(g^3) is everything again
rho = lazy.tree_rotation([1, 2, 0])
g = lazy.product_isometry(T, rho)
for n in (1, 2, 3):
    print("n =", n, "Min size", len(min_set_window(g, n, LT3, 3).vertices))

# %%
# fixed-set sizes of the elliptic factor along powers
print(fixed_set_growth(g, LT3, 3, 3))
