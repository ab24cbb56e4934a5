"""
Infinite complexes on demand
============================

Trees, lines, their products and universal covers of Salvetti complexes are
never built whole.  Vertices come with neighbours and globally stable wall
labels, and finite balls are cut out as windows.
"""

from cubelab import lazy, raag
from cubelab.lazy import LineComplex, RaagCover, TreeComplex, ball, product

# %%
# the ball of radius 2 in the 3-valent tree
T3 = TreeComplex(3)
w = ball(T3, (), 2)
print(w.complex, "boundary:", len(w.boundary))

# %%
# Z^2 as a product of two lines; the radius 2 ball is the l1 diamond
Z2 = product(LineComplex(), LineComplex())
w = ball(Z2, (0, 0), 2)
print(w.complex, "labels of local hyperplanes:", w.labels)

# %%
# wall labels are global: the same hyperplane seen from two windows
a = ball(Z2, (0, 0), 2)
b = ball(Z2, (1, 0), 2)
print("shared labels:", sorted(set(a.labels) & set(b.labels)))

# %%
# the universal cover of the Salvetti complex of A(P4)
P4 = raag.DefiningGraph.path(4)
cover = RaagCover(P4)
for r in range(1, 4):
    print("radius", r, ball(cover, (), r).complex)

# %%
# in dimension >= 3 a ball is not median, so the window is its hull
K3 = raag.DefiningGraph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])
print(ball(RaagCover(K3), (), 2).complex)

# %%
# isometries act on vertices and compose
g = lazy.product_isometry(lazy.line_translation(2), lazy.line_translation(-1))
print(g((0, 0)), (g ** 3)((0, 0)), g.inverse()((0, 0)))
h = lazy.raag_element(cover, "ab")
print("ab moves the base point to", h(()))

# %%
# the budget is explicit.  A tree of valence 4 has 4 * 3^5 vertices on the
# sphere of radius 6 alone
try:
    ball(TreeComplex(4), (), 6, vertex_cap=100)
except lazy.BudgetExceeded as e:
    print("budget:", e)
