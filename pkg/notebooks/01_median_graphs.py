"""
Median graphs and their hyperplanes
===================================

A finite graph is checked for the median property; once accepted, every
vertex carries a sign vector over the hyperplanes and distances, medians,
intervals and hulls are read off those vectors.
"""

from cubelab import median as M

# %%
# The 3x3 grid is the product of two paths, hence median.
grid = {(i, j): [(i + a, j + b) for a, b in ((1, 0), (-1, 0), (0, 1), (0, -1))
                 if 0 <= i + a < 3 and 0 <= j + b < 3]
        for i in range(3) for j in range(3)}
C = M.verify_median_graph(grid)
print(C, "hyperplanes:", C.n_hyperplanes)

# %%
# distance is the number of separating hyperplanes
x, y, z = (0, 0), (2, 2), (2, 0)
print("d(x,y) =", C.distance(x, y), " separating:", len(M.separating_hyperplanes(C, x, y)))
print("median of x, y, z:", M.median(C, x, y, z))
print("interval [x, z]:", sorted(M.interval(C, x, z)))

# %%
# hull, gate projection onto a convex set, and Helly
S = [(0, 1), (1, 0)]
H = M.convex_hull(C, S)
print("hull of", S, "->", sorted(H))
print("gate of (2,2) on the hull:", M.project(C, (2, 2), H))
rows = [M.convex_hull(C, [(0, j), (2, j)]) for j in range(3)]
cols = [M.convex_hull(C, [(i, 0), (i, 2)]) for i in range(3)]
print("row 1 and column 2 meet in", M.helly_intersection(C, [rows[1], cols[2]]))

# %%
# K_{2,3} is the smallest obstruction: two vertices with three common
# neighbours have two medians
k23 = {"a": "xyz", "b": "xyz", "x": "ab", "y": "ab", "z": "ab"}
k23 = {v: list(ns) for v, ns in k23.items()}
try:
    M.verify_median_graph(k23)
except M.NotMedian as e:
    print("rejected:", e)
print("contains induced K23:", M.contains_induced_K23(k23))
