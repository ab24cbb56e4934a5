"""
Cubulating a wallspace
======================

Points plus a family of bipartitions give a cube complex whose vertices are
the coherent orientations.  Points sit inside it as principal orientations.
"""

from cubelab import cubulation as W
from cubelab import median as M

# %%
# three points on a line cut by two walls: the result is a path
w = W.Wallspace([0, 1, 2], [[0], [0, 1]])
C = W.cubulate(w)
print(C, [W.principal_orientation(w, p) for p in w.points])

# %%
# two crossing walls on four points give a square
w = W.Wallspace("abcd", [["a", "b"], ["a", "c"]])
C = W.cubulate(w)
print(C, "vertices:", C.vertices)

# %%
# three pairwise crossing walls on the corners of a cube
pts = [(i, j, k) for i in (0, 1) for j in (0, 1) for k in (0, 1)]
walls = [[p for p in pts if p[t] == 0] for t in range(3)]
C = W.cubulate(W.Wallspace(pts, walls))
print(C)

# %%
# the tripod: three walls, nested pairwise, no two crossing, give a star
w = W.Wallspace("xyzc", [["x"], ["y"], ["z"]])
C = W.cubulate(w)
print(C, "degrees:", sorted(len(C.neighbors(v)) for v in C.vertices))

# %%
# round trip: the hyperplanes of a complex are a wallspace cubulating back
grid = {(i, j): [(i + a, j + b) for a, b in ((1, 0), (-1, 0), (0, 1), (0, -1))
                 if 0 <= i + a < 3 and 0 <= j + b < 2]
        for i in range(3) for j in range(2)}
G = M.verify_median_graph(grid)
back = W.cubulate(W.wallspace_of_complex(G))
print(len(G), len(back), G.n_hyperplanes, back.n_hyperplanes)

# %%
# a median subalgebra inherits walls from the hyperplanes that cross it
print(W.walls_of_subalgebra(G, [(0, 0), (2, 0), (2, 1), (0, 1)]))
