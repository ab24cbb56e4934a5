"""Finite CAT(0) cube complexes as median graphs.

A :class:`CubeComplex` is built (and validated) by :func:`verify_median_graph`.
Once validated every vertex carries a sign vector -- one bit per hyperplane,
saying on which side of it the vertex lies -- and almost every query reduces
to bit operations on those vectors:

* distance is the popcount of the xor of two sign vectors,
* the median of three vertices is the bitwise majority,
* the interval ``I(x, y)`` is the set of vertices agreeing with ``x`` and
  ``y`` wherever those two agree.
"""

from collections import deque, namedtuple
from dataclasses import dataclass
from itertools import combinations
import json

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from ._order import canon, sort_canon

# exact triple enumeration below this many vertices, structural test above
EXHAUSTIVE_LIMIT = 64


class CubeComplexError(Exception):
    pass


class EmptyGraph(CubeComplexError, ValueError):
    pass


class Disconnected(CubeComplexError, ValueError):
    pass


class NotMedian(CubeComplexError, ValueError):
    """Raised when a graph fails the median condition.

    ``witness`` is a vertex triple with zero or several medians when one
    could be located, otherwise ``None``.
    """

    def __init__(self, reason, witness=None):
        super().__init__(f"{reason} (witness: {witness!r})")
        self.reason = reason
        self.witness = witness


class NotConvex(CubeComplexError, ValueError):
    def __init__(self, witness):
        super().__init__(f"set is not convex; interval of {witness!r} escapes it")
        self.witness = witness


class SetsIntersect(CubeComplexError, ValueError):
    pass


@dataclass(frozen=True)
class Hyperplane:
    id: int
    dual_edges: frozenset
    sides: tuple  # (side 0, side 1) as frozensets of vertex ids

    @property
    def carrier(self):
        return frozenset(v for e in self.dual_edges for v in e)


@dataclass(frozen=True)
class Halfspace:
    hyperplane: int
    side: int
    members: frozenset


@dataclass(frozen=True)
class LinkGraph:
    base: object
    vertices: tuple  # edges (base, u) incident to the base vertex
    edges: frozenset  # frozensets of two link vertices spanning a square

    def adjacency(self):
        adj = {v: set() for v in self.vertices}
        for e in self.edges:
            a, b = tuple(e)
            adj[a].add(b)
            adj[b].add(a)
        return adj


HellyResult = namedtuple("HellyResult", ["point", "disjoint_pair"])


def _popcount(x):
    return bin(x).count("1")


def _as_adjacency(g):
    """Accept a dict of neighbours, a ``(vertices, edges)`` pair, a networkx
    graph or a JSON-style ``{"vertices": ..., "edges": ...}`` mapping."""
    if hasattr(g, "nodes") and hasattr(g, "edges") and not isinstance(g, dict):
        vertices, edges = list(g.nodes), list(g.edges)
    elif isinstance(g, dict) and "vertices" in g and "edges" in g:
        vertices, edges = g["vertices"], g["edges"]
    elif isinstance(g, dict):
        vertices = list(g)
        edges = [(u, v) for u in g for v in g[u]]
    else:
        vertices, edges = g
    adj = {_hashable(v): set() for v in vertices}
    for u, v in edges:
        u, v = _hashable(u), _hashable(v)
        if u == v:
            raise NotMedian("graph has a loop", (u, u, u))
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return adj


def _hashable(v):
    if isinstance(v, list):
        return tuple(_hashable(x) for x in v)
    return v


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                ra, rb = rb, ra
            self.parent[ra] = rb


class CubeComplex:
    """A validated median graph with its hyperplane structure.

    Do not call the constructor directly; use :func:`verify_median_graph`
    or :meth:`from_json`.
    """

    def __init__(self, vertices, nbrs, edge_class, n_hyperplanes, sign):
        self.vertices = tuple(vertices)
        self._index = {v: i for i, v in enumerate(self.vertices)}
        self._nbrs = nbrs
        self._edge_class = edge_class
        self.n_hyperplanes = n_hyperplanes
        self._sign = sign
        self._by_sign = {s: i for i, s in enumerate(sign)}
        self._hp_cache = {}

    # -- basic access --------------------------------------------------
    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in self._index

    def __repr__(self):
        return f"CubeComplex({len(self)} vertices, {self.n_hyperplanes} hyperplanes)"

    def index(self, v):
        try:
            return self._index[v]
        except KeyError:
            raise KeyError(f"unknown vertex {v!r}") from None

    def neighbors(self, v):
        return [self.vertices[j] for j in self._nbrs[self.index(v)]]

    def edges(self):
        out = []
        for i, row in enumerate(self._nbrs):
            for j in row:
                if i < j:
                    out.append((self.vertices[i], self.vertices[j]))
        return out

    def sign_matrix(self):
        """Boolean (vertices x hyperplanes) array of sides; cached."""
        mat = getattr(self, "_sign_matrix", None)
        if mat is None:
            mat = np.zeros((len(self.vertices), self.n_hyperplanes), dtype=np.bool_)
            for i, s in enumerate(self._sign):
                k = 0
                while s:
                    if s & 1:
                        mat[i, k] = True
                    s >>= 1
                    k += 1
            self._sign_matrix = mat
        return mat

    def sign_vector(self, v):
        return self._sign[self.index(v)]

    def vertex_with_sign(self, s):
        i = self._by_sign.get(s)
        return None if i is None else self.vertices[i]

    def distance(self, x, y):
        return _popcount(self._sign[self.index(x)] ^ self._sign[self.index(y)])

    def hyperplane_of_edge(self, u, v):
        i, j = self.index(u), self.index(v)
        key = (i, j) if i < j else (j, i)
        try:
            return self._edge_class[key]
        except KeyError:
            raise KeyError(f"{u!r} and {v!r} are not adjacent") from None

    def side_of(self, v, hyperplane):
        return (self._sign[self.index(v)] >> hyperplane) & 1

    def hyperplane(self, k):
        hp = self._hp_cache.get(k)
        if hp is None:
            if not 0 <= k < self.n_hyperplanes:
                raise KeyError(f"no hyperplane {k}")
            edges = frozenset(
                frozenset((self.vertices[i], self.vertices[j]))
                for (i, j), c in self._edge_class.items()
                if c == k
            )
            bit = 1 << k
            s1 = frozenset(v for v, s in zip(self.vertices, self._sign) if s & bit)
            s0 = frozenset(self.vertices) - s1
            hp = self._hp_cache[k] = Hyperplane(k, edges, (s0, s1))
        return hp

    def hyperplanes(self):
        return [self.hyperplane(k) for k in range(self.n_hyperplanes)]

    def halfspace(self, k, side):
        return Halfspace(k, side, self.hyperplane(k).sides[side])

    def carrier(self, k):
        return self.hyperplane(k).carrier

    # -- io ------------------------------------------------------------
    def to_json(self):
        return {
            "vertices": [_jsonable(v) for v in self.vertices],
            "edges": [[_jsonable(u), _jsonable(v)] for u, v in self.edges()],
        }

    @classmethod
    def from_json(cls, data, method="auto"):
        if isinstance(data, str):
            data = json.loads(data)
        return verify_median_graph(data, method=method)

    def to_dot(self, name="X", highlight=None):
        """DOT export; edges are coloured by hyperplane.

        ``highlight`` maps a colour name to a vertex collection drawn filled.
        """
        palette = [
            "red", "blue", "darkgreen", "orange", "purple", "brown",
            "magenta", "cyan4", "gold3", "gray40", "navy", "olivedrab",
        ]
        fill = {}
        for colour, members in (highlight or {}).items():
            for v in members:
                fill[v] = colour
        lines = [f"graph {json.dumps(name)} {{"]
        for v in self.vertices:
            attrs = f'label={json.dumps(_label(v))}'
            if v in fill:
                attrs += f', style=filled, fillcolor="{fill[v]}"'
            lines.append(f"  {json.dumps(_label(v))} [{attrs}];")
        for u, v in self.edges():
            k = self.hyperplane_of_edge(u, v)
            lines.append(
                f"  {json.dumps(_label(u))} -- {json.dumps(_label(v))}"
                f' [color="{palette[k % len(palette)]}", label="J{k}"];'
            )
        lines.append("}")
        return "\n".join(lines) + "\n"


def _jsonable(v):
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    return v


def _label(v):
    if isinstance(v, str):
        return v
    return json.dumps(_jsonable(v), separators=(",", ":"))


# ---------------------------------------------------------------------------
# construction and verification
# ---------------------------------------------------------------------------


def verify_median_graph(g, method="auto"):
    """Validate ``g`` as a median graph and return the :class:`CubeComplex`.

    ``method`` selects how the median condition is checked once ``g`` is known
    to be a partial cube: ``"exhaustive"`` tests the majority of every vertex
    triple, ``"structural"`` tests that for every hyperplane both boundary
    sets of its carrier are convex, ``"auto"`` picks the first for small
    graphs.
    """
    adj = _as_adjacency(g)
    if not adj:
        raise EmptyGraph("a cube complex needs at least one vertex")
    vertices = sort_canon(adj)
    index = {v: i for i, v in enumerate(vertices)}
    n = len(vertices)
    nbrs = tuple(tuple(sorted(index[u] for u in adj[v])) for v in vertices)

    # connectivity and bipartiteness from one BFS
    depth = [-1] * n
    parent = [-1] * n
    depth[0] = 0
    order = [0]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in nbrs[i]:
            if depth[j] < 0:
                depth[j] = depth[i] + 1
                parent[j] = i
                order.append(j)
                queue.append(j)
            elif depth[j] == depth[i]:
                raise NotMedian(
                    "graph is not bipartite",
                    (vertices[0], vertices[i], vertices[j]),
                )
    if len(order) < n:
        missing = vertices[depth.index(-1)]
        raise Disconnected(f"vertex {missing!r} is unreachable from {vertices[0]!r}")

    edge_id = {}
    for i in range(n):
        for j in nbrs[i]:
            if i < j:
                edge_id[(i, j)] = len(edge_id)

    uf = _UnionFind(len(edge_id))
    nbr_sets = [set(r) for r in nbrs]
    for v in range(n):
        for a, b in combinations(nbrs[v], 2):
            for w in nbr_sets[a] & nbr_sets[b]:
                if w == v:
                    continue
                # bipartite graphs have no chords in 4-cycles
                uf.union(edge_id[_ek(v, a)], edge_id[_ek(b, w)])
                uf.union(edge_id[_ek(v, b)], edge_id[_ek(a, w)])

    # classes numbered in the order of their least edge
    edges_sorted = sorted(edge_id)
    root_to_class = {}
    edge_class = {}
    for e in edges_sorted:
        r = uf.find(edge_id[e])
        if r not in root_to_class:
            root_to_class[r] = len(root_to_class)
        edge_class[e] = root_to_class[r]
    m = len(root_to_class)

    sign = [0] * n
    for j in order[1:]:
        i = parent[j]
        sign[j] = sign[i] ^ (1 << edge_class[_ek(i, j)])
    for (i, j), k in edge_class.items():
        if sign[i] ^ sign[j] != 1 << k:
            raise NotMedian(
                f"hyperplane J{k} does not separate the graph into two halfspaces",
                _find_bad_triple(vertices, nbrs),
            )

    _check_partial_cube(vertices, nbrs, sign, edge_class, m)

    if method == "auto":
        method = "exhaustive" if n <= EXHAUSTIVE_LIMIT else "structural"
    if method == "exhaustive":
        _check_majority_closed(vertices, sign)
    elif method == "structural":
        _check_carrier_boundaries(vertices, nbrs, sign, edge_class, m)
    elif method != "partial-cube":
        raise ValueError(f"unknown verification method {method!r}")

    return CubeComplex(vertices, nbrs, edge_class, m, sign)


def _ek(i, j):
    return (i, j) if i < j else (j, i)


def _check_partial_cube(vertices, nbrs, sign, edge_class, m):
    """Distance equals hyperplane count for every pair.

    With sign vectors flipping exactly one bit along each edge, the number
    of hyperplanes separating ``x`` from ``y`` drops by one along some edge
    at ``y`` unless ``x`` and ``y`` agree on every hyperplane incident to
    ``y``.  So equality for all pairs holds iff no vertex shares its pattern
    on its incident hyperplanes with another vertex.
    """
    n = len(vertices)
    if n == 1:
        return
    bits = np.zeros((n, m), dtype=np.bool_)
    for i, s in enumerate(sign):
        row = bits[i]
        k = 0
        while s:
            if s & 1:
                row[k] = True
            s >>= 1
            k += 1
    incident = [[edge_class[_ek(i, j)] for j in nbrs[i]] for i in range(n)]
    for y in range(n):
        cols = incident[y]
        agree = np.all(bits[:, cols] == bits[y, cols], axis=1)
        if agree.sum() != 1:
            agree[y] = False
            x = int(np.argmax(agree))
            raise NotMedian(
                f"distance between {vertices[x]!r} and {vertices[y]!r} is not the "
                "number of hyperplanes separating them",
                _find_bad_triple(vertices, nbrs),
            )


def _check_majority_closed(vertices, sign):
    present = set(sign)
    n = len(sign)
    for a in range(n):
        sa = sign[a]
        for b in range(a + 1, n):
            sb = sign[b]
            both, either = sa & sb, sa | sb
            for c in range(b + 1, n):
                if (both | (sign[c] & either)) not in present:
                    raise NotMedian(
                        "vertex triple has no median",
                        (vertices[a], vertices[b], vertices[c]),
                    )


def _check_carrier_boundaries(vertices, nbrs, sign, edge_class, m):
    """Both boundary sets of every carrier are convex.

    In a partial cube a set is convex iff it is cut out by the halfspaces
    containing it; as convex sets are connected, a strictly larger hull
    would contain a neighbour of the set, so only neighbours are tested.
    """
    boundary = [(set(), set()) for _ in range(m)]
    for (i, j), k in edge_class.items():
        for v in (i, j):
            boundary[k][(sign[v] >> k) & 1].add(v)
    for k in range(m):
        for members in boundary[k]:
            it = iter(members)
            first = sign[next(it)]
            both = either = first
            for v in it:
                both &= sign[v]
                either |= sign[v]
            fixed = both ^ either  # coordinates that vary on the set
            for v in members:
                for z in nbrs[v]:
                    if z in members:
                        continue
                    if not ((sign[z] ^ both) & ~fixed):
                        raise NotMedian(
                            f"boundary of the carrier of J{k} is not convex",
                            _find_bad_triple(vertices, nbrs),
                        )


def _find_bad_triple(vertices, nbrs, limit=400):
    """Brute-force search for a triple without exactly one median."""
    n = len(vertices)
    if n > limit:
        return None
    rows, cols = [], []
    for i, r in enumerate(nbrs):
        rows.extend([i] * len(r))
        cols.extend(r)
    graph = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    d = shortest_path(graph, unweighted=True, directed=False)
    for a, b, c in combinations(range(n), 3):
        ok = (
            (d[a] + d[:, b] == d[a, b])
            & (d[b] + d[:, c] == d[b, c])
            & (d[a] + d[:, c] == d[a, c])
        )
        if ok.sum() != 1:
            return (vertices[a], vertices[b], vertices[c])
    return None


# ---------------------------------------------------------------------------
# median operations
# ---------------------------------------------------------------------------


def median(c, x, y, z):
    sx, sy, sz = c.sign_vector(x), c.sign_vector(y), c.sign_vector(z)
    return c.vertex_with_sign((sx & sy) | (sy & sz) | (sx & sz))


def interval(c, x, y):
    sx, sy = c.sign_vector(x), c.sign_vector(y)
    agree = ~(sx ^ sy)
    return [v for v, s in zip(c.vertices, c._sign) if not ((s ^ sx) & agree)]


def _masks(c, S):
    it = iter(S)
    try:
        first = c.sign_vector(next(it))
    except StopIteration:
        raise ValueError("vertex set must be nonempty") from None
    both = either = first
    for v in it:
        s = c.sign_vector(v)
        both &= s
        either |= s
    return both, either


def convex_hull(c, S, method="halfspaces"):
    """Smallest convex vertex set containing ``S``.

    ``method="intervals"`` closes ``S`` under pairwise intervals until it
    stops growing; ``"halfspaces"`` intersects every halfspace containing
    ``S``.  Both return the same set.
    """
    S = set(S)
    if not S:
        raise ValueError("vertex set must be nonempty")
    if method == "halfspaces":
        both, either = _masks(c, S)
        fixed = ~(both ^ either)
        return [v for v, s in zip(c.vertices, c._sign) if not ((s ^ both) & fixed)]
    if method != "intervals":
        raise ValueError(f"unknown hull method {method!r}")
    hull = set(S)
    frontier = list(hull)
    while frontier:
        new = set()
        current = sort_canon(hull)
        for x in frontier:
            for y in current:
                for z in interval(c, x, y):
                    if z not in hull:
                        new.add(z)
        hull |= new
        frontier = list(new)
    return sort_canon(hull)


def is_convex(c, S):
    S = set(S)
    return len(convex_hull(c, S)) == len(S)


def _convex_witness(c, S):
    S = list(S)
    for x, y in combinations(S, 2):
        if not set(interval(c, x, y)) <= set(S):
            return (x, y)
    return None


def _require_convex(c, S):
    if not is_convex(c, S):
        raise NotConvex(_convex_witness(c, S))


def project(c, x, C):
    """Nearest vertex of the convex set ``C`` to ``x`` (the gate of ``x``)."""
    C = set(C)
    if not C:
        raise ValueError("target set must be nonempty")
    _require_convex(c, C)
    sx = c.sign_vector(x)
    best = min(C, key=lambda v: (_popcount(sx ^ c.sign_vector(v)), canon(v)))
    return best


def separating_hyperplanes(c, x, y):
    diff = c.sign_vector(x) ^ c.sign_vector(y)
    return [k for k in range(c.n_hyperplanes) if (diff >> k) & 1]


def crossing_hyperplanes(c, S):
    """Hyperplanes with vertices of ``S`` on both sides."""
    both, either = _masks(c, S)
    diff = both ^ either
    return [k for k in range(c.n_hyperplanes) if (diff >> k) & 1]


def hyperplanes_separating_sets(c, Y1, Y2):
    Y1, Y2 = set(Y1), set(Y2)
    if not Y1 or not Y2:
        raise ValueError("both sets must be nonempty")
    if Y1 & Y2:
        raise SetsIntersect(f"sets share {sort_canon(Y1 & Y2)[0]!r}")
    _require_convex(c, Y1)
    _require_convex(c, Y2)
    a1, o1 = _masks(c, Y1)
    a2, o2 = _masks(c, Y2)
    const1, const2 = ~(a1 ^ o1), ~(a2 ^ o2)
    sep = const1 & const2 & (a1 ^ a2)
    return [k for k in range(c.n_hyperplanes) if (sep >> k) & 1]


def link(c, v):
    i = c.index(v)
    nbr = c._nbrs[i]
    nbr_sets = {j: set(c._nbrs[j]) for j in nbr}
    verts = tuple((v, c.vertices[j]) for j in nbr)
    edges = set()
    for (ea, a), (eb, b) in combinations(zip(verts, nbr), 2):
        if (nbr_sets[a] & nbr_sets[b]) - {i}:
            edges.add(frozenset((ea, eb)))
    return LinkGraph(v, verts, frozenset(edges))


def _graph_adj(g):
    if isinstance(g, LinkGraph):
        return g.adjacency()
    return _as_adjacency(g)


def contains_induced_K23(g):
    """Exact test for an induced complete bipartite subgraph K_{2,3}."""
    adj = _graph_adj(g)
    verts = sort_canon(adj)
    for u, v in combinations(verts, 2):
        if v in adj[u]:
            continue
        common = sort_canon(adj[u] & adj[v])
        for x, y, z in combinations(common, 3):
            if y not in adj[x] and z not in adj[x] and z not in adj[y]:
                return True
    return False


def helly_intersection(c, family):
    """Common vertex of a family of convex sets.

    Returns ``HellyResult(point, None)`` when the sets pairwise intersect and
    ``HellyResult(None, (i, j))`` naming a disjoint pair otherwise.
    """
    sets = [set(S) for S in family]
    if not sets:
        raise ValueError("family must be nonempty")
    for S in sets:
        if not S:
            raise ValueError("family members must be nonempty")
        _require_convex(c, S)
    for i, j in combinations(range(len(sets)), 2):
        if not sets[i] & sets[j]:
            return HellyResult(None, (i, j))
    common = set.intersection(*sets)
    if not common:
        # impossible in a median graph
        raise AssertionError("pairwise intersecting convex sets with empty intersection")
    return HellyResult(sort_canon(common)[0], None)


def load_complex(path, method="auto"):
    with open(path) as fh:
        return verify_median_graph(json.load(fh), method=method)
