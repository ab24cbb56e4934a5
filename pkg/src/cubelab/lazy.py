"""Infinite CAT(0) cube complexes generated on demand.

Every generator knows three things about a vertex key: its neighbours, the
stable label of the hyperplane dual to each incident edge, and the exact
distance to any other key.  Windows (metric balls) materialize as finite
:class:`~cubelab.median.CubeComplex` objects.

Vertex keys:

* ``TreeComplex(k)``: the Cayley graph of the free product of ``k`` copies
  of Z/2, i.e. the k-valent tree; keys are reduced colour sequences from
  the root ``()``.
* ``LineComplex``: integers.
* ``ProductComplex``: pairs of factor keys.
* ``RaagCover``: normal-form letter tuples of the right-angled Artin group.
* ``FiniteComplex``: vertices of a wrapped finite complex.
"""

from collections import OrderedDict, deque
from dataclasses import dataclass
import json

from ._order import canon, sort_canon
from .median import CubeComplexError, NotMedian, verify_median_graph
from . import raag as _raag

DEFAULT_VERTEX_CAP = 200_000


class BudgetExceeded(CubeComplexError, RuntimeError):
    pass


class LabelMismatch(CubeComplexError, RuntimeError):
    """Local hyperplanes of a window disagree with generator wall labels."""


class LazyComplex:
    kind = "abstract"
    root = None

    def neighbors(self, v):
        """List of ``(neighbour, wall label)`` in canonical order."""
        raise NotImplementedError

    def distance(self, u, v):
        raise NotImplementedError

    def label(self, u, v):
        for w, lab in self.neighbors(u):
            if w == v:
                return lab
        raise KeyError(f"{u!r} and {v!r} are not adjacent")

    def geodesic(self, u, v):
        """Vertex path from ``u`` to ``v``; each step takes the least
        neighbour (canonical order) that moves closer."""
        path = [u]
        d = self.distance(u, v)
        while d:
            for w, _ in self.neighbors(path[-1]):
                if self.distance(w, v) == d - 1:
                    path.append(w)
                    d -= 1
                    break
            else:
                raise CubeComplexError(f"no neighbour of {path[-1]!r} approaches {v!r}")
        return path

    def path_labels(self, path):
        return [self.label(a, b) for a, b in zip(path, path[1:])]

    def interval(self, u, v):
        """Every vertex on some geodesic from ``u`` to ``v``."""
        d = self.distance(u, v)
        seen = {u}
        layer = [u]
        for step in range(d):
            nxt = set()
            for x in layer:
                for w, _ in self.neighbors(x):
                    if w not in seen and self.distance(w, v) == d - step - 1:
                        nxt.add(w)
            seen |= nxt
            layer = nxt
        return seen

    def descriptor(self):
        raise NotImplementedError


class TreeComplex(LazyComplex):
    kind = "tree"
    root = ()

    def __init__(self, valence):
        if valence < 2:
            raise ValueError("tree valence must be at least 2")
        self.valence = valence

    def __repr__(self):
        return f"TreeComplex({self.valence})"

    def neighbors(self, w):
        out = []
        for c in range(self.valence):
            if w and w[-1] == c:
                out.append((w[:-1], ("t", w)))
            else:
                u = w + (c,)
                out.append((u, ("t", u)))
        out.sort(key=lambda p: canon(p[0]))
        return out

    def distance(self, u, v):
        k = 0
        for a, b in zip(u, v):
            if a != b:
                break
            k += 1
        return len(u) + len(v) - 2 * k

    @staticmethod
    def multiply(a, b):
        out = list(a)
        for c in b:
            if out and out[-1] == c:
                out.pop()
            else:
                out.append(c)
        return tuple(out)

    def descriptor(self):
        return {"kind": "tree", "valence": self.valence}


class LineComplex(LazyComplex):
    kind = "line"
    root = 0

    def __repr__(self):
        return "LineComplex()"

    def neighbors(self, v):
        return [(v - 1, ("l", v - 1)), (v + 1, ("l", v))]

    def distance(self, u, v):
        return abs(u - v)

    def descriptor(self):
        return {"kind": "line"}


class ProductComplex(LazyComplex):
    kind = "product"

    def __init__(self, *factors):
        if len(factors) < 2:
            raise ValueError("a product needs at least two factors")
        self.factors = tuple(factors)
        self.root = tuple(f.root for f in factors)

    def __repr__(self):
        return f"ProductComplex{self.factors!r}"

    def neighbors(self, v):
        out = []
        for i, f in enumerate(self.factors):
            for w, lab in f.neighbors(v[i]):
                out.append((v[:i] + (w,) + v[i + 1:], (i, lab)))
        out.sort(key=lambda p: canon(p[0]))
        return out

    def distance(self, u, v):
        return sum(f.distance(a, b) for f, a, b in zip(self.factors, u, v))

    def descriptor(self):
        return {"kind": "product", "factors": [f.descriptor() for f in self.factors]}


def product(a, b, *more):
    return ProductComplex(a, b, *more)


class RaagCover(LazyComplex):
    """Universal cover of the Salvetti complex: the Cayley graph of A(G)."""

    kind = "raag"
    root = ()

    def __init__(self, dg):
        self.graph = dg
        n = len(dg.generators)
        self._link_mask = []
        for i in range(n):
            m = 0
            for j in range(n):
                if dg.adjacent(i, j):
                    m |= 1 << j
            self._link_mask.append(m)

    def __repr__(self):
        return f"RaagCover({self.graph!r})"

    def coset_rep(self, g, gen):
        """Shortest representative of ``g * A(link(gen))``."""
        mask = self._link_mask[gen]
        w = list(g)
        dg = self.graph
        changed = True
        while changed:
            changed = False
            for i in range(len(w) - 1, -1, -1):
                x = w[i]
                if (mask >> (x >> 1)) & 1 and all(dg.commutes(x, y) for y in w[i + 1:]):
                    del w[i]
                    changed = True
                    break
        return _raag.normal_form(w, dg)

    def _edge_label(self, lower, gen):
        return ("h", gen, self.coset_rep(lower, gen))

    def neighbors(self, w):
        dg = self.graph
        out = []
        for x in range(2 * len(dg.generators)):
            u = _raag.normal_form(w + (x,), dg)
            lower = w if not x & 1 else u
            out.append((u, self._edge_label(lower, x >> 1)))
        out.sort(key=lambda p: canon(p[0]))
        return out

    def distance(self, u, v):
        return len(_raag.normal_form(_raag.inverse(u) + tuple(v), self.graph))

    def descriptor(self):
        return {"kind": "raag", "graph": self.graph.to_json()}


def raag_cover(dg):
    return RaagCover(dg)


class FiniteComplex(LazyComplex):
    kind = "finite"

    def __init__(self, complex, root=None):
        self.complex = complex
        self.root = complex.vertices[0] if root is None else root

    def neighbors(self, v):
        c = self.complex
        return [(u, ("f", c.hyperplane_of_edge(v, u))) for u in sort_canon(c.neighbors(v))]

    def distance(self, u, v):
        return self.complex.distance(u, v)

    def descriptor(self):
        return {"kind": "finite", "complex": self.complex.to_json()}


# ---------------------------------------------------------------------------
# windows
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Window:
    complex: object
    center: object
    radius: int
    boundary: frozenset
    labels: tuple  # wall label of each local hyperplane
    source: object = None  # the lazy complex the ball was cut from

    def __post_init__(self):
        object.__setattr__(self, "_label_index", {lab: k for k, lab in enumerate(self.labels)})
        object.__setattr__(self, "_outside", None)

    def outside_edges(self):
        """Wall label -> boundary vertices having an edge with that label
        that leaves the window."""
        if self._outside is None:
            out = {}
            if self.source is not None:
                c = self.complex
                for v in sort_canon(self.boundary):
                    for u, lab in self.source.neighbors(v):
                        if u not in c:
                            out.setdefault(lab, set()).add(v)
            object.__setattr__(self, "_outside", {k: frozenset(v) for k, v in out.items()})
        return self._outside

    def full_carrier(self, k):
        """Window vertices lying on the carrier of hyperplane ``k`` in the
        whole complex, including boundary vertices whose dual edge leaves."""
        extra = self.outside_edges().get(self.labels[k], frozenset())
        return self.complex.carrier(k) | extra

    def hyperplane_for_label(self, label):
        """Local hyperplane id carrying ``label``, or ``None``."""
        return self._label_index.get(label)

    def interior(self):
        return [v for v in self.complex.vertices if v not in self.boundary]

    def depth_of(self, v):
        return self.complex.distance(self.center, v)


def ball_vertices(lc, center=None, radius=1, vertex_cap=DEFAULT_VERTEX_CAP):
    """Depth of every vertex of the ball, in BFS order; no validation."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if center is None:
        center = lc.root
    dist = {center: 0}
    layer = [center]
    for d in range(radius):
        nxt = []
        for v in layer:
            for u, _ in lc.neighbors(v):
                if u not in dist:
                    dist[u] = d + 1
                    nxt.append(u)
        if len(dist) > vertex_cap:
            raise BudgetExceeded(f"ball of radius {radius} exceeds {vertex_cap} vertices")
        layer = nxt
    return dist


_BALL_CACHE = OrderedDict()
_BALL_CACHE_SIZE = 8


def ball(lc, center=None, radius=1, vertex_cap=DEFAULT_VERTEX_CAP, method="auto"):
    """Exact metric ball as a validated window.

    Windows are cached per (complex descriptor, centre, radius, method), so
    the analyses below can ask for the same ball repeatedly.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if center is None:
        center = lc.root
    try:
        key = (json.dumps(lc.descriptor(), sort_keys=True), repr(center), radius, method)
    except (NotImplementedError, TypeError):
        key = None
    if key is not None and key in _BALL_CACHE:
        _BALL_CACHE.move_to_end(key)
        return _BALL_CACHE[key]
    w = _build_ball(lc, center, radius, vertex_cap, method)
    if key is not None:
        _BALL_CACHE[key] = w
        while len(_BALL_CACHE) > _BALL_CACHE_SIZE:
            _BALL_CACHE.popitem(last=False)
    return w


def _convex_closure(lc, center, dist, edges, vertex_cap):
    """Grow ``dist``/``edges`` in place to the convex hull of the vertex set.

    A neighbour of a convex set lies in its hull exactly when the wall of
    the connecting edge already crosses the set, and adding such vertices
    crosses no new walls, so the hull is the closure under that rule.
    """
    crossed = set(edges.values())
    queue = deque(sort_canon(dist))
    while queue:
        v = queue.popleft()
        for u, lab in lc.neighbors(v):
            if u not in dist:
                if lab not in crossed:
                    continue
                dist[u] = lc.distance(center, u)
                if len(dist) > vertex_cap:
                    raise BudgetExceeded(f"convex hull of the ball exceeds {vertex_cap} vertices")
                queue.append(u)
            key = (v, u) if canon(v) < canon(u) else (u, v)
            edges[key] = lab


def _build_ball(lc, center, radius, vertex_cap, method):
    dist = {center: 0}
    queue = deque([center])
    edges = {}
    while queue:
        v = queue.popleft()
        d = dist[v]
        for u, lab in lc.neighbors(v):
            if u not in dist:
                if d == radius:
                    continue
                dist[u] = d + 1
                if len(dist) > vertex_cap:
                    raise BudgetExceeded(
                        f"ball of radius {radius} exceeds {vertex_cap} vertices"
                    )
                queue.append(u)
            key = (v, u) if canon(v) < canon(u) else (u, v)
            edges[key] = lab
    try:
        c = verify_median_graph((list(dist), list(edges)), method=method)
    except NotMedian:
        # balls of complexes of dimension 3 and up need not be median;
        # use the convex hull of the ball instead
        _convex_closure(lc, center, dist, edges, vertex_cap)
        c = verify_median_graph((list(dist), list(edges)), method=method)
    labels = [None] * c.n_hyperplanes
    for (u, v), lab in edges.items():
        k = c.hyperplane_of_edge(u, v)
        if labels[k] is None:
            labels[k] = lab
        elif labels[k] != lab:
            raise LabelMismatch(f"hyperplane J{k} carries labels {labels[k]!r} and {lab!r}")
    if len(set(labels)) != len(labels):
        raise LabelMismatch("two local hyperplanes share a wall label")
    boundary = frozenset(v for v, d in dist.items() if d >= radius)
    return Window(c, center, radius, boundary, tuple(labels), lc)


# ---------------------------------------------------------------------------
# isometries
# ---------------------------------------------------------------------------


class Isometry:
    """Vertex bijection of a lazy complex, with its inverse."""

    def __init__(self, fn, inv, description, factors=None):
        self._fn = fn
        self._inv = inv
        self.description = description
        self.factors = factors

    def __call__(self, v):
        return self._fn(v)

    def __repr__(self):
        return f"Isometry({json.dumps(self.description, sort_keys=True)})"

    def inverse(self):
        facs = None if self.factors is None else tuple(f.inverse() for f in self.factors)
        return Isometry(self._inv, self._fn, {"kind": "inverse", "of": self.description}, facs)

    def compose(self, other):
        """``self`` after ``other``."""
        f, g = self._fn, other._fn
        fi, gi = self._inv, other._inv
        facs = None
        if self.factors is not None and other.factors is not None:
            facs = tuple(a.compose(b) for a, b in zip(self.factors, other.factors))
        return Isometry(
            lambda v: f(g(v)),
            lambda v: gi(fi(v)),
            {"kind": "compose", "parts": [self.description, other.description]},
            facs,
        )

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        fn, inv = self._fn, self._inv

        def fwd(v):
            for _ in range(n):
                v = fn(v)
            return v

        def bwd(v):
            for _ in range(n):
                v = inv(v)
            return v

        facs = None if self.factors is None else tuple(f ** n for f in self.factors)
        return Isometry(fwd, bwd, {"kind": "power", "of": self.description, "n": n}, facs)

    @property
    def is_product(self):
        return self.factors is not None


def identity():
    return Isometry(lambda v: v, lambda v: v, {"kind": "identity"})


def tree_word(word):
    """Left multiplication by a colour word on a :class:`TreeComplex`."""
    w = TreeComplex.multiply((), tuple(word))
    winv = tuple(reversed(w))
    return Isometry(
        lambda v: TreeComplex.multiply(w, v),
        lambda v: TreeComplex.multiply(winv, v),
        {"kind": "tree-word", "word": list(w)},
    )


def tree_rotation(perm):
    """Colour permutation fixing the root of a :class:`TreeComplex`."""
    perm = tuple(perm)
    if sorted(perm) != list(range(len(perm))):
        raise ValueError("not a permutation")
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    inv = tuple(inv)
    return Isometry(
        lambda v: tuple(perm[c] for c in v),
        lambda v: tuple(inv[c] for c in v),
        {"kind": "tree-rotation", "perm": list(perm)},
    )


def line_translation(shift):
    return Isometry(
        lambda v: v + shift, lambda v: v - shift, {"kind": "line-translation", "shift": shift}
    )


def line_reflection(center):
    """``x -> center - x``; an inversion when ``center`` is odd."""
    return Isometry(
        lambda v: center - v, lambda v: center - v, {"kind": "line-reflection", "center": center}
    )


def product_isometry(*factors):
    fs = tuple(factors)
    return Isometry(
        lambda v: tuple(f(x) for f, x in zip(fs, v)),
        lambda v: tuple(f.inverse()(x) for f, x in zip(fs, v)),
        {"kind": "product", "factors": [f.description for f in fs]},
        fs,
    )


def raag_element(cover, word):
    dg = cover.graph
    w = _raag.normal_form(word, dg)
    wi = _raag.inverse(w)
    return Isometry(
        lambda v: _raag.normal_form(w + tuple(v), dg),
        lambda v: _raag.normal_form(wi + tuple(v), dg),
        {"kind": "raag", "word": _raag.format_word(w, dg)},
    )


def permutation(mapping):
    fwd = dict(mapping)
    bwd = {v: k for k, v in fwd.items()}
    if len(bwd) != len(fwd):
        raise ValueError("mapping is not injective")
    return Isometry(
        lambda v: fwd.get(v, v),
        lambda v: bwd.get(v, v),
        {"kind": "permutation", "map": [[_j(k), _j(v)] for k, v in sort_canon_items(fwd)]},
    )


def sort_canon_items(d):
    return sorted(d.items(), key=lambda kv: canon(kv[0]))


def _j(v):
    return [_j(x) for x in v] if isinstance(v, tuple) else v


def _h(v):
    return tuple(_h(x) for x in v) if isinstance(v, list) else v


# ---------------------------------------------------------------------------
# descriptors
# ---------------------------------------------------------------------------


def complex_from_descriptor(desc):
    kind = desc.get("kind")
    if kind == "tree":
        return TreeComplex(int(desc["valence"]))
    if kind == "line":
        return LineComplex()
    if kind == "product":
        return ProductComplex(*[complex_from_descriptor(f) for f in desc["factors"]])
    if kind == "raag":
        return RaagCover(_raag.DefiningGraph.from_json(desc["graph"]))
    if kind == "finite":
        return FiniteComplex(verify_median_graph(desc["complex"]))
    raise ValueError(f"unknown complex kind {kind!r}")


def isometry_from_descriptor(desc, lc):
    kind = desc.get("kind")
    if kind == "identity":
        return identity()
    if kind == "tree-word":
        return tree_word(desc["word"])
    if kind == "tree-rotation":
        return tree_rotation(desc["perm"])
    if kind == "line-translation":
        return line_translation(int(desc["shift"]))
    if kind == "line-reflection":
        return line_reflection(int(desc["center"]))
    if kind == "product":
        if not isinstance(lc, ProductComplex):
            raise ValueError("product isometry on a non-product complex")
        return product_isometry(
            *[isometry_from_descriptor(d, f) for d, f in zip(desc["factors"], lc.factors)]
        )
    if kind == "raag":
        return raag_element(lc, desc["word"])
    if kind == "permutation":
        return permutation({_h(k): _h(v) for k, v in desc["map"]})
    if kind == "compose":
        parts = [isometry_from_descriptor(d, lc) for d in desc["parts"]]
        g = parts[0]
        for h in parts[1:]:
            g = g.compose(h)
        return g
    if kind == "power":
        return isometry_from_descriptor(desc["of"], lc) ** int(desc["n"])
    if kind == "inverse":
        return isometry_from_descriptor(desc["of"], lc).inverse()
    raise ValueError(f"unknown isometry kind {kind!r}")
