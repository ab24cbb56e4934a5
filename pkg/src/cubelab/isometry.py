"""Isometries of lazy complexes seen through finite windows.

Every verdict here is either backed by a finite check (a fixed vertex, an
inverted hyperplane, an axis whose translates cross pairwise disjoint
hyperplane sets) or reported as :class:`Inconclusive`.  Minimal-displacement
sets come with a stabilization flag: the minimum over the window must not
change between radius ``depth - 1`` and ``depth``.  That is a heuristic and
is labelled as such in the JSON reports.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
import random

from ._order import canon, sort_canon
from .median import CubeComplexError, convex_hull, interval, is_convex, link
from .lazy import FiniteComplex, ProductComplex, ball, ball_vertices, DEFAULT_VERTEX_CAP

# exhaustive median-closure checks up to this many triples, sampling above
TRIPLE_LIMIT = 150_000


class Inconclusive(CubeComplexError):
    def __init__(self, depth, reason=""):
        msg = f"no verdict can be certified at depth {depth}"
        super().__init__(msg + (f": {reason}" if reason else ""))
        self.depth = depth
        self.reason = reason


class NotStabilized(CubeComplexError):
    def __init__(self, depth, values):
        super().__init__(f"windowed minimum changed between depth {depth - 1} and {depth}: {values}")
        self.depth = depth
        self.values = values


class ValidationFailed(CubeComplexError):
    pass


class ProductCheckFailed(CubeComplexError):
    def __init__(self, witness, reason):
        super().__init__(f"{reason} (witness: {witness!r})")
        self.witness = witness


class NotProduct(CubeComplexError, TypeError):
    pass


@dataclass(frozen=True)
class AxisWitness:
    base: object
    period_path: tuple  # geodesic from base to g(base)
    translation_length: int
    horizon: int  # translates 0..horizon were checked
    labels: tuple  # wall labels crossed by the period path

    def to_json(self):
        return {
            "base": _j(self.base),
            "period_path": [_j(v) for v in self.period_path],
            "translation_length": self.translation_length,
            "horizon": self.horizon,
        }


@dataclass(frozen=True)
class Classification:
    verdict: str  # "elliptic" | "loxodromic" | "inversion"
    witness: object
    depth_used: int
    power: int = 0  # for inversions

    def to_json(self):
        out = {"verdict": self.verdict, "depth_used": self.depth_used}
        if self.verdict == "loxodromic":
            out["axis"] = self.witness.to_json()
        elif self.verdict == "inversion":
            out["hyperplane"] = _j(self.witness)
            out["power"] = self.power
        else:
            out["orbit"] = [_j(v) for v in self.witness]
        return out


@dataclass
class MinWindow:
    power: int
    vertices: frozenset
    displacement: int
    window: object = field(repr=False, default=None)
    stabilized: bool = True
    closure_check: str = "exhaustive"

    def to_json(self):
        return {
            "power": self.power,
            "displacement": self.displacement,
            "size": len(self.vertices),
            "vertices": [_j(v) for v in sort_canon(self.vertices)],
            "stabilized": self.stabilized,
            "median_closure": self.closure_check,
        }


@dataclass
class SMinWindow:
    vertices: frozenset
    per_n: dict  # n -> MinWindow
    window: object = field(repr=False, default=None)

    def to_json(self):
        return {
            "size": len(self.vertices),
            "vertices": [_j(v) for v in sort_canon(self.vertices)],
            "per_n": [
                {"n": n, "displacement": m.displacement, "size": len(m.vertices)}
                for n, m in sorted(self.per_n.items())
            ],
        }


@dataclass
class Decomposition:
    transverse_labels: tuple
    axis_labels: tuple
    coords: dict  # vertex -> (transverse bits, axis bits)
    checked_pairs: int
    smin: SMinWindow = field(repr=False, default=None)

    def to_json(self):
        return {
            "transverse_labels": [_j(x) for x in self.transverse_labels],
            "axis_labels": [_j(x) for x in self.axis_labels],
            "coords": [
                {"vertex": _j(v), "transverse": "".join(map(str, t)), "axis": "".join(map(str, a))}
                for v, (t, a) in sorted(self.coords.items(), key=lambda kv: canon(kv[0]))
            ],
            "checked_pairs": self.checked_pairs,
            "bijection": True,
        }


def _j(v):
    if isinstance(v, tuple):
        return [_j(x) for x in v]
    return v


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


def window_dimension(c):
    """Largest cube dimension in a finite complex (max clique of links)."""
    best = 1 if c.n_hyperplanes else 0
    for v in c.vertices:
        lg = link(c, v)
        adj = lg.adjacency()
        best = max(best, _max_clique(adj))
    return best


def _max_clique(adj):
    nodes = sort_canon(adj)
    best = 0

    def grow(clique, cand):
        nonlocal best
        if len(clique) > best:
            best = len(clique)
        for i, u in enumerate(cand):
            if len(clique) + len(cand) - i <= best:
                return
            grow(clique + [u], [w for w in cand[i + 1:] if w in adj[u]])

    grow([], nodes)
    return best


def _inverted_edge(g, lc, verts, k):
    gk = g ** k
    for u in verts:
        for v, lab in lc.neighbors(u):
            if canon(v) < canon(u):
                continue
            gu, gv = gk(u), gk(v)
            if lc.label(gu, gv) == lab and lc.distance(gu, v) < lc.distance(gu, u):
                return lab
    return None


def classify(g, lc, depth, vertex_cap=DEFAULT_VERTEX_CAP):
    """Elliptic, inversion or loxodromic, each with a finite witness."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    depths = ball_vertices(lc, lc.root, depth, vertex_cap)
    verts = sort_canon(depths)
    for v in verts:
        if g(v) == v:
            return Classification("elliptic", (v,), depth)
    # the power bound needs the true dimension, not that of a small window;
    # the lazy kinds are vertex-transitive, so the root ball suffices
    if isinstance(lc, FiniteComplex):
        dim = window_dimension(lc.complex)
    else:
        dim = window_dimension(ball(lc, lc.root, 2, vertex_cap).complex)
    for k in range(1, max(dim, 1) + 1):
        lab = _inverted_edge(g, lc, verts, k)
        if lab is not None:
            return Classification("inversion", lab, depth, power=k)
    for v in verts:
        orbit = [v]
        w = g(v)
        while w != v and w in depths and len(orbit) <= len(depths):
            orbit.append(w)
            w = g(w)
        if w == v:
            return Classification("elliptic", tuple(orbit), depth)
    try:
        return Classification("loxodromic", axis(g, lc, depth, vertex_cap), depth)
    except ValidationFailed as e:
        raise Inconclusive(depth, str(e)) from None


def _displacements(g, lc, depths):
    return {v: lc.distance(v, g(v)) for v in depths}


def translation_length(g, lc, depth, vertex_cap=DEFAULT_VERTEX_CAP):
    """Minimal displacement over the window, stable from depth-1 to depth.

    Returns ``(length, least minimizing vertex)``.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    depths = ball_vertices(lc, lc.root, depth, vertex_cap)
    disp = _displacements(g, lc, depths)
    m_full = min(disp.values())
    m_inner = min(d for v, d in disp.items() if depths[v] < depth)
    if m_full != m_inner:
        raise NotStabilized(depth, (m_inner, m_full))
    base = min((v for v, d in disp.items() if d == m_full), key=canon)
    return m_full, base


def validate_axis(g, lc, x, horizon):
    """Check that ``x`` lies on an axis; return the witness or raise."""
    gx = g(x)
    tau = lc.distance(x, gx)
    if tau == 0:
        raise ValidationFailed(f"{x!r} is fixed")
    path = lc.geodesic(x, gx)
    labels = lc.path_labels(path)
    seen = set(labels)
    if len(seen) != len(labels):
        raise ValidationFailed("period path is not a geodesic")
    cur = list(path)
    for i in range(1, horizon + 1):
        cur = [g(v) for v in cur]
        labs = lc.path_labels(cur)
        if seen.intersection(labs):
            raise ValidationFailed(f"translate {i} of the period path recrosses a hyperplane at {x!r}")
        seen.update(labs)
    return AxisWitness(x, tuple(path), tau, horizon, tuple(labels))


def axis(g, lc, depth, vertex_cap=DEFAULT_VERTEX_CAP):
    """Validated axis through a minimal-displacement vertex.

    Minimizers are tried nearest-the-root first (canonical order on ties),
    so the axis runs through the middle of windows centred at the root.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    depths = ball_vertices(lc, lc.root, depth, vertex_cap)
    disp = _displacements(g, lc, depths)
    m = min(disp.values())
    if m == 0:
        raise ValidationFailed("g fixes a vertex of the window")
    last = None
    for x in sorted((v for v, d in disp.items() if d == m), key=lambda v: (depths[v], canon(v))):
        try:
            return validate_axis(g, lc, x, depth)
        except ValidationFailed as e:
            last = e
    raise ValidationFailed(f"no minimizer lies on a validated axis ({last})")


def axis_line(g, ax, lo, hi):
    """Vertices of the axis from ``g^lo(base)`` to ``g^hi(base)``."""
    path = list(ax.period_path)
    start = list(path)
    if lo > 0:
        start = [(g ** lo)(v) for v in path]
    elif lo < 0:
        gi = g.inverse()
        for _ in range(-lo):
            start = [gi(v) for v in start]
    out = [start[0]]
    cur = start
    for _ in range(lo, hi):
        out.extend(cur[1:])
        cur = [g(v) for v in cur]
    return out


def axis_in_ball(g, ax, lc, center, radius):
    """Longest run of consecutive axis vertices within the ball, ordered
    forward, containing the axis vertex nearest the centre."""
    tau = ax.translation_length
    reach = (radius + lc.distance(center, ax.base)) // tau + 2
    line = axis_line(g, ax, -reach, reach)
    dist = [lc.distance(center, v) for v in line]
    near = min(range(len(line)), key=lambda i: (dist[i], canon(line[i])))
    if dist[near] > radius:
        return []
    a = b = near
    while a > 0 and dist[a - 1] <= radius:
        a -= 1
    while b + 1 < len(line) and dist[b + 1] <= radius:
        b += 1
    return line[a:b + 1]


def axis_center(g, ax, lc):
    """Axis vertex nearest the root (ties by canonical key)."""
    seg = axis_in_ball(g, ax, lc, lc.root, lc.distance(lc.root, ax.base) + ax.translation_length)
    return min(seg, key=lambda v: (lc.distance(lc.root, v), canon(v)))


# ---------------------------------------------------------------------------
# minimal sets
# ---------------------------------------------------------------------------


def _check_median_closed(c, members, seed=0):
    """Every median of member triples that lies in the window is a member.

    Returns "exhaustive" or "sampled"; raises ValidationFailed otherwise.
    """
    ms = sort_canon(members)
    signs = [c.sign_vector(v) for v in ms]
    inside = set(signs)
    n = len(ms)
    total = n * (n - 1) * (n - 2) // 6
    if total <= TRIPLE_LIMIT:
        triples = combinations(range(n), 3)
        mode = "exhaustive"
    else:
        rng = random.Random(seed)
        triples = (tuple(rng.sample(range(n), 3)) for _ in range(TRIPLE_LIMIT))
        mode = "sampled"
    for a, b, d in triples:
        sa, sb, sd = signs[a], signs[b], signs[d]
        m = (sa & sb) | (sb & sd) | (sa & sd)
        if m in inside:
            continue
        med = c.vertex_with_sign(m)
        if med is not None:
            raise ValidationFailed(
                f"median {med!r} of {(ms[a], ms[b], ms[d])!r} lies in the window but not in the set"
            )
    return mode


def min_set_window(g, n, lc, depth, center=None, vertex_cap=DEFAULT_VERTEX_CAP, seed=0):
    """Window vertices minimizing the displacement of ``g^n``."""
    if n < 1 or depth < 1:
        raise ValueError("n and depth must be positive")
    center = lc.root if center is None else center
    w = ball(lc, center, depth, vertex_cap)
    gn = g ** n
    disp = {v: lc.distance(v, gn(v)) for v in w.complex.vertices}
    m_full = min(disp.values())
    m_inner = min(d for v, d in disp.items() if v not in w.boundary)
    if m_full != m_inner:
        raise NotStabilized(depth, (m_inner, m_full))
    members = frozenset(v for v, d in disp.items() if d == m_full)
    mode = _check_median_closed(w.complex, members, seed)
    return MinWindow(n, members, m_full, w, True, mode)


def smin_window(g, lc, depth, n_max, center=None, vertex_cap=DEFAULT_VERTEX_CAP,
                threads=1, seed=0):
    """Union of the windowed Min(g^n), n = 1..n_max."""
    if n_max < 1:
        raise ValueError("n_max must be positive")
    center = lc.root if center is None else center
    w = ball(lc, center, depth, vertex_cap)  # build once before fanning out

    def one(n):
        return min_set_window(g, n, lc, depth, center, vertex_cap, seed)

    ns = list(range(1, n_max + 1))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(one, ns))
    else:
        results = [one(n) for n in ns]
    per_n = dict(zip(ns, results))
    union = frozenset().union(*(m.vertices for m in results))
    _check_median_closed(w.complex, union, seed)
    return SMinWindow(union, per_n, w)


def _crossing(c, members):
    """Local hyperplanes with members on both sides."""
    members = list(members)
    both = either = c.sign_vector(members[0])
    for v in members[1:]:
        s = c.sign_vector(v)
        both &= s
        either |= s
    varying = both ^ either
    return [k for k in range(c.n_hyperplanes) if (varying >> k) & 1]


def _axis_labels(g, lc, depth, center, vertex_cap):
    ax = axis(g, lc, depth, vertex_cap)
    seg = axis_in_ball(g, ax, lc, center, depth)
    return ax, seg, set(lc.path_labels(seg))


def smin_coordinates(g, lc, depth, n_max, center=None, vertex_cap=DEFAULT_VERTEX_CAP,
                     threads=1, seed=0):
    """SMin window plus axis-class / transverse-class wall coordinates."""
    center = lc.root if center is None else center
    sm = smin_window(g, lc, depth, n_max, center, vertex_cap, threads, seed)
    w = sm.window
    c = w.complex
    _, _, axis_labs = _axis_labels(g, lc, depth, center, vertex_cap)
    cross = _crossing(c, sm.vertices)
    ax_ids = [k for k in cross if w.labels[k] in axis_labs]
    tr_ids = [k for k in cross if w.labels[k] not in axis_labs]
    ax_ids.sort(key=lambda k: canon(w.labels[k]))
    tr_ids.sort(key=lambda k: canon(w.labels[k]))
    coords = {}
    for v in sm.vertices:
        s = c.sign_vector(v)
        coords[v] = (
            tuple((s >> k) & 1 for k in tr_ids),
            tuple((s >> k) & 1 for k in ax_ids),
        )
    return sm, tr_ids, ax_ids, coords


def decompose_smin(g, lc, depth, n_max, center=None, vertex_cap=DEFAULT_VERTEX_CAP,
                   threads=1, seed=0):
    """Split SMin into transverse x axis coordinates and check that the map
    is a bijection onto a product set over the window interior."""
    sm, tr_ids, ax_ids, coords = smin_coordinates(
        g, lc, depth, n_max, center, vertex_cap, threads, seed
    )
    w = sm.window
    c = w.complex
    back = {}
    for v, key in coords.items():
        if key in back:
            raise ProductCheckFailed((back[key], v), "two SMin vertices share coordinates")
        back[key] = v
    # bits of walls not crossing SMin are constant on it
    some = next(iter(sm.vertices))
    base_sign = c.sign_vector(some)
    for k in tr_ids + ax_ids:
        base_sign &= ~(1 << k)
    center_sign = c.sign_vector(w.center)
    ts = sorted({t for t, _ in coords.values()})
    as_ = sorted({a for _, a in coords.values()})
    checked = 0
    for t in ts:
        st = base_sign
        for k, b in zip(tr_ids, t):
            st |= b << k
        for a in as_:
            s = st
            for k, b in zip(ax_ids, a):
                s |= b << k
            if bin(s ^ center_sign).count("1") > w.radius - 1:
                continue  # would lie outside the interior
            checked += 1
            if (t, a) not in back:
                raise ProductCheckFailed(
                    (back[(t, as_[0])] if (t, as_[0]) in back else t, a),
                    "coordinate pair inside the window interior has no preimage",
                )
    labels = w.labels
    return Decomposition(
        tuple(labels[k] for k in tr_ids),
        tuple(labels[k] for k in ax_ids),
        coords,
        checked,
        sm,
    )


def interval_window(g, lc, depth, center=None, vertex_cap=DEFAULT_VERTEX_CAP):
    """Union of geodesics between axis vertices inside the window."""
    center = lc.root if center is None else center
    w = ball(lc, center, depth, vertex_cap)
    ax, seg, _ = _axis_labels(g, lc, depth, center, vertex_cap)
    if not seg:
        raise ValidationFailed("the axis misses the window")
    c = w.complex
    iv = frozenset(interval(c, seg[0], seg[-1]))
    hull = frozenset(convex_hull(c, seg))
    if iv != hull:
        raise ValidationFailed("interval of the axis ends differs from the hull of the segment")
    if not is_convex(c, list(iv)):
        raise ValidationFailed("interval of the axis segment is not convex in the window")
    return iv


def fixed_set_growth(g, lc, depth, n_max, vertex_cap=DEFAULT_VERTEX_CAP):
    """Sizes of Fix(g2^n) in the factor-2 ball, for g = (g1, g2) with g1
    loxodromic on factor 1."""
    if not isinstance(lc, ProductComplex) or len(lc.factors) != 2 or not g.is_product:
        raise NotProduct("fixed_set_growth needs a product isometry of a two-factor product")
    g1, g2 = g.factors
    if classify(g1, lc.factors[0], depth, vertex_cap).verdict != "loxodromic":
        raise NotProduct("first factor of g is not loxodromic")
    f2 = lc.factors[1]
    verts = ball_vertices(f2, f2.root, depth, vertex_cap)
    out = []
    for n in range(1, n_max + 1):
        gn = g2 ** n
        out.append((n, sum(1 for v in verts if gn(v) == v)))
    return out
