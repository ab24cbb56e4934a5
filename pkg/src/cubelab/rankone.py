"""Rank-one certificates and the evidence against them.

A :class:`SkewerCertificate` is a pair of nested halfspaces ``A`` inside
``B`` of a window together with a power ``k`` such that ``g^k B`` is a proper
subset of ``A``, where the bounding hyperplanes of ``A`` and ``B`` have at
most ``L`` common transversals and the region between them sits strictly
inside the window.  :func:`check_certificate` re-derives all of that from
scratch with different algorithms.

Negative evidence (:class:`HalfFlatWitness`, quasi-line widths, commuting
elements) never proves anything about the infinite complex; it is reported
next to an inconclusive verdict.
"""

from collections import deque
from dataclasses import dataclass, field
import json

import numpy as np

from ._order import canon, sort_canon
from .median import CubeComplexError, convex_hull
from .lazy import (
    ProductComplex,
    RaagCover,
    ball,
    ball_vertices,
    complex_from_descriptor,
    isometry_from_descriptor,
    raag_element,
    DEFAULT_VERTEX_CAP,
)
from .isometry import (
    Inconclusive,
    ValidationFailed,
    NotProduct,
    axis,
    axis_center,
    axis_in_ball,
    axis_line,
    classify,
    fixed_set_growth,
    smin_coordinates,
)
from . import raag as _raag


class SoundnessBreach(CubeComplexError, AssertionError):
    """A geometric rank-one certificate contradicts the algebraic verdict."""


class CertificateInvalid(CubeComplexError, ValueError):
    pass


# ---------------------------------------------------------------------------
# data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HalfspaceKey:
    edge: tuple  # (u, v) dual to the bounding hyperplane
    side_vertex: object  # the endpoint lying inside the halfspace
    label: object

    def to_json(self):
        return {"edge": [_j(x) for x in self.edge], "side_vertex": _j(self.side_vertex),
                "label": _j(self.label)}

    @classmethod
    def from_json(cls, d):
        return cls(tuple(_h(x) for x in d["edge"]), _h(d["side_vertex"]), _h(d.get("label")))


@dataclass(frozen=True)
class SkewerCertificate:
    halfspace_A: HalfspaceKey
    halfspace_B: HalfspaceKey
    power: int
    L: int
    depth: int
    center: object
    complex: dict = field(default=None, compare=False)
    isometry: dict = field(default=None, compare=False)

    def to_json(self):
        return {
            "type": "skewer-certificate",
            "complex": self.complex,
            "isometry": self.isometry,
            "center": _j(self.center),
            "depth": self.depth,
            "power": self.power,
            "L": self.L,
            "halfspace_A": self.halfspace_A.to_json(),
            "halfspace_B": self.halfspace_B.to_json(),
        }

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, d):
        if isinstance(d, str):
            d = json.loads(d)
        if d.get("type") != "skewer-certificate":
            raise CertificateInvalid("not a skewer certificate")
        return cls(
            HalfspaceKey.from_json(d["halfspace_A"]),
            HalfspaceKey.from_json(d["halfspace_B"]),
            int(d["power"]),
            int(d["L"]),
            int(d["depth"]),
            _h(d["center"]),
            d.get("complex"),
            d.get("isometry"),
        )


@dataclass(frozen=True)
class HalfFlatWitness:
    grid: tuple  # grid[h][t] = vertex at column t, height h
    bottom_row_on_hull: bool
    dimensions: tuple  # (a, c): a edges along the axis, c edges up

    def to_json(self):
        return {
            "dimensions": list(self.dimensions),
            "bottom_row_on_hull": self.bottom_row_on_hull,
            "grid": [[_j(v) for v in row] for row in self.grid],
        }


@dataclass(frozen=True)
class TrichotomyVerdict:
    case: str  # "RankOne" | "NonCyclicSC" | "FixGrowthEvidence" | "Inconclusive"
    evidence: object
    depth: int
    notes: str = ""

    def to_json(self):
        out = {"case": self.case, "depth": self.depth, "notes": self.notes}
        if self.case == "RankOne":
            out["certificate"] = self.evidence.to_json()
        elif self.case == "NonCyclicSC":
            h, n = self.evidence
            out["witness"] = h.description
            out["power"] = n
        elif self.case == "FixGrowthEvidence":
            out["sequence"] = [list(p) for p in self.evidence]
        return out


def _j(v):
    return [_j(x) for x in v] if isinstance(v, tuple) else v


def _h(v):
    return tuple(_h(x) for x in v) if isinstance(v, list) else v


# ---------------------------------------------------------------------------
# transversals
# ---------------------------------------------------------------------------


def _local(w, J):
    if isinstance(J, (int, np.integer)) and not isinstance(J, bool):
        return int(J)
    k = w.hyperplane_for_label(J)
    if k is None:
        raise KeyError(f"no window hyperplane carries label {J!r}")
    return k


def _crossing_row(c, j):
    """Boolean vector: which hyperplanes cross hyperplane ``j`` in ``c``
    (all four quarters occupied)."""
    mat = c.sign_matrix()
    col = mat[:, j]
    out = np.ones(c.n_hyperplanes, dtype=np.bool_)
    for sa in (False, True):
        rows = mat[col == sa]
        out &= rows.any(axis=0)  # some vertex on side 1 of K
        out &= (~rows).any(axis=0)  # some vertex on side 0 of K
    out[j] = False
    return out


def _bfs(c, sources):
    dist = {v: 0 for v in sources}
    queue = deque(sort_canon(sources))
    while queue:
        v = queue.popleft()
        for u in c.neighbors(v):
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def _bridge(c, N1, N2):
    """Closest-point sets of two vertex sets: ``(delta, B1, B2)``."""
    d2 = _bfs(c, N2)
    d1 = _bfs(c, N1)
    delta = min(d2[v] for v in N1)
    B1 = {v for v in N1 if d2[v] == delta}
    B2 = {v for v in N2 if d1[v] == delta}
    return delta, B1, B2


def count_common_transversals(w, J1, J2, _rows=None):
    """``(count, complete)`` for two disjoint window hyperplanes.

    ``count`` is the number of window hyperplanes crossing both.  Let ``d``
    be the distance between the two carriers and ``B1``, ``B2`` their
    closest-point sets (carriers taken in the whole complex, so edges
    leaving the window count).  The count is ``complete`` when the hull of
    ``B1 | B2`` avoids the boundary and ``B1 | B2`` stays within radius
    ``r - 1 - d`` of the centre.  Then ``B1`` is the full projection of one
    carrier to the other, every common transversal crosses it inside the
    window, and a crossing of ``J1`` with ``J2`` would have been seen.
    """
    c = w.complex
    j1, j2 = _local(w, J1), _local(w, J2)
    rows = _rows if _rows is not None else {}
    for j in (j1, j2):
        if j not in rows:
            rows[j] = _crossing_row(c, j)
    if j1 == j2 or rows[j1][j2]:
        raise ValueError("hyperplanes must be distinct and disjoint")
    count = int(np.count_nonzero(rows[j1] & rows[j2]))
    return count, _bridge_inside(w, j1, j2)


def _bridge_inside(w, j1, j2):
    c = w.complex
    delta, B1, B2 = _bridge(c, w.full_carrier(j1), w.full_carrier(j2))
    ends = B1 | B2
    if any(w.depth_of(v) > w.radius - 1 - delta for v in ends):
        return False
    return all(w.depth_of(v) <= w.radius - 1 for v in convex_hull(c, ends))


# ---------------------------------------------------------------------------
# skewers
# ---------------------------------------------------------------------------


def _members(c, k, v):
    """Halfspace of hyperplane ``k`` containing ``v``, as a frozenset."""
    return c.hyperplane(k).sides[c.side_of(v, k)]


def find_skewered_pair(g, lc, L_max, depth, vertex_cap=DEFAULT_VERTEX_CAP):
    """First skewer certificate in search order, or ``None``.

    Pairs ``(J_i, J_j)`` of hyperplanes dual to axis edges are tried by
    increasing separation ``j - i`` and then by position; powers ``k``
    ascend from 1 to ``depth``.  ``None`` means the search space at this
    depth is exhausted, not that ``g`` fails to be rank-one.
    """
    try:
        ax = axis(g, lc, depth, vertex_cap)
    except ValidationFailed:
        return None
    center = axis_center(g, ax, lc)
    w = ball(lc, center, depth, vertex_cap)
    c = w.complex
    seg = axis_in_ball(g, ax, lc, center, depth)
    if len(seg) < 3:
        return None
    J = [w.hyperplane_for_label(lc.label(a, b)) for a, b in zip(seg, seg[1:])]
    fwd = [_members(c, J[i], seg[i + 1]) for i in range(len(J))]
    rows = {}
    counts = {}
    powers = {}

    def image(i, k):
        # hyperplane g^k J_i and its forward halfspace, or None off-window
        key = (i, k)
        if key not in powers:
            gk = g ** k
            u, v = gk(seg[i]), gk(seg[i + 1])
            if u in c and v in c:
                K = w.hyperplane_for_label(lc.label(u, v))
                powers[key] = (K, _members(c, K, v), (u, v))
            else:
                powers[key] = None
        return powers[key]

    for sep in range(1, len(J)):
        for i in range(len(J) - sep):
            j = i + sep
            ji, jj = J[i], J[j]
            if ji not in rows:
                rows[ji] = _crossing_row(c, ji)
            if rows[ji][jj]:
                continue
            if not fwd[j] < fwd[i]:
                continue
            if (ji, jj) not in counts:
                counts[(ji, jj)] = count_common_transversals(w, ji, jj, rows)
            count, complete = counts[(ji, jj)]
            if count > L_max or not complete:
                continue
            if jj not in rows:
                rows[jj] = _crossing_row(c, jj)
            for k in range(1, depth + 1):
                im = image(i, k)
                if im is None:
                    break
                K, gB, _ = im
                if K == jj or rows[jj][K]:
                    continue
                if gB < fwd[j] and _bridge_inside(w, jj, K):
                    A = HalfspaceKey((seg[j], seg[j + 1]), seg[j + 1], w.labels[jj])
                    B = HalfspaceKey((seg[i], seg[i + 1]), seg[i + 1], w.labels[ji])
                    return SkewerCertificate(
                        A, B, k, count, depth, center, lc.descriptor(), g.description
                    )
    return None


def _halfspace_by_distance(c, edge, inside):
    """Vertices closer to ``inside`` than to the other endpoint (two BFS)."""
    u, v = edge
    if inside == u:
        u, v = v, u
    du, dv = _bfs(c, [u]), _bfs(c, [v])
    return frozenset(x for x in c.vertices if dv[x] < du[x])


def _transversal_labels(c, lc, side):
    """Wall labels of hyperplanes crossing the one bounding ``side``,
    found by walking squares along its dual edges."""
    dual = [(x, y) for x in side for y in c.neighbors(x) if y not in side]
    out = set()
    for x, y in dual:
        ny = set(c.neighbors(y))
        for wv in c.neighbors(x):
            if wv == y or wv not in side:
                continue
            for z in c.neighbors(wv):
                if z != x and z in ny:
                    out.add(lc.label(x, wv))
    return out, dual


def _carrier_by_labels(c, lc, edge):
    lab = lc.label(*edge)
    return {x for x in c.vertices if any(l == lab for _, l in lc.neighbors(x))}


def _check_bridge(c, lc, cert, e1, e2):
    """Closest pairs of the two carriers, measured with the generator's
    distance, must sit ``1 + delta`` inside the window, their interval
    closure one inside."""
    N1 = _carrier_by_labels(c, lc, e1)
    N2 = _carrier_by_labels(c, lc, e2)
    pairs = [(lc.distance(x, y), x, y) for x in N1 for y in N2]
    delta = min(p[0] for p in pairs)
    ends = {x for d, x, _ in pairs if d == delta} | {y for d, _, y in pairs if d == delta}
    r = cert.depth
    if any(lc.distance(cert.center, x) > r - 1 - delta for x in ends):
        raise CertificateInvalid("closest points of the carriers are too close to the boundary")
    hull = convex_hull(c, ends, method="intervals")
    if any(lc.distance(cert.center, x) > r - 1 for x in hull):
        raise CertificateInvalid("region between the hyperplanes reaches the window boundary")


def check_certificate(cert, lc=None, g=None, vertex_cap=DEFAULT_VERTEX_CAP):
    """Re-verify a certificate from its serialized data.

    Halfspaces come from BFS distances rather than sign vectors,
    transversals from square enumeration with generator wall labels rather
    than the quarter test, and the bridge from the generator's own distance
    function.  Returns ``True`` or raises :class:`CertificateInvalid`.
    """
    if not isinstance(cert, SkewerCertificate):
        cert = SkewerCertificate.from_json(cert)
    if lc is None:
        lc = complex_from_descriptor(cert.complex)
    if g is None:
        g = isometry_from_descriptor(cert.isometry, lc)
    if cert.power < 1:
        raise CertificateInvalid("power must be positive")
    w = ball(lc, cert.center, cert.depth, vertex_cap)
    c = w.complex
    for hk in (cert.halfspace_A, cert.halfspace_B):
        u, v = hk.edge
        if u not in c or v not in c or lc.distance(u, v) != 1:
            raise CertificateInvalid(f"edge {hk.edge!r} is not a window edge")
        if hk.side_vertex not in hk.edge:
            raise CertificateInvalid("side vertex is not an endpoint of its edge")
    A = _halfspace_by_distance(c, cert.halfspace_A.edge, cert.halfspace_A.side_vertex)
    B = _halfspace_by_distance(c, cert.halfspace_B.edge, cert.halfspace_B.side_vertex)
    if not A <= B or A == B:
        raise CertificateInvalid("A is not a proper subset of B")
    gk = g ** cert.power
    gu, gv = (gk(x) for x in cert.halfspace_B.edge)
    if gu not in c or gv not in c:
        raise CertificateInvalid("translated edge of B leaves the window")
    gB = _halfspace_by_distance(c, (gu, gv), gk(cert.halfspace_B.side_vertex))
    if not gB < A:
        raise CertificateInvalid("g^k B is not a proper subset of A")
    # the bounding hyperplanes must not cross
    tA, dualA = _transversal_labels(c, lc, A)
    tB, dualB = _transversal_labels(c, lc, B)
    labA = lc.label(*cert.halfspace_A.edge)
    labB = lc.label(*cert.halfspace_B.edge)
    if labB in tA or labA in tB:
        raise CertificateInvalid("bounding hyperplanes cross")
    common = (tA & tB) - {labA, labB}
    if len(common) > cert.L:
        raise CertificateInvalid(f"{len(common)} common transversals exceed L = {cert.L}")
    # both pairs of bounding hyperplanes must have their bridge well inside
    _check_bridge(c, lc, cert, cert.halfspace_A.edge, cert.halfspace_B.edge)
    _check_bridge(c, lc, cert, cert.halfspace_A.edge, (gu, gv))
    return True


# ---------------------------------------------------------------------------
# half-flats
# ---------------------------------------------------------------------------


def _axis_segment(g, ax, lc, length):
    """Consecutive axis vertices around the axis vertex nearest the root,
    ``length`` edges long."""
    tau = ax.translation_length
    reach = length // tau + 2
    line = axis_line(g, ax, -reach, reach)
    x0 = axis_center(g, ax, lc)
    mid = line.index(x0)
    lo = max(0, mid - length // 2)
    return line[lo:lo + length + 1]


def _geodesics_in(lc, hull, a, limit):
    """Up to ``limit`` geodesic vertex paths of ``a`` edges inside ``hull``."""
    out = []
    for s in sort_canon(hull):
        stack = [[s]]
        while stack and len(out) < limit:
            p = stack.pop()
            if len(p) == a + 1:
                out.append(p)
                continue
            nxt = [u for u, _ in lc.neighbors(p[-1]) if u in hull and lc.distance(s, u) == len(p)]
            for u in reversed(nxt):
                stack.append(p + [u])
        if len(out) >= limit:
            break
    return out


def _grid_from(lc, bottom, c, budget):
    """Extend a bottom row upward by square completion, backtracking on the
    first vertex of each new row.  Returns the rows or ``None``."""
    a = len(bottom) - 1
    placed = {(t, 0): v for t, v in enumerate(bottom)}
    used = set(bottom)
    tries = [0]

    def fits(q, t, h):
        if q in used:
            return False
        for (i, j), v in placed.items():
            if lc.distance(q, v) != abs(t - i) + abs(h - j):
                return False
        return True

    def build(h):
        if h > c:
            return True
        below = [placed[(t, h - 1)] for t in range(a + 1)]
        for q0, _ in lc.neighbors(below[0]):
            tries[0] += 1
            if tries[0] > budget:
                return False
            if not fits(q0, 0, h):
                continue
            row = [q0]
            placed[(0, h)] = q0
            used.add(q0)
            for t in range(1, a + 1):
                nxt = None
                for z, _ in lc.neighbors(row[-1]):
                    if z != below[t - 1] and lc.distance(z, below[t]) == 1:
                        nxt = z
                        break
                if nxt is None or not fits(nxt, t, h):
                    break
                row.append(nxt)
                placed[(t, h)] = nxt
                used.add(nxt)
            if len(row) == a + 1 and build(h + 1):
                return True
            for t, v in enumerate(row):
                used.discard(v)
                del placed[(t, h)]
        return False

    if build(1):
        return [[placed[(t, h)] for t in range(a + 1)] for h in range(c + 1)]
    return None


def find_half_flat(g, lc, depth, min_height, vertex_cap=DEFAULT_VERTEX_CAP,
                   row_limit=400, budget=20000):
    """Search for an isometric ``a x c`` grid (``a = 2 min_height``,
    ``c = min_height``) whose bottom row is a geodesic in the convex hull of
    an axis segment of length ``2 depth``.

    The grid is explored in the lazy complex with exact distances, so it
    may leave the radius-``depth`` ball.  Returns ``None`` when nothing is
    found within the search budget.
    """
    if min_height < 1:
        raise ValueError("min_height must be positive")
    try:
        ax = axis(g, lc, depth, vertex_cap)
    except ValidationFailed:
        return None
    a, c = 2 * min_height, min_height
    seg = _axis_segment(g, ax, lc, 2 * depth)
    if len(seg) < a + 1:
        return None
    hull = lc.interval(seg[0], seg[-1])
    if len(hull) > vertex_cap:
        return None
    for bottom in _geodesics_in(lc, hull, a, row_limit):
        rows = _grid_from(lc, bottom, c, budget)
        if rows is not None:
            return HalfFlatWitness(tuple(tuple(r) for r in rows), True, (a, c))
    return None


def check_half_flat(lc, wit, hull=None):
    """Distances along the grid are grid distances; the bottom row lies in
    ``hull`` when one is given."""
    cells = {(t, h): v for h, row in enumerate(wit.grid) for t, v in enumerate(row)}
    items = list(cells.items())
    for i, ((t, h), v) in enumerate(items):
        for (s, k), u in items[i + 1:]:
            if lc.distance(u, v) != abs(t - s) + abs(h - k):
                return False
    if hull is not None and not set(wit.grid[0]) <= set(hull):
        return False
    return True


# ---------------------------------------------------------------------------
# quasi-line probe and trichotomy
# ---------------------------------------------------------------------------


def smin_quasiline_probe(g, lc, depth, n_max, vertex_cap=DEFAULT_VERTEX_CAP, threads=1):
    """``(length, width)`` of the SMin window.

    ``length`` is the diameter of the axis-class coordinates, ``width`` the
    largest diameter of a fibre (SMin vertices with equal axis coordinates).
    """
    sm, _, _, coords = smin_coordinates(g, lc, depth, n_max, None, vertex_cap, threads)
    c = sm.window.complex
    fibres = {}
    for v, (_, a) in coords.items():
        fibres.setdefault(a, []).append(v)
    keys = sorted(fibres)
    length = max(
        (sum(x != y for x, y in zip(p, q)) for p in keys for q in keys), default=0
    )
    width = 0
    for vs in fibres.values():
        signs = [c.sign_vector(v) for v in vs]
        for i, s in enumerate(signs):
            for t in signs[i + 1:]:
                width = max(width, bin(s ^ t).count("1"))
    return length, width


def _commutes_on(g, h, verts):
    return all(h(g(v)) == g(h(v)) for v in verts)


def _is_loxodromic(h, lc, depth, vertex_cap):
    try:
        return classify(h, lc, depth, vertex_cap).verdict == "loxodromic"
    except Inconclusive:
        return False


def noncyclic_witness(g, lc, candidates, depth, n_max=3, vertex_cap=DEFAULT_VERTEX_CAP):
    """First ``(h, n)`` with ``[h, g^n] = 1`` on the window and ``h`` moving
    the axis base across a wall that the axis does not cross, or with the
    ``h``-orbit of the base drifting away from the ``g``-orbit.

    ``h`` must itself be loxodromic: a finite-order ``h`` commuting with ``g``
    only gives a virtually cyclic group.
    """
    try:
        ax = axis(g, lc, depth, vertex_cap)
    except ValidationFailed:
        return None
    verts = sort_canon(ball_vertices(lc, lc.root, depth, vertex_cap))
    x = ax.base
    for n in range(1, n_max + 1):
        gn = g ** n
        for h in candidates:
            y = h(x)
            if y == x or not _commutes_on(gn, h, verts):
                continue
            if not _is_loxodromic(h, lc, depth, vertex_cap):
                continue
            moved = set(lc.path_labels(lc.geodesic(x, y)))
            reach = (depth + lc.distance(x, y)) // ax.translation_length + 1
            axis_labs = set(lc.path_labels(axis_line(g, ax, -reach, reach)))
            if moved - axis_labs or _diverges(h, g, x, ax.translation_length, lc, depth):
                return h, n
    return None


def _diverges(h, g, x, tau, lc, steps):
    """True if ``h^m x`` misses the orbit ``<g> x`` for m = 1..steps and its
    distance to that orbit grows from m = 1 to m = steps.

    A relation ``h^p = g^q`` with ``p <= steps`` would bring the orbit back
    to distance 0, so this separates two translation directions even when
    the axis crosses every wall (diagonal translations of a flat).
    """
    inv = g.inverse()
    y = x
    seen = []
    for m in range(1, steps + 1):
        y = h(y)
        D = lc.distance(x, y)
        # |k| tau - D > D once |k| > 2D / tau, so those k cannot be nearer
        best = D
        fwd, bwd = x, x
        for _ in range(2 * D // tau + 1):
            fwd, bwd = g(fwd), inv(bwd)
            best = min(best, lc.distance(fwd, y), lc.distance(bwd, y))
        if best == 0:
            return False
        seen.append(best)
    return seen[-1] > seen[0]


def trichotomy_classify(g, lc, context=None, depth=4, L_max=2, n_max=3,
                        vertex_cap=DEFAULT_VERTEX_CAP):
    """RankOne, NonCyclicSC, FixGrowthEvidence or Inconclusive, in that
    order of preference."""
    context = context or {}
    if isinstance(context, (list, tuple)):
        context = {"candidates": list(context)}
    cert = find_skewered_pair(g, lc, L_max, depth, vertex_cap)
    if cert is not None:
        return TrichotomyVerdict("RankOne", cert, depth, "skewer certificate verified on the window")
    cands = context.get("candidates", [])
    wit = noncyclic_witness(g, lc, cands, depth, n_max, vertex_cap)
    if wit is not None:
        return TrichotomyVerdict(
            "NonCyclicSC", wit, depth,
            f"commutes with g^{wit[1]} on the window and moves the axis transversally",
        )
    if isinstance(lc, ProductComplex) and g.is_product:
        try:
            seq = fixed_set_growth(g, lc, depth, n_max, vertex_cap)
        except NotProduct:
            seq = None
        if seq is not None and len({s for _, s in seq}) > 1:
            return TrichotomyVerdict("FixGrowthEvidence", seq, depth,
                                     "evidence only: fixed-set sizes vary with n")
    return TrichotomyVerdict("Inconclusive", None, depth, "no certificate or witness at this depth")


# ---------------------------------------------------------------------------
# RAAG bridge
# ---------------------------------------------------------------------------


def cross_validate(word, dg, depth, L_max, vertex_cap=DEFAULT_VERTEX_CAP):
    """Compare the algebraic rank-one criterion with the skewer search on
    the cover.  A certificate for an element with non-cyclic centralizer
    raises :class:`SoundnessBreach`."""
    w = _raag.raag_word(word, dg) if not isinstance(word, _raag.RaagWord) else word
    algebraic = _raag.algebraic_rank_one(w.letters, dg)
    cover = RaagCover(dg)
    g = raag_element(cover, w.letters)
    cert = find_skewered_pair(g, cover, L_max, depth, vertex_cap)
    if cert is not None and not algebraic:
        raise SoundnessBreach(
            f"{_raag.format_word(w.letters, dg)} has a skewer certificate but a non-cyclic centralizer"
        )
    if cert is not None:
        status, summary = "agree", "rank-one"
    elif not algebraic:
        status, summary = "agree", "not rank-one (no certificate, consistent)"
    else:
        status, summary = "inconclusive", "algebraically rank-one, no certificate at this depth"
    return {
        "word": _raag.format_word(w.letters, dg),
        "algebraic_rank_one": algebraic,
        "certificate": None if cert is None else cert.to_json(),
        "status": status,
        "summary": summary,
        "depth": depth,
        "L_max": L_max,
    }
