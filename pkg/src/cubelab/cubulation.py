"""Wallspaces, orientations and Sageev's cubulation (finite case)."""

from collections import deque, namedtuple
from dataclasses import dataclass
from itertools import combinations
import json

from ._order import canon, sort_canon
from .median import CubeComplexError, verify_median_graph, crossing_hyperplanes


class UnknownPoint(CubeComplexError, KeyError):
    pass


class NotMedianClosed(CubeComplexError, ValueError):
    def __init__(self, witness):
        super().__init__(f"median of {witness!r} leaves the set")
        self.witness = witness


# a halfspace of a wallspace: wall index plus side (0 = the listed side A)
HalfspaceRef = namedtuple("HalfspaceRef", ["wall", "side"])


@dataclass(frozen=True)
class Wallspace:
    """Finite wallspace.

    ``walls[i]`` is the side ``A`` of the i-th wall; side ``B`` is the
    complement.  Walls equal as partitions are merged on construction, since
    a wallspace carries a *set* of walls.
    """

    points: tuple
    walls: tuple

    def __init__(self, points, walls):
        points = tuple(sort_canon(set(_h(p) for p in points)))
        universe = frozenset(points)
        seen = set()
        kept = []
        for A in walls:
            A = frozenset(_h(p) for p in A)
            if not A <= universe:
                raise UnknownPoint(f"wall mentions points outside the ground set: {sort_canon(A - universe)}")
            B = universe - A
            if not A or not B:
                raise ValueError("both sides of a wall must be nonempty")
            key = frozenset((A, B))
            if key in seen:
                continue
            seen.add(key)
            kept.append(A)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "walls", tuple(kept))

    def side(self, wall, side):
        A = self.walls[wall]
        return A if side == 0 else frozenset(self.points) - A

    def halfspaces(self):
        return [HalfspaceRef(i, s) for i in range(len(self.walls)) for s in (0, 1)]

    def distance(self, x, y):
        """Number of walls separating two points."""
        return sum((x in A) != (y in A) for A in self.walls)

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        walls = []
        for w in data["walls"]:
            # accept both [ids...] and [[ids...]] for side A
            if w and isinstance(w[0], list) and len(w) == 1:
                w = w[0]
            walls.append(w)
        return cls(data["points"], walls)

    def to_json(self):
        return {
            "points": list(self.points),
            "walls": [[sort_canon(A)] for A in self.walls],
        }


def _h(p):
    return tuple(_h(x) for x in p) if isinstance(p, list) else p


def principal_orientation(w, x):
    x = _h(x)
    if x not in w.points:
        raise UnknownPoint(f"{x!r} is not a point of the wallspace")
    return tuple(0 if x in A else 1 for A in w.walls)


def _inclusions(w):
    """All pairs of distinct halfspaces (H, K) with H a subset of K."""
    hs = w.halfspaces()
    sets = {h: w.side(*h) for h in hs}
    return [(h, k) for h in hs for k in hs if h != k and sets[h] <= sets[k]]


def is_orientation(w, sigma):
    """Return ``(ok, witness)``; the witness is a pair of halfspaces
    ``(H, K)`` with ``H`` inside ``K``, ``H`` chosen and ``K`` not."""
    if len(sigma) != len(w.walls):
        raise ValueError("orientation must choose one side per wall")
    for h, k in _inclusions(w):
        if sigma[h.wall] == h.side and sigma[k.wall] != k.side:
            return False, (w.side(*h), w.side(*k))
    return True, None


def _valid_fast(sets_chosen):
    # upward closure for partitions: chosen halfspaces pairwise intersect
    for a, b in combinations(sets_chosen, 2):
        if not a & b:
            return False
    return True


def orientations(w):
    """Valid orientations reachable from principal ones by single-wall flips."""
    universe = frozenset(w.points)
    sides = [(A, universe - A) for A in w.walls]

    def valid(sig):
        return _valid_fast([sides[i][s] for i, s in enumerate(sig)])

    start = sorted({principal_orientation(w, p) for p in w.points})
    seen = set(start)
    queue = deque(start)
    while queue:
        sig = queue.popleft()
        for i in range(len(sig)):
            flipped = sig[:i] + (1 - sig[i],) + sig[i + 1:]
            if flipped not in seen and valid(flipped):
                seen.add(flipped)
                queue.append(flipped)
    return sorted(seen)


def cubulate(w, method="auto"):
    """Cube complex whose vertices are orientations and whose edges join
    orientations differing on one wall."""
    verts = orientations(w)
    vs = set(verts)
    edges = []
    for sig in verts:
        for i in range(len(sig)):
            if sig[i] == 0:
                other = sig[:i] + (1,) + sig[i + 1:]
                if other in vs:
                    edges.append((sig, other))
    return verify_median_graph((verts, edges), method=method)


def _is_median_closed(c, Y):
    Ys = sort_canon(set(Y))
    present = {c.sign_vector(v) for v in Ys}
    signs = [c.sign_vector(v) for v in Ys]
    for a, b, d in combinations(range(len(Ys)), 3):
        sa, sb, sd = signs[a], signs[b], signs[d]
        if ((sa & sb) | (sb & sd) | (sa & sd)) not in present:
            return (Ys[a], Ys[b], Ys[d])
    return None


def walls_of_subalgebra(c, Y):
    """Walls of the median subalgebra ``Y`` as traces of hyperplanes.

    Returns a sorted list of ``(A, B)`` pairs of sorted vertex lists with
    ``A`` the lexicographically least side; duplicate traces are merged and
    hyperplanes not crossing ``Y`` are dropped.
    """
    Y = set(Y)
    if not Y:
        raise ValueError("Y must be nonempty")
    bad = _is_median_closed(c, Y)
    if bad is not None:
        raise NotMedianClosed(bad)
    traces = set()
    for k in crossing_hyperplanes(c, Y):
        s0 = tuple(sort_canon(v for v in Y if c.side_of(v, k) == 0))
        s1 = tuple(sort_canon(v for v in Y if c.side_of(v, k) == 1))
        a, b = sorted((s0, s1), key=lambda s: [canon(v) for v in s])
        traces.add((a, b))
    return sorted(traces, key=lambda t: [canon(v) for v in t[0]])


def wallspace_of_complex(c):
    """The wallspace on the vertices of ``c`` given by its hyperplanes."""
    return Wallspace(c.vertices, [c.hyperplane(k).sides[0] for k in range(c.n_hyperplanes)])
