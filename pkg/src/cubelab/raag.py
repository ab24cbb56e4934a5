"""Right-angled Artin groups: normal forms, centralizers, rank-one test.

Letters are encoded as small ints: generator ``i`` is ``2*i`` and its
inverse ``2*i + 1``, so ``x ^ 1`` inverts a letter.  The same order is the
shortlex order on letters (``a < a^-1 < b < b^-1 < ...``).
"""

from dataclasses import dataclass, field
from math import gcd
import json
import re

from .median import CubeComplexError


class UnknownGenerator(CubeComplexError, ValueError):
    pass


class TrivialWord(CubeComplexError, ValueError):
    pass


class NotCyclicallyReduced(CubeComplexError, ValueError):
    pass


class DefiningGraph:
    """Finite simple graph; vertices generate, edges commute."""

    def __init__(self, generators, edges=()):
        gens = list(generators)
        if len(set(gens)) != len(gens):
            raise ValueError("duplicate generator names")
        self.generators = tuple(gens)
        self._index = {g: i for i, g in enumerate(gens)}
        n = len(gens)
        self._commute = [0] * n
        pairs = set()
        for a, b in edges:
            if a == b:
                raise ValueError(f"loop at {a!r}")
            i, j = self.gen_index(a), self.gen_index(b)
            pairs.add((min(i, j), max(i, j)))
            self._commute[i] |= 1 << j
            self._commute[j] |= 1 << i
        self.edges = tuple(sorted(pairs))

    def __repr__(self):
        es = ", ".join(f"{self.generators[i]}-{self.generators[j]}" for i, j in self.edges)
        return f"DefiningGraph({list(self.generators)}, [{es}])"

    def __eq__(self, other):
        return isinstance(other, DefiningGraph) and (self.generators, self.edges) == (
            other.generators,
            other.edges,
        )

    def __hash__(self):
        return hash((self.generators, self.edges))

    def gen_index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise UnknownGenerator(f"unknown generator {name!r}") from None

    def commutes(self, x, y):
        """Whether two letters commute (same generator counts as not)."""
        return bool((self._commute[x >> 1] >> (y >> 1)) & 1)

    def adjacent(self, i, j):
        return bool((self._commute[i] >> j) & 1)

    def link(self, S):
        """Generators adjacent to every member of ``S`` (and not in ``S``)."""
        idx = [self.gen_index(s) if not isinstance(s, int) else s for s in S]
        mask = (1 << len(self.generators)) - 1
        for i in idx:
            mask &= self._commute[i]
        for i in idx:
            mask &= ~(1 << i)
        return [self.generators[k] for k in range(len(self.generators)) if (mask >> k) & 1]

    def star(self, S):
        S = list(S)
        names = [s if not isinstance(s, int) else self.generators[s] for s in S]
        return sorted(set(names) | set(self.link(S)), key=self.gen_index)

    # -- io --
    def to_json(self):
        return {
            "generators": list(self.generators),
            "edges": [[self.generators[i], self.generators[j]] for i, j in self.edges],
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["generators"], [tuple(e) for e in data.get("edges", [])])

    # common graphs
    @classmethod
    def path(cls, n):
        gens = [chr(ord("a") + i) for i in range(n)]
        return cls(gens, list(zip(gens, gens[1:])))

    @classmethod
    def free(cls, n):
        return cls([chr(ord("a") + i) for i in range(n)])


@dataclass(frozen=True)
class RaagWord:
    """A group element in shortlex normal form."""

    graph: DefiningGraph = field(compare=True, repr=False)
    letters: tuple = ()

    def __str__(self):
        return format_word(self.letters, self.graph)

    def __repr__(self):
        return f"RaagWord({str(self)!r})"

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other):
        return RaagWord(self.graph, multiply(self.letters, other.letters, self.graph))

    def __pow__(self, n):
        return RaagWord(self.graph, power(self.letters, n, self.graph))

    def inverse(self):
        return RaagWord(self.graph, inverse(self.letters))

    @property
    def is_trivial(self):
        return not self.letters


# ---------------------------------------------------------------------------
# words
# ---------------------------------------------------------------------------

def parse_word(text, dg):
    """Parse ``"a b^-1 c"``, ``"ab^-1c"`` or ``"a*b^-1"``.

    With single-character generator names separators are optional; longer
    names are matched greedily against the defining graph.
    """
    if isinstance(text, (list, tuple)):
        return tuple(text)
    names = sorted(dg.generators, key=len, reverse=True)
    out = []
    pos = 0
    s = text.replace("⁻¹", "^-1").strip()
    if s in ("", "1", "e"):
        return ()
    while pos < len(s):
        ch = s[pos]
        if ch.isspace() or ch in "*.·":
            pos += 1
            continue
        for name in names:
            if s.startswith(name, pos):
                break
        else:
            raise UnknownGenerator(f"cannot read a generator at {s[pos:]!r}")
        pos += len(name)
        exp = 1
        m = re.match(r"\^\s*\(?\s*(-?\d+)\s*\)?", s[pos:])
        if m:
            exp = int(m.group(1))
            pos += m.end()
        letter = 2 * dg.gen_index(name)
        if exp < 0:
            letter ^= 1
        out.extend([letter] * abs(exp))
    return tuple(out)


def format_word(letters, dg):
    if not letters:
        return "1"
    parts = []
    for x in letters:
        name = dg.generators[x >> 1]
        parts.append(name + ("^-1" if x & 1 else ""))
    sep = "" if all(len(g) == 1 for g in dg.generators) else " "
    return sep.join(parts)


def inverse(letters):
    return tuple(x ^ 1 for x in reversed(letters))


def _reduce_word(letters, dg):
    out = []
    for x in letters:
        inv = x ^ 1
        cancelled = False
        for j in range(len(out) - 1, -1, -1):
            y = out[j]
            if y == inv:
                del out[j]
                cancelled = True
                break
            if not dg.commutes(x, y):
                break
        if not cancelled:
            out.append(x)
    return out


def _lex_trace(letters, dg):
    """Lexicographically least word commutation-equivalent to ``letters``."""
    rest = list(letters)
    out = []
    while rest:
        best = None
        for i, x in enumerate(rest):
            if best is not None and x >= rest[best]:
                continue
            movable = True
            for y in rest[:i]:
                if not dg.commutes(x, y):
                    movable = False
                    break
            if movable:
                best = i
        out.append(rest.pop(best))
    return tuple(out)


def normal_form(word, dg):
    """Shortlex normal form of a word (string or letter tuple)."""
    letters = parse_word(word, dg) if isinstance(word, str) else tuple(word)
    n = 2 * len(dg.generators)
    for x in letters:
        if not 0 <= x < n:
            raise UnknownGenerator(f"letter code {x} out of range")
    return _lex_trace(_reduce_word(letters, dg), dg)


def raag_word(word, dg):
    return RaagWord(dg, normal_form(word, dg))


def multiply(u, v, dg):
    return normal_form(tuple(u) + tuple(v), dg)


def power(u, n, dg):
    if n < 0:
        return power(inverse(u), -n, dg)
    return normal_form(tuple(u) * n, dg)


def commutator_trivial(h, w, dg):
    return normal_form(tuple(h) + tuple(w), dg) == normal_form(tuple(w) + tuple(h), dg)


# ---------------------------------------------------------------------------
# cyclic reduction, supports, pure factors
# ---------------------------------------------------------------------------


def _movable_front(letters, i, dg):
    x = letters[i]
    return all(dg.commutes(x, y) for y in letters[:i])


def _movable_back(letters, i, dg):
    x = letters[i]
    return all(dg.commutes(x, y) for y in letters[i + 1:])


def cyclic_reduction(word, dg):
    """Return ``(core, conjugator)`` with ``word = conjugator*core*conjugator^-1``."""
    core = list(normal_form(word, dg))
    conj = []
    changed = True
    while changed:
        changed = False
        for i in range(len(core)):
            if not _movable_front(core, i, dg):
                continue
            x = core[i]
            for j in range(len(core) - 1, -1, -1):
                if j != i and core[j] == x ^ 1 and _movable_back(core, j, dg):
                    for k in sorted((i, j), reverse=True):
                        del core[k]
                    conj.append(x)
                    changed = True
                    break
            if changed:
                break
    return normal_form(core, dg), normal_form(conj, dg)


def is_cyclically_reduced(word, dg):
    core, conj = cyclic_reduction(word, dg)
    return not conj


def support(word, dg):
    """Generators occurring in the cyclically reduced core."""
    core, _ = cyclic_reduction(word, dg)
    idx = sorted({x >> 1 for x in core})
    return [dg.generators[i] for i in idx]


def link(S, dg):
    return dg.link(S)


def star(S, dg):
    return dg.star(S)


def _noncommuting_components(gens, dg):
    remaining = set(gens)
    comps = []
    while remaining:
        start = min(remaining)
        comp = {start}
        stack = [start]
        remaining.discard(start)
        while stack:
            i = stack.pop()
            for j in list(remaining):
                if not dg.adjacent(i, j):
                    remaining.discard(j)
                    comp.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return sorted(comps)


def pure_factor_decomposition(word, dg):
    """Split a cyclically reduced word into pairwise commuting pure factors.

    Factors correspond to the connected components of the complement of the
    commutation graph restricted to the support, ordered by their least
    generator.
    """
    w = normal_form(word, dg)
    if not w:
        raise TrivialWord("the trivial element has no pure factors")
    if not is_cyclically_reduced(w, dg):
        raise NotCyclicallyReduced(f"{format_word(w, dg)} is not cyclically reduced")
    gens = sorted({x >> 1 for x in w})
    factors = []
    for comp in _noncommuting_components(gens, dg):
        cs = set(comp)
        factors.append(normal_form([x for x in w if (x >> 1) in cs], dg))
    return factors


def root(word, dg):
    """Return ``(r, k)`` with ``word = r^k`` and ``k`` maximal.

    Intended for cyclically reduced pure elements, where roots are unique.
    """
    w = normal_form(word, dg)
    if not w:
        raise TrivialWord("the trivial element has no root")
    counts = {}
    for x in w:
        counts[x] = counts.get(x, 0) + 1
    g = 0
    for c in counts.values():
        g = gcd(g, c)
    for k in range(g, 1, -1):
        if g % k:
            continue
        quota = {x: c // k for x, c in counts.items()}
        taken = {x: 0 for x in counts}
        cand = []
        for x in w:
            if taken[x] < quota[x]:
                taken[x] += 1
                cand.append(x)
        r = normal_form(cand, dg)
        if power(r, k, dg) == w:
            return r, k
    return w, 1


@dataclass(frozen=True)
class CentralizerDescription:
    """Servatius description of a centralizer.

    The centralizer is ``conjugator * (<r_1> x ... x <r_k> x A(residual)) *
    conjugator^-1`` with ``factors = ((r_1, m_1), ...)``; ``m_i`` is the
    exponent of ``r_i`` in the corresponding pure factor of the element.
    """

    graph: DefiningGraph = field(repr=False)
    element: tuple
    conjugator: tuple
    factors: tuple
    residual: tuple  # generator names spanning the link of the support
    structure_tag: str
    rank_abelianization: int

    def generators(self):
        """Generating set of the centralizer as normal-form letter tuples."""
        dg = self.graph
        c, ci = self.conjugator, inverse(self.conjugator)
        gens = [normal_form(c + r + ci, dg) for r, _ in self.factors]
        for name in self.residual:
            s = (2 * dg.gen_index(name),)
            gens.append(normal_form(c + s + ci, dg))
        return gens

    def contains(self, h):
        """Membership by direct commutation with the element."""
        return commutator_trivial(normal_form(h, self.graph), self.element, self.graph)

    @property
    def is_cyclic(self):
        return self.structure_tag == "cyclic"

    def to_json(self):
        dg = self.graph
        return {
            "element": format_word(self.element, dg),
            "conjugator": format_word(self.conjugator, dg),
            "factors": [
                {"root": format_word(r, dg), "multiplicity": m} for r, m in self.factors
            ],
            "residual": list(self.residual),
            "generators": [format_word(g, dg) for g in self.generators()],
            "structure": self.structure_tag,
            "rank_abelianization": self.rank_abelianization,
        }


def centralizer(word, dg):
    w = normal_form(word, dg)
    if not w:
        raise TrivialWord("every element centralizes the identity")
    core, conj = cyclic_reduction(w, dg)
    factors = []
    for f in pure_factor_decomposition(core, dg):
        r, k = root(f, dg)
        factors.append((r, k))
    supp = sorted({x >> 1 for x in core})
    residual = tuple(dg.link(supp))
    k = len(factors)
    ids = [dg.gen_index(x) for x in residual]
    clique = all(dg.adjacent(i, j) for n, i in enumerate(ids) for j in ids[n + 1:])
    if not residual or clique:
        # A(link) is free abelian when the link is complete
        r = k + len(residual)
        tag = "cyclic" if r == 1 else f"Z^{r}"
    else:
        tag = f"Z^{k} x A({','.join(residual)})"
    return CentralizerDescription(
        dg, w, conj, tuple(factors), residual, tag, k + len(residual)
    )


def stable_centralizer_is_cyclic(word, dg):
    # in a RAAG the stable centralizer is the centralizer
    return centralizer(word, dg).is_cyclic


def algebraic_rank_one(word, dg):
    return stable_centralizer_is_cyclic(word, dg)


# ---------------------------------------------------------------------------
# brute-force oracles
# ---------------------------------------------------------------------------


def ball_elements(dg, radius):
    """All group elements of word length at most ``radius``."""
    letters = range(2 * len(dg.generators))
    layer = {()}
    seen = {()}
    for _ in range(radius):
        nxt = set()
        for w in layer:
            for x in letters:
                v = normal_form(w + (x,), dg)
                if v not in seen:
                    seen.add(v)
                    nxt.add(v)
        layer = nxt
    return seen


def commutant_in_ball(word, dg, radius):
    w = normal_form(word, dg)
    return {h for h in ball_elements(dg, radius) if commutator_trivial(h, w, dg)}


def subgroup_in_ball(desc, radius):
    """Elements of the described centralizer of length at most ``radius``.

    Enumerates ``conj * r_1^e_1 ... r_k^e_k * v * conj^-1`` over exponent and
    residual-word ranges large enough to reach every element of the ball.
    """
    dg = desc.graph
    c, ci = desc.conjugator, inverse(desc.conjugator)
    budget = radius + 2 * len(c)
    residual_dg_letters = []
    for name in desc.residual:
        i = dg.gen_index(name)
        residual_dg_letters += [2 * i, 2 * i + 1]
    inner = {()}
    for r, _ in desc.factors:
        emax = budget // len(r)
        powers = [power(r, e, dg) for e in range(-emax, emax + 1)]
        inner = {normal_form(a + p, dg) for a in inner for p in powers}
        inner = {a for a in inner if len(a) <= budget}
    vs = {()}
    layer = {()}
    for _ in range(budget):
        layer = {normal_form(v + (x,), dg) for v in layer for x in residual_dg_letters}
        layer -= vs
        vs |= layer
    out = set()
    for a in inner:
        for v in vs:
            if len(a) + len(v) > budget:
                continue
            h = normal_form(c + a + v + ci, dg)
            if len(h) <= radius:
                out.add(h)
    return out
