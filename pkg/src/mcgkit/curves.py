"""Exact multicurve calculus on a triangulated surface.

A curve is stored as a cyclic word of slots: letter ``k`` is the slot
through which the curve leaves the triangle it is currently in.  The
chord inside a triangle therefore runs from ``glue[letter[k-1]]`` to
``letter[k]``.  Every chord of a reduced word cuts off exactly one
corner, so a reduced word is the same thing as a taut dual walk.

Tightening uses three moves:

* return removal - a chord entering and leaving through the same edge
  is isotoped across it (weight -2);
* fan flips - a maximal run of ``j`` same-turn chords around a vertex
  of degree ``m`` is pushed to the other side of the vertex, changing
  the weight by ``m - 2j - 2``;
* neutral fan flips (``m - 2j - 2 == 0``) explored exhaustively to pick
  a canonical lexicographically least representative.

The canonical form of an essential simple closed curve is a complete
isotopy invariant; trivial components (null-homotopic, in particular
vertex-linking) are detected and dropped with a flag.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .surface import Triangulation, slot, slot_triangle, slot_index


DEFAULT_NEUTRAL_LIMIT = 2000


class CurveError(ValueError):
    pass


class NonEmbedded(CurveError):
    """The traversal cannot be realised by an embedded multicurve."""


# ---------------------------------------------------------------------------
# word primitives
# ---------------------------------------------------------------------------

def check_word(surf: Triangulation, word) -> None:
    if not word:
        raise CurveError("empty traversal")
    for k, s in enumerate(word):
        if not (0 <= s < surf.num_slots):
            raise CurveError(f"bad slot {s}")
        nxt = word[(k + 1) % len(word)]
        if slot_triangle(nxt) != slot_triangle(surf.glue[s]):
            raise CurveError(
                f"letters {k},{k+1} do not share a triangle: {s} -> {nxt}")


def reverse_word(surf: Triangulation, word):
    return tuple(surf.glue[s] for s in reversed(word))


def rotate_min(word):
    n = len(word)
    best = None
    for r in range(n):
        cand = word[r:] + word[:r]
        if best is None or cand < best:
            best = cand
    return best


def canonical_word(surf: Triangulation, word):
    """Least rotation over both orientations (curves are unoriented)."""
    w = tuple(word)
    return min(rotate_min(w), rotate_min(reverse_word(surf, w)))


def chord_turn(surf: Triangulation, prev_letter: int, letter: int) -> int:
    """Turn type of the chord between two consecutive crossings.

    +1: left turn (out side = in side + 1), cuts the corner at in side;
    -1: right turn (out = in + 2), cuts the corner at out side;
     0: return (out = in side).
    """
    i_in = slot_index(surf.glue[prev_letter])
    i_out = slot_index(letter)
    if i_out == i_in:
        return 0
    if i_out == (i_in + 1) % 3:
        return 1
    return -1


def chord_corner(surf: Triangulation, prev_letter: int, letter: int) -> int:
    """Corner (slot encoding) cut off by a non-return chord."""
    t = slot_triangle(letter)
    i_in = slot_index(surf.glue[prev_letter])
    i_out = slot_index(letter)
    if i_out == (i_in + 1) % 3:
        return slot(t, i_in)
    if i_in == (i_out + 1) % 3:
        return slot(t, i_out)
    raise CurveError("chord is a return, no corner")


# ---------------------------------------------------------------------------
# tightening
# ---------------------------------------------------------------------------

def _remove_returns(surf, word):
    """Cancel chords with equal in and out edges until none remain."""
    word = list(word)
    changed = True
    while changed and word:
        changed = False
        n = len(word)
        for k in range(n):
            prev = word[k - 1]
            if word[k] == surf.glue[prev]:
                if k == 0:
                    del word[n - 1]
                    del word[0]
                else:
                    del word[k]
                    del word[k - 1]
                changed = True
                break
    return word


def _runs(surf, word):
    """Maximal cyclic runs of same-turn chords.

    Returns a list of (start_chord, length, turn, vertex, degree); chord
    ``k`` sits between letters ``k-1`` and ``k``.
    """
    n = len(word)
    turns = [chord_turn(surf, word[k - 1], word[k]) for k in range(n)]
    if any(t == 0 for t in turns):
        raise CurveError("word has returns")
    if all(t == turns[0] for t in turns):
        c = chord_corner(surf, word[-1], word[0])
        v = surf.corner_vertex(c)
        return [(0, n, turns[0], v, surf.vertex_degree(v))]
    runs = []
    k = 0
    while turns[k - 1] == turns[k]:
        k += 1
    start = k
    for _ in range(n):
        j = 1
        while turns[(k + j) % n] == turns[k]:
            j += 1
        c = chord_corner(surf, word[k - 1], word[k % n])
        v = surf.corner_vertex(c)
        runs.append((k % n, j, turns[k], v, surf.vertex_degree(v)))
        k = (k + j) % n
        if k == start or len(runs) > n:
            break
    return runs


def _flip_run(surf, word, start, j, turn):
    """Push a run of ``j`` same-turn chords to the far side of its vertex.

    Replaces the ``j + 1`` letters ``start-1 .. start+j-1`` with the
    ``m - j - 1`` crossings of the complementary fan.
    """
    n = len(word)
    rot = word[start - 1:] + word[:start - 1] if start >= 1 else word[n - 1:] + word[:n - 1]
    # rot begins with the entry crossing; chords 1..j of rot form the run
    c1 = chord_corner(surf, rot[0], rot[1])
    v = surf.corner_vertex(c1)
    m = surf.vertex_degree(v)
    if turn == 1:
        walk_from = surf.corner_prev(c1)
        step = surf.corner_prev
        exit_slot = lambda c: slot(slot_triangle(c), slot_index(c))
    else:
        walk_from = surf.corner_next(c1)
        step = surf.corner_next
        exit_slot = lambda c: slot(slot_triangle(c), (slot_index(c) + 1) % 3)
    new_letters = []
    c = walk_from
    for _ in range(m - j - 1):
        new_letters.append(exit_slot(c))
        c = step(c)
    tail = rot[j + 1:]
    return new_letters + tail


def _tighten_word(surf, word):
    """Apply weight-reducing moves until taut.  Returns (word, trivial)."""
    word = _remove_returns(surf, word)
    while True:
        if not word:
            return [], True
        runs = _runs(surf, word)
        if len(runs) == 1 and runs[0][1] == len(word):
            _, n, _, v, m = runs[0]
            if n % m != 0:
                raise CurveError("uniform-turn word does not close around its vertex")
            if n > m:
                raise NonEmbedded("component winds multiply around a vertex")
            return [], True      # vertex-linking circle
        did = False
        for start, j, turn, v, m in runs:
            jj = min(j, m - 1)
            if m - 2 * jj - 2 < 0:
                word = _remove_returns(surf, _flip_run(surf, word, start, jj, turn))
                did = True
                break
        if not did:
            return word, False


def _neutral_moves(surf, word):
    out = []
    for start, j, turn, v, m in _runs(surf, word):
        if j < m - 1 and m - 2 * j - 2 == 0:
            out.append((start, j, turn))
    return out


def _neutral_successors(surf, word):
    """Taut words one neutral flip away (re-tightened if a flip cascades)."""
    out = []
    for start, j, turn in _neutral_moves(surf, word):
        w2 = _remove_returns(surf, _flip_run(surf, list(word), start, j, turn))
        if len(w2) < len(word):
            w2, trivial = _tighten_word(surf, w2)
            if trivial:
                return "trivial"
        out.append(tuple(w2))
    return out


def _straighten(surf, word, limit=DEFAULT_NEUTRAL_LIMIT):
    """Best-first search over neutral flips for a position with no
    combed self-crossings.  Returns (word, count, trivial_flag)."""
    from .overlay import word_self_count
    import heapq

    word = tuple(word)
    c0 = word_self_count(surf, word)
    if c0 == 0:
        return word, 0, False
    seen = {canonical_word(surf, word)}
    heap = [(c0, word)]
    best = (c0, word)
    while heap and len(seen) <= limit:
        c, w = heapq.heappop(heap)
        succ = _neutral_successors(surf, w)
        if succ == "trivial":
            return (), 0, True
        for w2 in succ:
            key = canonical_word(surf, w2)
            if key in seen:
                continue
            seen.add(key)
            if len(w2) < len(w):
                # shorter taut word found through a cascade: restart
                return _straighten(surf, w2, limit)
            c2 = word_self_count(surf, w2)
            if c2 == 0:
                return w2, 0, False
            if (c2, w2) < best:
                best = (c2, w2)
            heapq.heappush(heap, (c2, w2))
    return best[1], best[0], False


def _zero_plateau_canonical(surf, word, limit=DEFAULT_NEUTRAL_LIMIT):
    """Lexicographically least straight form reachable through straight
    positions; the canonical representative of the isotopy class."""
    from .overlay import word_self_count

    start = canonical_word(surf, word)
    seen = {start}
    frontier = [tuple(word)]
    best = start
    while frontier and len(seen) <= limit:
        w = frontier.pop()
        succ = _neutral_successors(surf, w)
        if succ == "trivial":
            return (), True
        for w2 in succ:
            if len(w2) != len(w):
                continue
            key = canonical_word(surf, w2)
            if key in seen:
                continue
            if word_self_count(surf, w2) != 0:
                continue
            seen.add(key)
            frontier.append(w2)
            if key < best:
                best = key
    return best, False


def _bounds_disk(surf, word) -> bool:
    """Whether a straight single-component word bounds an embedded disk,
    read off from its complement regions."""
    from .arrange import PositionedCurves, Arrangement
    arr = Arrangement(PositionedCurves(surf, [[tuple(word)]]))
    for info in arr.region_data().values():
        if info["chi"] == 1 and len(info["boundary"]) == 1:
            return True
    return False


def _reduce_component(surf, word, neutral_limit=DEFAULT_NEUTRAL_LIMIT):
    """Tighten and straighten one component.

    Returns (canonical_word, trivial_flag).  The canonical form is taut,
    has no combed self-crossings, and is the least such word reachable
    through straight positions, so isotopic components canonicalise
    identically.  Null-homotopic components are recognised by a disk
    complement region, which word moves alone can miss.
    """
    word, trivial = _tighten_word(surf, list(word))
    if trivial:
        return (), True
    word, count, trivial = _straighten(surf, word, neutral_limit)
    if trivial:
        return (), True
    if count != 0:
        raise NonEmbedded(
            f"no self-disjoint position found within limit (residual {count})")
    if _bounds_disk(surf, word):
        return (), True
    return _zero_plateau_canonical(surf, word, neutral_limit)


# ---------------------------------------------------------------------------
# the multicurve
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NormalMulticurve:
    """A multicurve in canonical taut position.

    ``components`` is a sorted tuple of canonical slot words; the number
    of trivial components dropped during normalisation is kept so
    callers can tell essential input from padding.
    """

    surface: Triangulation
    components: tuple
    trivial_dropped: int = 0
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @staticmethod
    def from_words(surf: Triangulation, words, check_embedded: bool = False,
                   neutral_limit: int = DEFAULT_NEUTRAL_LIMIT) -> "NormalMulticurve":
        comps = []
        trivial = 0
        for w in words:
            check_word(surf, w)
            red, is_trivial = _reduce_component(surf, list(w), neutral_limit)
            if is_trivial:
                trivial += 1
            else:
                comps.append(tuple(red))
        curve = NormalMulticurve(surf, tuple(sorted(comps)), trivial)
        if check_embedded and len(comps) > 1:
            # components straighten individually during reduction; what is
            # left to check is that distinct components can be disjoined
            from .arrange import tight_arrangement
            _, arr = tight_arrangement([curve])
            if arr.crossing_count() != 0:
                raise NonEmbedded("components of the traversal must intersect")
        return curve

    @staticmethod
    def from_word(surf: Triangulation, word, **kw) -> "NormalMulticurve":
        return NormalMulticurve.from_words(surf, [word], **kw)

    # -- basic data -------------------------------------------------------

    @property
    def num_components(self) -> int:
        return len(self.components)

    @property
    def is_empty(self) -> bool:
        return not self.components

    @property
    def coords(self):
        """Edge-crossing counts, one entry per edge (by edge index order)."""
        if "coords" not in self._cache:
            surf = self.surface
            counts = {e: 0 for e in surf.edges()}
            for comp in self.components:
                for s in comp:
                    counts[surf.edge_of_slot(s)] += 1
            self._cache["coords"] = tuple(counts[e] for e in surf.edges())
        return self._cache["coords"]

    @property
    def weight(self) -> int:
        return sum(len(c) for c in self.components)

    def component(self, k: int) -> "NormalMulticurve":
        return NormalMulticurve(self.surface, (self.components[k],))

    def union(self, other: "NormalMulticurve") -> "NormalMulticurve":
        if other.surface != self.surface:
            raise CurveError("curves live on different surfaces")
        return NormalMulticurve(
            self.surface, tuple(sorted(self.components + other.components)),
            self.trivial_dropped + other.trivial_dropped)

    def key(self):
        return self.components

    def __hash__(self):
        return hash(self.components)

    def __eq__(self, other):
        return (isinstance(other, NormalMulticurve)
                and self.surface == other.surface
                and self.components == other.components)

    # -- symmetry ----------------------------------------------------------

    def apply_symmetry(self, k: int = 1) -> "NormalMulticurve":
        """Push forward through the surface symmetry ``k`` times."""
        surf = self.surface
        if surf.symmetry is None:
            return self
        words = [tuple(surf.apply_symmetry_slot(s, k) for s in comp)
                 for comp in self.components]
        return NormalMulticurve.from_words(surf, words)


def slope_curve(surf: Triangulation, p: int, q: int) -> NormalMulticurve:
    """The (p, q) straight curve on the standard two-triangle torus.

    Traces the line of direction (p, q) from a generic basepoint through
    the unit-square model and records edge crossings exactly.  In the
    model, slots 0/1/2 are the bottom, right and diagonal sides of the
    lower-right triangle and 4/5/3 the matching top, left and diagonal
    sides of the upper-left one.
    """
    from fractions import Fraction
    from math import ceil, floor, gcd

    if (p, q) == (0, 0):
        raise CurveError("slope (0,0) is not a curve")
    g = gcd(abs(p), abs(q))
    p, q = p // g, q // g
    x0, y0 = Fraction(1, 1009), Fraction(1, 2003)

    events = []

    def cross_times(c0, speed, kind):
        # times in (0,1) at which c0 + speed*t is an integer
        if speed == 0:
            return
        for k in range(1, abs(speed) + 1):
            target = floor(c0) + k if speed > 0 else ceil(c0) - k
            t = (Fraction(target) - c0) / speed
            if 0 < t < 1:
                events.append((t, kind))

    cross_times(y0, q, "a")
    cross_times(x0, p, "b")
    cross_times(y0 - x0, q - p, "c")
    events.sort()
    exit_slot = {
        ("a", True): 4, ("a", False): 0,    # up through t1's top / down through t0's bottom
        ("b", True): 1, ("b", False): 5,    # right through t0 / left through t1
        ("c", True): 2, ("c", False): 3,    # rising across the diagonal leaves t0
    }
    word = []
    for _, kind in events:
        speed = {"a": q, "b": p, "c": q - p}[kind]
        word.append(exit_slot[(kind, speed > 0)])
    return NormalMulticurve.from_word(surf, tuple(word))
