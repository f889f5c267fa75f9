"""Combinatorial closed oriented surfaces.

A surface is a gluing of oriented triangles.  Each triangle has three
sides ("slots"), listed in counterclockwise order, and the gluing is a
fixed-point-free involution on slots that reverses orientation.  All
derived data (edges, vertices, corner rotations, Euler characteristic)
is computed once at construction and cached; instances are immutable.

Slots are encoded as ``3*t + i`` for side ``i`` of triangle ``t``.
Corner ``i`` of triangle ``t`` is the corner between sides ``i`` and
``i+1 mod 3`` (their shared endpoint), encoded the same way.
"""

from __future__ import annotations

from dataclasses import dataclass, field


def slot(t: int, i: int) -> int:
    return 3 * t + i


def slot_triangle(s: int) -> int:
    return s // 3


def slot_index(s: int) -> int:
    return s % 3


class SurfaceError(ValueError):
    """Raised when gluing data does not define a closed oriented surface."""


@dataclass(frozen=True)
class Triangulation:
    """Closed oriented triangulated surface with an optional symmetry.

    Parameters
    ----------
    glue : tuple of int
        ``glue[s]`` is the slot glued to slot ``s``; an involution with
        no fixed points, of length ``3 * num_triangles``.
    symmetry : tuple of int, optional
        A slot permutation describing a simplicial automorphism.  Must
        send triangles to triangles preserving the cyclic side order.
    symmetry_order : int
        Declared order of the symmetry (1 for the identity).
    """

    glue: tuple
    symmetry: tuple | None = None
    symmetry_order: int = 1
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        n = len(self.glue)
        if n % 3 != 0:
            raise SurfaceError("slot count must be a multiple of 3")
        for s, m in enumerate(self.glue):
            if m == s:
                raise SurfaceError(f"slot {s} is glued to itself")
            if not (0 <= m < n) or self.glue[m] != s:
                raise SurfaceError(f"gluing is not an involution at slot {s}")
        self._check_symmetry()
        # force computation so invalid complexes fail fast
        self.vertices
        if not self._connected():
            raise SurfaceError("surface is not connected")

    # -- basic counts ----------------------------------------------------

    @property
    def num_triangles(self) -> int:
        return len(self.glue) // 3

    @property
    def num_slots(self) -> int:
        return len(self.glue)

    @property
    def num_edges(self) -> int:
        return len(self.glue) // 2

    def edge_of_slot(self, s: int) -> int:
        """Index of the edge carried by slot ``s`` (min of the slot pair)."""
        return min(s, self.glue[s])

    def edges(self):
        return [s for s in range(self.num_slots) if s < self.glue[s]]

    # -- corners and vertices --------------------------------------------

    def corner_vertex(self, c: int) -> int:
        """Vertex at corner ``c`` (corner between sides c and c+1)."""
        return self.vertices_of_corner[c]

    @property
    def vertices_of_corner(self):
        if "voc" not in self._cache:
            self._vertex_scan()
        return self._cache["voc"]

    @property
    def vertices(self):
        """Number of vertices."""
        if "nv" not in self._cache:
            self._vertex_scan()
        return self._cache["nv"]

    def corner_next(self, c: int) -> int:
        """Next corner counterclockwise around the same vertex.

        From the corner between sides i and i+1 of t, cross side i+1;
        on the far triangle the matching corner at the same vertex is
        the one whose *second* side is the glued slot.
        """
        t, i = slot_triangle(c), slot_index(c)
        s = slot(t, (i + 1) % 3)
        m = self.glue[s]
        tm, im = slot_triangle(m), slot_index(m)
        return slot(tm, im)

    def corner_prev(self, c: int) -> int:
        t, i = slot_triangle(c), slot_index(c)
        s = slot(t, i)
        m = self.glue[s]
        tm, im = slot_triangle(m), slot_index(m)
        return slot(tm, (im + 2) % 3)

    def vertex_degree(self, v: int) -> int:
        """Corner count around vertex v (= number of incident edge ends)."""
        if "deg" not in self._cache:
            self._vertex_scan()
        return self._cache["deg"][v]

    def _vertex_scan(self):
        n = self.num_slots
        voc = [-1] * n
        nv = 0
        deg = []
        for c0 in range(n):
            if voc[c0] != -1:
                continue
            c, count = c0, 0
            while voc[c] == -1:
                voc[c] = nv
                count += 1
                c = self.corner_next(c)
            if c != c0:
                raise SurfaceError("corner rotation does not close up")
            deg.append(count)
            nv += 1
        self._cache["voc"] = tuple(voc)
        self._cache["nv"] = nv
        self._cache["deg"] = tuple(deg)

    # -- global invariants -------------------------------------------------

    @property
    def euler_characteristic(self) -> int:
        return self.vertices - self.num_edges + self.num_triangles

    @property
    def genus(self) -> int:
        chi = self.euler_characteristic
        if chi % 2 != 0 or chi > 2:
            raise SurfaceError(f"bad Euler characteristic {chi}")
        return (2 - chi) // 2

    def _connected(self) -> bool:
        if self.num_triangles == 0:
            return False
        seen = {0}
        stack = [0]
        while stack:
            t = stack.pop()
            for i in range(3):
                u = slot_triangle(self.glue[slot(t, i)])
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.num_triangles

    # -- symmetry -----------------------------------------------------------

    def _check_symmetry(self):
        p = self.symmetry
        if p is None:
            if self.symmetry_order != 1:
                raise SurfaceError("symmetry_order without symmetry")
            return
        n = self.num_slots
        if len(p) != n or sorted(p) != list(range(n)):
            raise SurfaceError("symmetry is not a slot permutation")
        for t in range(self.num_triangles):
            base = p[slot(t, 0)]
            tb, ib = slot_triangle(base), slot_index(base)
            for i in range(3):
                if p[slot(t, i)] != slot(tb, (ib + i) % 3):
                    raise SurfaceError("symmetry does not preserve side order")
        for s in range(n):
            if p[self.glue[s]] != self.glue[p[s]]:
                raise SurfaceError("symmetry does not commute with the gluing")
        q = list(range(n))
        for _ in range(self.symmetry_order):
            q = [p[s] for s in q]
        if q != list(range(n)):
            raise SurfaceError("symmetry power is not the identity")

    def apply_symmetry_slot(self, s: int, k: int = 1) -> int:
        if self.symmetry is None:
            return s
        k %= self.symmetry_order
        for _ in range(k):
            s = self.symmetry[s]
        return s

    # -- hashing -------------------------------------------------------------

    def __hash__(self):
        return hash((self.glue, self.symmetry, self.symmetry_order))

    def __eq__(self, other):
        return (isinstance(other, Triangulation)
                and self.glue == other.glue
                and self.symmetry == other.symmetry
                and self.symmetry_order == other.symmetry_order)


def build_torus() -> Triangulation:
    """The standard one-vertex torus: two triangles, three edges.

    Square model with corners identified: triangle 0 is the lower-right
    half, triangle 1 the upper-left.  Sides of t0: (a bottom, b right,
    c diagonal); sides of t1: (a top, b left, c diagonal).  Used for
    slope-curve oracles and growth calibration.
    """
    glue = [0] * 6
    pairs = [(slot(0, 0), slot(1, 1)),   # a: bottom of t0 = top of t1
             (slot(0, 1), slot(1, 2)),   # b: right of t0 = left of t1
             (slot(0, 2), slot(1, 0))]   # c: the shared diagonal
    for s, m in pairs:
        glue[s], glue[m] = m, s
    return Triangulation(glue=tuple(glue))
