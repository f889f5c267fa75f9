"""Ribbon-graph surfaces and the rotational family.

A fatgraph (vertices with cyclic dart order) is thickened into a
triangulated closed surface: one coned polygon per vertex, one square
per edge band, and a coned polygon capping each boundary cycle.  The
builder keeps enough bookkeeping to write down curve words
mechanically: band traversals, paths across vertex disks and boundaries
of sub-ribbon-graphs.

The rotational surface of order g is the wheel fatgraph: g hub vertices
in a cycle, each carrying an arm vertex with two interleaved loop
pairs, so every arm is a once-holed genus-2 piece and the rotation is a
relabelling of arms.
"""

from __future__ import annotations

from .surface import Triangulation, slot, slot_triangle, slot_index, SurfaceError
from .curves import NormalMulticurve


class FatGraph:
    """Vertices with cyclic dart rotations; darts are (edge, end) pairs."""

    def __init__(self):
        self.rot = {}          # vertex -> list of darts
        self.edges = []        # edge name -> (dart0, dart1)

    def add_vertex(self, name):
        self.rot[name] = []

    def add_edge(self, name, v0, v1):
        d0, d1 = (name, 0), (name, 1)
        self.edges.append(name)
        self.rot[v0].append(d0)
        self.rot[v1].append(d1)
        return d0, d1

    def set_rotation(self, v, darts):
        if sorted(map(str, self.rot[v])) != sorted(map(str, darts)):
            raise ValueError(f"rotation for {v} must permute its darts")
        self.rot[v] = list(darts)

    def mate(self, dart):
        name, end = dart
        return (name, 1 - end)

    def vertex_of(self, dart):
        for v, darts in self.rot.items():
            if dart in darts:
                return v
        raise KeyError(dart)

    def boundary_cycles(self):
        """Boundary walks of the thickened graph: next dart after d is
        the rotation successor of its mate."""
        succ = {}
        vertex = {}
        for v, darts in self.rot.items():
            for i, d in enumerate(darts):
                succ[d] = darts[(i + 1) % len(darts)]
                vertex[d] = v
        cycles = []
        seen = set()
        for start in succ:
            if start in seen:
                continue
            cyc = []
            d = start
            while d not in seen:
                seen.add(d)
                cyc.append(d)
                d = succ[self.mate(d)]
            cycles.append(cyc)
        return cycles


class RibbonSurface:
    """Triangulated thickening of a fatgraph, with curve helpers.

    Bands are chains of ``band_segments`` squares so that boundary
    cycles are long enough to cap with cones.
    """

    def __init__(self, graph: FatGraph, band_segments: int = 2):
        self.graph = graph
        self.nseg = band_segments
        self._build()

    # -- construction -------------------------------------------------------

    def _build(self):
        g = self.graph
        self.tri_tag = []              # triangle id -> tag
        self.tag_tri = {}

        def new_tri(tag):
            t = len(self.tri_tag)
            self.tri_tag.append(tag)
            self.tag_tri[tag] = t
            return t

        glue_pairs = []

        # vertex cones: triangle i of vertex v has sides
        # 0: spoke_i, 1: port of dart i, 2: spoke_{i+1} reversed
        for v, darts in g.rot.items():
            k = len(darts)
            for i in range(k):
                new_tri(("v", v, i))
            for i in range(k):
                t = self.tag_tri[("v", v, i)]
                t2 = self.tag_tri[("v", v, (i + 1) % k)]
                glue_pairs.append((slot(t, 2), slot(t2, 0)))

        # edge bands: chains of squares, each square two triangles with
        # Ta: 0 bottom, 1 right wall, 2 diagonal
        # Tb: 0 diagonal, 1 top, 2 left wall
        for name in g.edges:
            for seg in range(self.nseg):
                ta = new_tri(("b", name, seg, 0))
                tb = new_tri(("b", name, seg, 1))
                glue_pairs.append((slot(ta, 2), slot(tb, 0)))
                if seg > 0:
                    prev_top = slot(self.tag_tri[("b", name, seg - 1, 1)], 1)
                    glue_pairs.append((prev_top, slot(ta, 0)))

        # attach band ends to vertex ports
        self.port_of = {}
        for v, darts in g.rot.items():
            for i, d in enumerate(darts):
                name, end = d
                if end == 0:
                    band_side = slot(self.tag_tri[("b", name, 0, 0)], 0)
                else:
                    band_side = slot(self.tag_tri[("b", name, self.nseg - 1, 1)], 1)
                tv = self.tag_tri[("v", v, i)]
                glue_pairs.append((slot(tv, 1), band_side))
                self.port_of[d] = (v, i)

        # close the boundary cycles with coned caps
        glued = {}
        for a, b in glue_pairs:
            glued[a] = b
            glued[b] = a
        free = []
        for t in range(len(self.tri_tag)):
            for i in range(3):
                if slot(t, i) not in glued:
                    free.append(slot(t, i))

        # trace boundary cycles through the partial complex: from a free
        # slot, walk around its head corner through glued slots to the
        # next free slot
        def next_free(s):
            t, i = slot_triangle(s), slot_index(s)
            cur = slot(t, (i + 1) % 3)
            while cur in glued:
                m = glued[cur]
                tm, im = slot_triangle(m), slot_index(m)
                cur = slot(tm, (im + 1) % 3)
            return cur

        self.cap_cycles = []
        seen = set()
        for s0 in free:
            if s0 in seen:
                continue
            cyc = []
            s = s0
            while s not in seen:
                seen.add(s)
                cyc.append(s)
                s = next_free(s)
            self.cap_cycles.append(cyc)

        # cap triangle j is (apex, P_{j+1}, P_j): side 1 matches the
        # boundary side reversed, side 0 is the spoke shared with cap j+1
        for ci, cyc in enumerate(self.cap_cycles):
            L = len(cyc)
            if L < 3:
                raise SurfaceError("cap cycle too short; subdivide bands")
            for j in range(L):
                new_tri(("c", ci, j))
            for j in range(L):
                t = self.tag_tri[("c", ci, j)]
                t2 = self.tag_tri[("c", ci, (j + 1) % L)]
                glue_pairs.append((slot(t, 1), cyc[j]))
                glue_pairs.append((slot(t, 0), slot(t2, 2)))

        glue = [None] * (3 * len(self.tri_tag))
        for a, b in glue_pairs:
            if glue[a] is not None or glue[b] is not None:
                raise SurfaceError("conflicting gluings")
            glue[a], glue[b] = b, a
        if any(x is None for x in glue):
            raise SurfaceError("unglued slots remain")
        self.glue = tuple(glue)

    def surface(self, symmetry=None, symmetry_order=1) -> Triangulation:
        return Triangulation(glue=self.glue, symmetry=symmetry,
                             symmetry_order=symmetry_order)

    # -- curve building blocks ----------------------------------------------

    def band_word(self, dart):
        """Exit letters crossing the band of ``dart`` from its own port
        through to the far port."""
        name, end = dart
        out = []
        if end == 0:
            for seg in range(self.nseg):
                out.append(slot(self.tag_tri[("b", name, seg, 0)], 2))
                out.append(slot(self.tag_tri[("b", name, seg, 1)], 1))
        else:
            for seg in reversed(range(self.nseg)):
                out.append(slot(self.tag_tri[("b", name, seg, 1)], 0))
                out.append(slot(self.tag_tri[("b", name, seg, 0)], 0))
        return out

    def disk_path(self, v, i, j):
        """Exit letters from port i to port j across the disk of v,
        walking through increasing rotation positions.  ``i == j`` is an
        immediate U-turn back out of the same port."""
        k = len(self.graph.rot[v])
        out = []
        pos = i
        while True:
            t = self.tag_tri[("v", v, pos)]
            if pos == j:
                out.append(slot(t, 1))
                return out
            out.append(slot(t, 2))
            pos = (pos + 1) % k

    def port_entry(self, dart):
        """The slot by which a path leaves the vertex disk into the band
        of ``dart`` (the port side of the cone triangle)."""
        v, i = self.port_of[dart]
        t = self.tag_tri[("v", v, i)]
        return slot(t, 1)

    def loop_core_word(self, name):
        """Core curve of a loop edge: through the band once, closed
        through the vertex disk."""
        d0, d1 = (name, 0), (name, 1)
        v, i = self.port_of[d0]
        v2, j = self.port_of[d1]
        if v != v2:
            raise ValueError("loop core needs a loop edge")
        return tuple(self.band_word(d0) + self.disk_path(v, j, i))

    def subgraph_boundary_words(self, darts):
        """Boundary curves of the thickened sub-fatgraph spanned by the
        given darts (closed under mates), pushed into the surface."""
        darts = set(darts) | {self.graph.mate(d) for d in darts}
        succ = {}
        for v, rot in self.graph.rot.items():
            sub = [d for d in rot if d in darts]
            for a, b in zip(sub, sub[1:] + sub[:1]):
                succ[a] = b
        words = []
        seen = set()
        for start in sorted(darts):
            if start in seen:
                continue
            word = []
            d = start
            while d not in seen:
                seen.add(d)
                word += self.band_word(d)
                mate = self.graph.mate(d)
                v, i = self.port_of[mate]
                nxt = succ[mate]
                _, j = self.port_of[nxt]
                word += self.disk_path(v, i, j)
                d = nxt
            words.append(tuple(word))
        return words


class RotationalSurface:
    """The wheel surface of genus 2g: g hub vertices in a cycle, one
    genus-2 arm per hub, and the order-g rotation permuting arms."""

    def __init__(self, g: int):
        if g < 1:
            raise ValueError("need g >= 1")
        self.g = g
        fg = FatGraph()
        for i in range(g):
            fg.add_vertex(("h", i))
            fg.add_vertex(("a", i))
        for i in range(g):
            fg.add_edge(("z", i), ("h", i), ("h", (i + 1) % g))
            fg.add_edge(("s", i), ("h", i), ("a", i))
            for name in ("p", "q", "u", "w"):
                fg.add_edge((name, i), ("a", i), ("a", i))
        for i in range(g):
            fg.set_rotation(("h", i), [
                (("z", i), 0), (("s", i), 0), (("z", (i - 1) % g), 1)])
            fg.set_rotation(("a", i), [
                (("s", i), 1),
                (("p", i), 0), (("q", i), 0), (("p", i), 1), (("q", i), 1),
                (("u", i), 0), (("w", i), 0), (("u", i), 1), (("w", i), 1)])
        self.graph = fg
        # the hub loop at g=1 walks a one-dart boundary cycle, which
        # needs three wall segments before it can be coned
        self.ribbon = RibbonSurface(fg, band_segments=3 if g == 1 else 2)
        sym = self._symmetry_permutation() if g > 1 else None
        self.triangulation = self.ribbon.surface(
            symmetry=sym, symmetry_order=g if g > 1 else 1)
        if self.triangulation.genus != 2 * g:
            raise SurfaceError(
                f"wheel surface has genus {self.triangulation.genus}, wanted {2*g}")

    def _shift_tag(self, tag, k=1):
        g = self.g

        def sh(name):
            return (name[0], (name[1] + k) % g)

        kind = tag[0]
        if kind == "v":
            return ("v", sh(tag[1]), tag[2])
        if kind == "b":
            return ("b", sh(tag[1]), tag[2], tag[3])
        raise KeyError(tag)

    def _symmetry_permutation(self):
        rib = self.ribbon
        ncaps = len(rib.cap_cycles)
        ntri = len(rib.tri_tag)
        tri_map = {}
        for t, tag in enumerate(rib.tri_tag):
            if tag[0] in ("v", "b"):
                tri_map[t] = rib.tag_tri[self._shift_tag(tag)]
        # caps follow their glued boundary slots
        slot_loc = {}
        for ci, cyc in enumerate(rib.cap_cycles):
            for j, s in enumerate(cyc):
                slot_loc[s] = (ci, j)
        for ci, cyc in enumerate(rib.cap_cycles):
            for j, s in enumerate(cyc):
                t = rib.tag_tri[("c", ci, j)]
                ts, i_s = slot_triangle(s), slot_index(s)
                image = slot(tri_map[ts], i_s)
                ci2, j2 = slot_loc[image]
                tri_map[t] = rib.tag_tri[("c", ci2, j2)]
        perm = [None] * (3 * ntri)
        for t in range(ntri):
            for i in range(3):
                perm[slot(t, i)] = slot(tri_map[t], i)
        return tuple(perm)

    # -- curves ---------------------------------------------------------------

    def curve(self, words) -> NormalMulticurve:
        return NormalMulticurve.from_words(self.triangulation, words)

    def loop_curve(self, name, i) -> NormalMulticurve:
        return self.curve([self.ribbon.loop_core_word((name, i))])

    def arm_darts(self, i):
        return [((n, i), e) for n in ("p", "q", "u", "w") for e in (0, 1)]

    def arm_boundary(self, i) -> NormalMulticurve:
        words = self.ribbon.subgraph_boundary_words(self.arm_darts(i))
        if len(words) != 1:
            raise SurfaceError("arm boundary is not a single circle")
        return self.curve(words)

    def handle_boundary(self, i, names=("u", "w")) -> NormalMulticurve:
        darts = [((n, i), e) for n in names for e in (0, 1)]
        words = self.ribbon.subgraph_boundary_words(darts)
        if len(words) != 1:
            raise SurfaceError("handle boundary is not a single circle")
        return self.curve(words)


def build_rotational_surface(g: int) -> Triangulation:
    return RotationalSurface(g).triangulation
