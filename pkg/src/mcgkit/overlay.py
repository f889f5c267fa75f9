"""Crossings between taut multicurves.

Two taut words placed together cross once for every maximal common
corridor whose endpoint divergences sit on the same side.  Placement
follows the combed convention: parallel strands are ordered by where
their itineraries eventually split, so corridors carry no removable
crossings and every residual bigon between taut curves contains a
vertex.  ``geometric_intersection`` minimises the combed count over the
weight-neutral flip closures of both curves, which removes those
vertex bigons.
"""

from __future__ import annotations

from .surface import Triangulation, slot, slot_triangle, slot_index


class Occurrence(tuple):
    """(curve tag, component index, letter index) of one edge crossing."""
    __slots__ = ()


def _route(surf, word, k, into_slot):
    """Yield exit slots of the strand of ``word`` at letter ``k`` walking
    into the triangle containing ``into_slot``."""
    n = len(word)
    s = word[k]
    if into_slot == surf.glue[s]:
        j = k
        while True:
            j = (j + 1) % n
            yield word[j]
    elif into_slot == s:
        j = k
        while True:
            j = (j - 1) % n
            yield surf.glue[word[j]]
    else:
        raise ValueError("into_slot is not a side of the crossed edge")


def _divergence(surf, word_x, kx, word_y, ky, into_slot):
    """Walk both strands into one side of their shared edge.

    Returns (depth, bit_x, entering_slot, zx, zy) at the first triangle
    where the exits differ, or None when the routes never split.  bit_x
    is True when x leaves through the side one step counterclockwise of
    the entering side.
    """
    gx = _route(surf, word_x, kx, into_slot)
    gy = _route(surf, word_y, ky, into_slot)
    entering = into_slot
    limit = 2 * (len(word_x) + len(word_y)) + 4
    for depth in range(limit):
        zx = next(gx)
        zy = next(gy)
        if zx != zy:
            i_in = slot_index(entering)
            t = slot_triangle(entering)
            bit = zx == slot(t, (i_in + 1) % 3)
            return depth, bit, entering, zx, zy
        entering = surf.glue[zx]
    return None


class Overlay:
    """Combed placement of several word systems on one surface.

    Accepts either NormalMulticurve objects or raw lists of component
    words; only crossing counts are computed here, exact cell structure
    lives in the arrange module.
    """

    def __init__(self, surf: Triangulation, curves):
        self.surface = surf
        self.occ_by_edge = {e: [] for e in surf.edges()}
        self.words = {}
        for ci, curve in enumerate(curves):
            comps = curve.components if hasattr(curve, "components") else curve
            for comp_i, word in enumerate(comps):
                self.words[(ci, comp_i)] = tuple(word)
                for k, s in enumerate(word):
                    e = surf.edge_of_slot(s)
                    self.occ_by_edge[e].append((ci, comp_i, k))

    # -- pairwise corridor analysis ---------------------------------------

    def _pair(self, x, y):
        """Analyse the corridor shared by occurrences x, y on one edge.

        Returns None if the strands never separate, otherwise a dict
        with the divergence data on both sides of the edge.
        """
        surf = self.surface
        wx = self.words[x[:2]]
        wy = self.words[y[:2]]
        sx = wx[x[2]]
        sy = wy[y[2]]
        if surf.edge_of_slot(sx) != surf.edge_of_slot(sy):
            raise ValueError("occurrences on different edges")
        s_lo = surf.edge_of_slot(sx)
        s_hi = surf.glue[s_lo]
        d1 = _divergence(surf, wx, x[2], wy, y[2], s_lo)
        d2 = _divergence(surf, wx, x[2], wy, y[2], s_hi)
        if d1 is None or d2 is None:
            return None
        return {"x": x, "y": y, "lo": d1, "hi": d2}

    def _corridor_endpair(self, x, y, depth_lo):
        """Identify the corridor of (x, y) by its occurrence pair at the
        low-side end, for deduplication."""
        surf = self.surface
        wx, wy = self.words[x[:2]], self.words[y[:2]]
        sx = wx[x[2]]
        s_lo = surf.edge_of_slot(sx)
        fx = +1 if s_lo == surf.glue[sx] else -1
        sy = wy[y[2]]
        fy = +1 if s_lo == surf.glue[sy] else -1
        nx, ny = len(wx), len(wy)
        ex = (x[0], x[1], (x[2] + fx * depth_lo) % nx)
        ey = (y[0], y[1], (y[2] + fy * depth_lo) % ny)
        return min((ex, ey), (ey, ex))

    def crossings(self):
        """All corridor crossings, one record per geometric crossing."""
        out = []
        for e, occs in self.occ_by_edge.items():
            for a in range(len(occs)):
                for b in range(a + 1, len(occs)):
                    x, y = occs[a], occs[b]
                    if x[:2] == y[:2] and x[2] == y[2]:
                        continue
                    rec = self._pair(x, y)
                    if rec is None:
                        continue
                    dlo, dhi = rec["lo"], rec["hi"]
                    if dlo[1] != dhi[1]:
                        continue        # orders agree at both ends: parallel
                    end = self._corridor_endpair(x, y, dlo[0])
                    if end != min((x, y), (y, x)):
                        continue        # counted at the corridor end only
                    out.append(rec)
        return out

    def count(self, tag_a=None, tag_b=None):
        """Number of crossings, optionally restricted to two curve tags."""
        n = 0
        for rec in self.crossings():
            cx, cy = rec["x"][0], rec["y"][0]
            if tag_a is None or {cx, cy} == {tag_a, tag_b} or \
               (tag_a == tag_b and cx == cy == tag_a):
                n += 1
        return n


def raw_crossing_count(a, b, surf=None) -> int:
    surf = surf or a.surface
    ov = Overlay(surf, [a, b])
    return ov.count(0, 1)


def self_crossings(a, surf=None) -> int:
    surf = surf or a.surface
    ov = Overlay(surf, [a])
    return ov.count(0, 0)


def word_self_count(surf: Triangulation, word) -> int:
    """Combed self-crossing count of a single component word."""
    return Overlay(surf, [[tuple(word)]]).count(0, 0)
