"""Exact arrangements of multicurves and their complementary regions.

Curves are placed in each triangle as straight rational chords, using a
corridor-consistent order of crossing points along every edge.  The
module computes the induced cell decomposition, merges cells across
edge segments into complementary regions, and reads off Euler
characteristics, boundary circles, bigon faces and crossing data.

Facts used throughout:

* every triangulation vertex lies in the interior of exactly one
  region, because curve arcs never pass through vertices;
* chi(region) = interior vertices - edge segments + cells; boundary
  contributions cancel cycle by cycle;
* an innermost bigon between positioned curves is a region with two
  corners, so positions tighten by rerouting one bounding chain along
  the other and rebuilding.  Tight positions realise the geometric
  intersection number (no bigon survives).
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key

from .surface import Triangulation, slot, slot_triangle, slot_index
from .curves import CurveError, _remove_returns, check_word
from .overlay import _divergence


# triangle chart shared by every triangle: V0, V1, V2 counterclockwise
_V = ((Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)),
      (Fraction(1, 2), Fraction(1)))


def _side_point(i: int, lam: Fraction):
    a, b = _V[i], _V[(i + 1) % 3]
    return (a[0] + lam * (b[0] - a[0]), a[1] + lam * (b[1] - a[1]))


def _cross2(o, p, q):
    return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])


def _seg_intersection(p1, p2, q1, q2):
    """Proper intersection point of two open segments, or None."""
    d1 = _cross2(q1, q2, p1)
    d2 = _cross2(q1, q2, p2)
    d3 = _cross2(p1, p2, q1)
    d4 = _cross2(p1, p2, q2)
    if d1 == 0 or d2 == 0 or d3 == 0 or d4 == 0:
        return None
    if (d1 > 0) == (d2 > 0) or (d3 > 0) == (d4 > 0):
        return None
    t = d1 / (d1 - d2)
    return (p1[0] + t * (p2[0] - p1[0]), p1[1] + t * (p2[1] - p1[1]))


class PositionedCurves:
    """Words of several multicurves with curve tags; placement data is
    recomputed from the words on demand."""

    def __init__(self, surf: Triangulation, words_by_curve):
        self.surface = surf
        self.words = [ [tuple(w) for w in ws] for ws in words_by_curve ]

    @staticmethod
    def of(curves):
        surf = curves[0].surface
        return PositionedCurves(surf, [c.components for c in curves])

    def occurrences(self):
        for ci, ws in enumerate(self.words):
            for wi, w in enumerate(ws):
                for k in range(len(w)):
                    yield (ci, wi, k)

    def word_of(self, occ):
        return self.words[occ[0]][occ[1]]

    def _endpair(self, x, y, into_slot, depth):
        surf = self.surface
        wx, wy = self.word_of(x), self.word_of(y)
        fx = +1 if into_slot == surf.glue[wx[x[2]]] else -1
        fy = +1 if into_slot == surf.glue[wy[y[2]]] else -1
        ex = (x[0], x[1], (x[2] + fx * depth) % len(wx))
        ey = (y[0], y[1], (y[2] + fy * depth) % len(wy))
        return min((ex, ey), (ey, ex))

    def edge_orders(self):
        """Occurrences on each edge ordered from the tail of the lower
        slot; the order of a parallel pair is decided once per corridor
        so corridors carry no spurious crossings."""
        surf = self.surface
        by_edge = {e: [] for e in surf.edges()}
        for occ in self.occurrences():
            w = self.word_of(occ)
            by_edge[surf.edge_of_slot(w[occ[2]])].append(occ)

        def compare(x, y):
            # The nearer divergence decides the order; a crossing pair
            # then flips exactly once along its corridor, where the
            # nearest side switches.
            if x == y:
                return 0
            wx, wy = self.word_of(x), self.word_of(y)
            s_lo = surf.edge_of_slot(wx[x[2]])
            s_hi = surf.glue[s_lo]
            dlo = _divergence(surf, wx, x[2], wy, y[2], s_lo)
            dhi = _divergence(surf, wx, x[2], wy, y[2], s_hi)
            if dlo is None and dhi is None:
                # fully parallel strands: keep the lower tag on one fixed
                # geometric side, which in the lo frame of each crossed
                # edge alternates with the frame direction
                flip = wx[x[2]] == s_lo
                before = (x[:2] < y[:2]) ^ flip
                return -1 if before else 1
            if dlo is None:
                before = dhi[1]
            elif dhi is None:
                before = not dlo[1]
            elif dlo[0] <= dhi[0]:
                before = not dlo[1]
            else:
                before = dhi[1]
            return -1 if before else 1

        orders = {}
        for e, occs in by_edge.items():
            occs.sort(key=cmp_to_key(compare))
            orders[e] = occs
        return orders


class Arrangement:
    """Cell decomposition induced by positioned curves."""

    def __init__(self, pos: PositionedCurves):
        self.pos = pos
        self.surface = pos.surface
        self._build()

    # -- construction ----------------------------------------------------

    def _build(self):
        surf = self.surface
        self.orders = self.pos.edge_orders()
        total = sum(len(o) for o in self.orders.values())
        self.lam = {}
        for e, occs in self.orders.items():
            n = len(occs)
            jitter = Fraction(1, (total + 2) * (n + 2) * 1009)
            for r, occ in enumerate(occs):
                self.lam[occ] = Fraction(r + 1, n + 1) + jitter * (self._rank(occ) + 1)
        self.crossings = []
        self.cells = []            # cell id -> triangle
        self.cell_arcs = []        # cell id -> list of (kind, data, fwd, na, nb)
        self._trace_triangles()
        self._merge_regions()

    def _rank(self, occ):
        ci, wi, k = occ
        base = 0
        for i in range(ci):
            base += sum(len(w) for w in self.pos.words[i])
        for i in range(wi):
            base += len(self.pos.words[ci][i])
        return base + k

    def _occ_coord(self, occ, t):
        surf = self.surface
        s = self.pos.word_of(occ)[occ[2]]
        lo = surf.edge_of_slot(s)
        lam = self.lam[occ]
        if slot_triangle(lo) == t:
            return _side_point(slot_index(lo), lam)
        hi = surf.glue[lo]
        if slot_triangle(hi) != t:
            raise ValueError("occurrence not on this triangle")
        return _side_point(slot_index(hi), 1 - lam)

    def _seg_key(self, s, k):
        """Canonical (edge, index) of a side segment in lo-slot frame."""
        surf = self.surface
        e = surf.edge_of_slot(s)
        n = len(self.orders[e])
        return (e, k if s == e else n - k)

    def _trace_triangles(self):
        surf = self.surface
        chords_in = {t: [] for t in range(surf.num_triangles)}
        for ci, ws in enumerate(self.pos.words):
            for wi, w in enumerate(ws):
                n = len(w)
                for k in range(n):
                    t = slot_triangle(w[k])
                    chords_in[t].append(((ci, wi, (k - 1) % n), (ci, wi, k)))
        for t in range(surf.num_triangles):
            self._trace_one(t, chords_in[t])

    def _trace_one(self, t, chords):
        surf = self.surface
        coords = {}

        def node(key, coord):
            coords[key] = coord
            return key

        for i in range(3):
            node(("corner", t, i), _V[i])

        side_pts = {}
        for i in range(3):
            s = slot(t, i)
            e = surf.edge_of_slot(s)
            pts = []
            for occ in self.orders[e]:
                lam_t = self.lam[occ] if s == e else 1 - self.lam[occ]
                pts.append((lam_t, occ))
            pts.sort()
            side_pts[i] = pts
            for lam_t, occ in pts:
                node(("pt", occ, t), _side_point(i, lam_t))

        chord_geom = []
        for prev, cur in chords:
            a = self._occ_coord(prev, t)
            b = self._occ_coord(cur, t)
            chord_geom.append((a, b, prev, cur))
        splits = [[] for _ in chord_geom]
        for i in range(len(chord_geom)):
            for j in range(i + 1, len(chord_geom)):
                a1, b1, p1, c1 = chord_geom[i]
                a2, b2, p2, c2 = chord_geom[j]
                x = _seg_intersection(a1, b1, a2, b2)
                if x is not None:
                    key = ("x", len(self.crossings))
                    node(key, x)
                    self.crossings.append({
                        "key": key, "triangle": t, "point": x,
                        "chords": ((p1, c1), (p2, c2)),
                        "dirs": ((b1[0] - a1[0], b1[1] - a1[1]),
                                 (b2[0] - a2[0], b2[1] - a2[1])),
                    })
                    splits[i].append((x, key))
                    splits[j].append((x, key))

        arcs = []

        def chord_param(a, b, p):
            dx, dy = b[0] - a[0], b[1] - a[1]
            if dx != 0:
                return (p[0] - a[0]) / dx
            return (p[1] - a[1]) / dy

        for i, (a, b, prev, cur) in enumerate(chord_geom):
            pieces = [(Fraction(0), ("pt", prev, t)), (Fraction(1), ("pt", cur, t))]
            for x, key in splits[i]:
                pieces.append((chord_param(a, b, x), key))
            pieces.sort(key=lambda z: z[0])
            for k in range(len(pieces) - 1):
                arcs.append((pieces[k][1], pieces[k + 1][1], "curve", (prev, cur, k)))

        for i in range(3):
            seq = [("corner", t, i)]
            seq += [("pt", occ, t) for _, occ in side_pts[i]]
            seq.append(("corner", t, (i + 1) % 3))
            for k in range(len(seq) - 1):
                arcs.append((seq[k], seq[k + 1], "side", (slot(t, i), k)))

        # planar face trace with exact angles
        out = {k: [] for k in coords}
        darts = []
        for ai, (na, nb, kind, data) in enumerate(arcs):
            darts.append((na, nb, ai))
            darts.append((nb, na, ai))
            out[na].append(len(darts) - 2)
            out[nb].append(len(darts) - 1)

        def angle_cmp(d1, d2):
            n1a, n1b, _ = darts[d1]
            n2a, n2b, _ = darts[d2]
            a1, b1 = coords[n1a], coords[n1b]
            a2, b2 = coords[n2a], coords[n2b]
            x1, y1 = b1[0] - a1[0], b1[1] - a1[1]
            x2, y2 = b2[0] - a2[0], b2[1] - a2[1]
            h1 = (y1 < 0) or (y1 == 0 and x1 < 0)
            h2 = (y2 < 0) or (y2 == 0 and x2 < 0)
            if h1 != h2:
                return -1 if not h1 else 1
            c = x1 * y2 - x2 * y1
            return 0 if c == 0 else (-1 if c > 0 else 1)

        pos_in_rot = {}
        for k in out:
            out[k].sort(key=cmp_to_key(angle_cmp))
            for idx, d in enumerate(out[k]):
                pos_in_rot[d] = idx

        def succ(d):
            _, nb, _ = darts[d]
            rot = out[nb]
            return rot[(pos_in_rot[d ^ 1] - 1) % len(rot)]

        seen = set()
        for d0 in range(len(darts)):
            if d0 in seen:
                continue
            face = []
            area2 = Fraction(0)
            d = d0
            while d not in seen:
                seen.add(d)
                face.append(d)
                na, nb, _ = darts[d]
                a, b = coords[na], coords[nb]
                area2 += a[0] * b[1] - b[0] * a[1]
                d = succ(d)
            if area2 <= 0:
                continue               # the outer face of this triangle
            cell_id = len(self.cells)
            self.cells.append(t)
            arc_list = []
            for d in face:
                na, nb, ai = darts[d]
                a_na, a_nb, kind, data = arcs[ai]
                fwd = (na, nb) == (a_na, a_nb)
                arc_list.append((kind, data, fwd, na, nb))
            self.cell_arcs.append(arc_list)

    def _merge_regions(self):
        parent = list(range(len(self.cells)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        seg_cells = {}
        for cid, arc_list in enumerate(self.cell_arcs):
            for kind, data, fwd, na, nb in arc_list:
                if kind == "side":
                    seg_cells.setdefault(self._seg_key(*data), []).append(cid)
        for key, cids in seg_cells.items():
            if len(cids) != 2:
                raise RuntimeError(f"edge segment {key} borders {len(cids)} cells")
            ra, rb = find(cids[0]), find(cids[1])
            if ra != rb:
                parent[ra] = rb
        self._seg_cells = seg_cells
        self.region_of_cell = [find(c) for c in range(len(self.cells))]
        self.regions = sorted(set(self.region_of_cell))

    # -- queries -----------------------------------------------------------

    def crossing_count(self, tag_a=None, tag_b=None):
        n = 0
        for rec in self.crossings:
            (p1, _), (p2, _) = rec["chords"]
            if tag_a is None or {p1[0], p2[0]} == {tag_a, tag_b} or \
               (tag_a == tag_b and p1[0] == p2[0] == tag_a):
                n += 1
        return n

    def signed_crossing_sum(self, tag_a, tag_b):
        """Sum of crossing signs of curve tag_a against tag_b, both taken
        with their word orientations."""
        total = 0
        for rec in self.crossings:
            (p1, _), (p2, _) = rec["chords"]
            u, v = rec["dirs"]
            if (p1[0], p2[0]) == (tag_a, tag_b):
                s = u[0] * v[1] - u[1] * v[0]
            elif (p1[0], p2[0]) == (tag_b, tag_a):
                s = -(u[0] * v[1] - u[1] * v[0])
            else:
                continue
            total += 1 if s > 0 else -1
        return total

    def region_data(self):
        """Per region: chi, cells, interior vertices, boundary cycles."""
        surf = self.surface
        cells_of = {}
        for cid, r in enumerate(self.region_of_cell):
            cells_of.setdefault(r, []).append(cid)
        vert_region = {}
        for cid, arc_list in enumerate(self.cell_arcs):
            r = self.region_of_cell[cid]
            for kind, data, fwd, na, nb in arc_list:
                for nd in (na, nb):
                    if nd[0] == "corner":
                        _, t, i = nd
                        v = surf.corner_vertex(slot(t, (i + 2) % 3))
                        vert_region[v] = r
        out = {}
        for r, cids in cells_of.items():
            segs = set()
            for cid in cids:
                for kind, data, fwd, na, nb in self.cell_arcs[cid]:
                    if kind == "side":
                        segs.add(self._seg_key(*data))
            verts = sorted(v for v, rr in vert_region.items() if rr == r)
            chi = len(verts) - len(segs) + len(cids)
            out[r] = {"chi": chi, "cells": cids, "vertices": verts,
                      "boundary": self._boundary_cycles(r, cids)}
        return out

    def _boundary_cycles(self, region, cids):
        darts = []
        for cid in cids:
            for i, (kind, *_rest) in enumerate(self.cell_arcs[cid]):
                if kind == "curve":
                    darts.append((cid, i))
        cycles = []
        used = set()
        for d0 in darts:
            if d0 in used:
                continue
            cyc = []
            d = d0
            while d not in used:
                used.add(d)
                cyc.append(d)
                d = self._next_boundary(d)
            cycles.append(cyc)
        return cycles

    def _next_boundary(self, d):
        cid, i = d
        arc_list = self.cell_arcs[cid]
        for _ in range(16 * (len(self.cells) + 2)):
            i = (i + 1) % len(arc_list)
            kind, data, fwd, na, nb = arc_list[i]
            if kind == "curve":
                return (cid, i)
            key = self._seg_key(*data)
            c1, c2 = self._seg_cells[key]
            twin = c2 if c1 == cid else c1
            tw_list = self.cell_arcs[twin]
            for j, (kind2, data2, *_r) in enumerate(tw_list):
                if kind2 == "side" and self._seg_key(*data2) == key and data2 != data:
                    cid, arc_list, i = twin, tw_list, j
                    break
            else:
                raise RuntimeError("twin side segment not found")
        raise RuntimeError("boundary walk did not terminate")

    def dart_info(self, d):
        cid, i = d
        kind, data, fwd, na, nb = self.cell_arcs[cid][i]
        return {"kind": kind, "data": data, "fwd": fwd, "na": na, "nb": nb,
                "cell": cid, "triangle": self.cells[cid]}


# ---------------------------------------------------------------------------
# tightening positioned systems
# ---------------------------------------------------------------------------

def _chain_runs(arr: Arrangement, cycle):
    """Split a boundary cycle at crossing corners.

    Returns a list of runs, each a dict with the strand, its chord range
    and direction; None when the cycle has no corners.
    """
    infos = [arr.dart_info(d) for d in cycle]
    corner_at = [info["na"][0] == "x" for info in infos]
    if not any(corner_at):
        return None
    n = len(cycle)
    starts = [i for i in range(n) if corner_at[i]]
    runs = []
    for si, i0 in enumerate(starts):
        i1 = starts[(si + 1) % len(starts)]
        idxs = []
        i = i0
        while True:
            idxs.append(i)
            if (i + 1) % n == i1:
                break
            i = (i + 1) % n
        first, last = infos[i0], infos[idxs[-1]]
        prev, cur, piece = first["data"]
        strand = (prev[0], prev[1])
        runs.append({
            "strand": strand,
            "fwd": first["fwd"],
            "first_chord": first["data"][1][2],   # index of `cur` occurrence
            "last_chord": infos[idxs[-1]]["data"][1][2],
            "start_corner": first["na"],
            "end_corner": infos[idxs[-1]]["nb"],
            "darts": [cycle[i] for i in idxs],
        })
    return runs


def _run_inner_occurrences(arr: Arrangement, run):
    """Occurrences visited strictly inside a run, in cycle order: the
    side points shared by consecutive darts of the run."""
    occs = []
    for d1, d2 in zip(run["darts"], run["darts"][1:]):
        nd = arr.dart_info(d1)["nb"]
        if nd[0] != "pt":
            raise CurveError("run passes through a non-point node")
        occs.append(nd[1])
    return occs


def _rewrite_across_bigon(pos: PositionedCurves, arr: Arrangement, runs):
    """Push one side of a bigon across the other; mutates pos.words.

    The boundary cycle runs counterclockwise around the bigon, so the
    rewritten strand must traverse the other chain in reversed cycle
    order when their word alignments agree with the cycle, and so on;
    alignment bookkeeping is per run via its ``fwd`` flag.
    """
    surf = pos.surface
    run_b = max(runs, key=lambda r: r["strand"])
    run_a = runs[0] if runs[1] is run_b else runs[1]
    ci, wi = run_b["strand"]
    ca, wa = run_a["strand"]
    w_b = list(pos.words[ci][wi])
    w_a = list(pos.words[ca][wa])
    n_b = len(w_b)

    inner_b = _run_inner_occurrences(arr, run_b)
    inner_a = _run_inner_occurrences(arr, run_a)

    # Replacement letters, in b's word order along the rewritten stretch.
    # If b's word runs with the cycle (fwd), the stretch goes corner X to
    # corner Y, against run_a's cycle direction; otherwise with it.
    if run_b["fwd"]:
        src = list(reversed(inner_a))
        aligned_with_a = not run_a["fwd"]
    else:
        src = list(inner_a)
        aligned_with_a = run_a["fwd"]
    vals = [w_a[o[2]] if aligned_with_a else surf.glue[w_a[o[2]]] for o in src]

    # Positions of b's removed block, in word order.
    if inner_b:
        if run_b["fwd"]:
            start = inner_b[0][2]
        else:
            start = inner_b[-1][2]
        block = [(start + i) % n_b for i in range(len(inner_b))]
        keep_from = (block[-1] + 1) % n_b
    else:
        # the b side of the bigon is a single chord: pure insertion
        # before the letter that closes that chord
        start = run_b["first_chord"]
        block = []
        keep_from = start % n_b
    out = list(vals)
    j = keep_from
    for _ in range(n_b - len(block)):
        out.append(w_b[j])
        j = (j + 1) % n_b
    new_word = _remove_returns(surf, out)
    if not new_word:
        raise CurveError("bigon rewrite produced a trivial component")
    check_word(surf, new_word)
    pos.words[ci][wi] = tuple(new_word)


def _find_bigon(arr: Arrangement):
    data = arr.region_data()
    for r in sorted(data):
        info = data[r]
        if info["chi"] != 1 or len(info["boundary"]) != 1:
            continue
        runs = _chain_runs(arr, info["boundary"][0])
        if runs is None:
            continue
        if len(runs) == 1:
            raise CurveError("monogon face: position is not embeddable")
        if len(runs) == 2:
            return runs
    return None


def tighten(pos: PositionedCurves, max_rounds=None):
    """Remove all bigons between and within the positioned curves.

    Alternates face-level bigon rewrites with per-component
    straightening (bigon rewrites can bunch parallel strands, which
    grid-locks without visible bigons).  Ends in a pairwise minimal
    position; pos.words are rewritten in place.
    """
    from .curves import _straighten, NonEmbedded
    from .overlay import word_self_count

    surf = pos.surface
    arr = Arrangement(pos)
    cap = max_rounds if max_rounds is not None else 4 * arr.crossing_count() + \
        16 * sum(len(ws) for ws in pos.words) + 64
    rounds = 0
    while True:
        bigon = _find_bigon(arr)
        if bigon is not None:
            rounds += 1
            if rounds > cap:
                raise RuntimeError("bigon reduction did not converge")
            _rewrite_across_bigon(pos, arr, bigon)
            arr = Arrangement(pos)
            continue
        progressed = False
        for ci, ws in enumerate(pos.words):
            for wi, w in enumerate(ws):
                if word_self_count(surf, w) == 0:
                    continue
                w2, count, trivial = _straighten(surf, list(w))
                if trivial or count != 0:
                    raise NonEmbedded("component cannot be straightened")
                if tuple(w2) != tuple(w):
                    pos.words[ci][wi] = tuple(w2)
                    progressed = True
        if not progressed:
            return arr
        rounds += 1
        if rounds > cap:
            raise RuntimeError("straightening did not converge")
        arr = Arrangement(pos)


def tight_arrangement(curves, max_rounds=None):
    pos = PositionedCurves.of(list(curves))
    arr = tighten(pos, max_rounds)
    return pos, arr
