"""Topological operations built on tight arrangements.

Everything here works with curves in pairwise minimal position: the
geometric intersection number, cutting and capping, filling tests, band
sums and surgery along meridian disks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .surface import Triangulation, slot_triangle
from .curves import NormalMulticurve, CurveError, NonEmbedded, reverse_word
from .arrange import PositionedCurves, Arrangement, tighten, tight_arrangement


class BandCrossesCurves(CurveError):
    pass


_isect_cache = {}


def geometric_intersection(a: NormalMulticurve, b: NormalMulticurve) -> int:
    """Minimal crossing number between the isotopy classes of a and b."""
    if a.surface != b.surface:
        raise CurveError("curves live on different surfaces")
    if a.is_empty or b.is_empty:
        return 0
    key = (a.surface, a.components, b.components)
    if key not in _isect_cache:
        _, arr = tight_arrangement([a, b])
        n = arr.crossing_count(0, 1)
        _isect_cache[key] = n
        _isect_cache[(a.surface, b.components, a.components)] = n
    return _isect_cache[key]


def algebraic_crossing_sum(a: NormalMulticurve, b: NormalMulticurve) -> int:
    """Signed crossings of a against b with their stored orientations."""
    if a.is_empty or b.is_empty:
        return 0
    _, arr = tight_arrangement([a, b])
    return arr.signed_crossing_sum(0, 1)


@dataclass(frozen=True)
class CutComponent:
    """One piece of a surface cut along a multicurve.

    ``genus_capped`` is the genus after filling every boundary circle
    with a disk; spheres come out as genus 0.
    """
    euler_char: int
    boundary_circles: int

    def __post_init__(self):
        if (self.euler_char + self.boundary_circles) % 2 != 0 or \
                self.euler_char + self.boundary_circles > 2:
            raise ValueError("impossible cut component")

    @property
    def genus_capped(self) -> int:
        return (2 - (self.euler_char + self.boundary_circles)) // 2


def _cycle_tags(arr: Arrangement, cycle):
    """Curve tags whose arcs appear on a boundary cycle."""
    tags = set()
    for d in cycle:
        info = arr.dart_info(d)
        prev, cur, piece = info["data"]
        tags.add(prev[0])
    return tags


def cut_along(surf: Triangulation, m: NormalMulticurve):
    """Pieces of the surface cut along m, as CutComponent records."""
    if m.surface != surf:
        raise CurveError("curve on wrong surface")
    if m.is_empty:
        return [CutComponent(surf.euler_characteristic, 0)]
    pos, arr = tight_arrangement([m])
    if arr.crossing_count() != 0:
        raise NonEmbedded("multicurve components intersect")
    out = []
    for r, info in sorted(arr.region_data().items()):
        out.append(CutComponent(info["chi"], len(info["boundary"])))
    return out


def is_separating(c: NormalMulticurve) -> bool:
    """Whether the (single-component, essential) curve disconnects."""
    if c.num_components != 1:
        raise CurveError("separation test expects a single component")
    return len(cut_along(c.surface, c)) == 2


def fills(surf: Triangulation, curves) -> bool:
    """Whether the union of the curves cuts the surface into disks."""
    curves = [c for c in curves if not c.is_empty]
    if not curves:
        return False
    pos, arr = tight_arrangement(curves)
    return all(info["chi"] == 1 for info in arr.region_data().values())


def fills_complement_component(surf: Triangulation, cut: NormalMulticurve,
                               tests, marker: NormalMulticurve | None = None):
    """Filling check inside one component of the surface cut along ``cut``.

    The pieces of S minus cut are recovered by merging complement regions
    of the full system across test-curve arcs.  Inside the piece that
    contains ``marker`` (or every piece if none), every region of the
    full system must be a disk or a collar of a cut circle.

    Returns a dict piece id -> bool.
    """
    tests = [t for t in tests if not t.is_empty]
    all_curves = [cut] + tests
    pos, arr = tight_arrangement(all_curves)
    data = arr.region_data()

    parent = {r: r for r in data}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    region_of_cell = arr.region_of_cell
    # merge regions across arcs not belonging to the cut system (tag 0)
    for rec in _region_adjacencies(arr):
        tag, r1, r2 = rec
        if tag != 0:
            ra, rb = find(r1), find(r2)
            if ra != rb:
                parent[ra] = rb

    # region of the marker: piece containing it
    marked_piece = None
    if marker is not None:
        mtag = None
        for i, c in enumerate(all_curves):
            if c.components == marker.components:
                mtag = i
        if mtag is None:
            raise CurveError("marker must be one of the cut or test curves")
        for r, info in data.items():
            for cyc in info["boundary"]:
                if mtag in _cycle_tags(arr, cyc):
                    marked_piece = find(r)
        if marked_piece is None:
            raise CurveError("marker curve not adjacent to any region")

    verdict = {}
    for r, info in data.items():
        piece = find(r)
        if marked_piece is not None and piece != marked_piece:
            continue
        ok = info["chi"] == 1
        if not ok and info["chi"] == 0:
            # collar regions of a cut circle are allowed
            cycles_on_cut = sum(
                1 for cyc in info["boundary"] if _cycle_tags(arr, cyc) == {0})
            ok = cycles_on_cut >= 1
        verdict[piece] = verdict.get(piece, True) and ok
    return verdict


def _region_adjacencies(arr: Arrangement):
    """(tag, region_one_side, region_other_side) for every curve arc."""
    sides = {}
    for cid, arc_list in enumerate(arr.cell_arcs):
        for kind, data, fwd, na, nb in arc_list:
            if kind == "curve":
                sides.setdefault(data, []).append(cid)
    for data, cids in sides.items():
        if len(cids) != 2:
            raise RuntimeError("curve arc without two sides")
        tag = data[0][0]
        yield (tag, arr.region_of_cell[cids[0]], arr.region_of_cell[cids[1]])


def band_sum(a: NormalMulticurve, b: NormalMulticurve, band) -> NormalMulticurve:
    """Join disjoint curves a and b along an embedded band.

    ``band`` is (k_a, k_b, path): the band leaves the chord of a that
    follows letter ``k_a``, crosses the edges listed in ``path`` (exit
    slots, possibly empty), and lands on the chord of b following letter
    ``k_b``.  Raises BandCrossesCurves when the resulting traversal is
    not a single embedded curve.
    """
    surf = a.surface
    if a.num_components != 1 or b.num_components != 1:
        raise CurveError("band sum expects single components")
    wa, wb = a.components[0], b.components[0]
    k_a, k_b, path = band
    path = tuple(path)
    na, nb = len(wa), len(wb)
    word = (wa[(k_a + 1) % na:] + wa[:(k_a + 1) % na]
            + path
            + wb[(k_b + 1) % nb:] + wb[:(k_b + 1) % nb]
            + reverse_word(surf, path))
    try:
        out = NormalMulticurve.from_word(surf, word)
    except NonEmbedded as ex:
        raise BandCrossesCurves(str(ex))
    if out.num_components != 1 or out.is_empty:
        raise BandCrossesCurves("band sum did not produce a single essential curve")
    return out


def parallel_copy(c: NormalMulticurve) -> NormalMulticurve:
    """A disjoint parallel copy (same canonical words, separate object)."""
    return NormalMulticurve(c.surface, c.components, 0)


def isotopic(a: NormalMulticurve, b: NormalMulticurve) -> bool:
    """Whether two single-component essential curves are isotopic.

    Equal canonical forms decide immediately; otherwise two disjoint
    essential curves are isotopic exactly when they cobound a product
    annulus, visible as a chi = 0 complement region with one boundary
    circle on each curve.
    """
    if a.surface != b.surface:
        return False
    if a.num_components != 1 or b.num_components != 1:
        raise CurveError("isotopy test expects single components")
    if a.components == b.components:
        return True
    if geometric_intersection(a, b) != 0:
        return False
    _, arr = tight_arrangement([a, b])
    for info in arr.region_data().values():
        if info["chi"] != 0 or len(info["boundary"]) != 2:
            continue
        tags = [_cycle_tags(arr, cyc) for cyc in info["boundary"]]
        if sorted(map(tuple, map(sorted, tags))) == [(0,), (1,)]:
            return True
    return False


def multicurves_isotopic(a: NormalMulticurve, b: NormalMulticurve) -> bool:
    """Componentwise isotopy matching for disjoint systems."""
    if a.num_components != b.num_components:
        return False
    if a.components == b.components:
        return True
    remaining = list(range(b.num_components))
    for i in range(a.num_components):
        ca = a.component(i)
        for j in list(remaining):
            if isotopic(ca, b.component(j)):
                remaining.remove(j)
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# surgery along a meridian
# ---------------------------------------------------------------------------

def crossing_records(c: NormalMulticurve, m: NormalMulticurve):
    """Tight crossings of c with m, each with word positions and the
    exact parameter along m's chord (for adjacency along m)."""
    pos, arr = tight_arrangement([c, m])
    words_c, words_m = pos.words[0], pos.words[1]
    recs = []
    for rec in arr.crossings:
        (p1, c1), (p2, c2) = rec["chords"]
        if {p1[0], p2[0]} != {0, 1}:
            continue
        u, v = rec["dirs"]
        if p1[0] == 0:
            ch_c, ch_m, dirs = (p1, c1), (p2, c2), (u, v)
        else:
            ch_c, ch_m, dirs = (p2, c2), (p1, c1), (v, u)
        recs.append({
            "c_chord": ch_c, "m_chord": ch_m, "dirs": dirs,
            "triangle": rec["triangle"], "point": rec["point"],
        })
    return pos, arr, recs


def _chord_param(arr: Arrangement, chord, t, point):
    a = arr._occ_coord(chord[0], t)
    b = arr._occ_coord(chord[1], t)
    dx, dy = b[0] - a[0], b[1] - a[1]
    if dx != 0:
        return (point[0] - a[0]) / dx
    return (point[1] - a[1]) / dy


def slide_pairs(c: NormalMulticurve, m: NormalMulticurve):
    """Pairs of c-m crossings adjacent along m, candidates for surgery."""
    pos, arr, recs = crossing_records(c, m)
    if len(recs) < 2:
        return pos, []
    keyed = []
    for i, rec in enumerate(recs):
        mi, mc = rec["m_chord"]
        lam = _chord_param(arr, rec["m_chord"], rec["triangle"], rec["point"])
        keyed.append(((mi[1], mc[2], lam), i))
    keyed.sort()
    by_comp = {}
    for (wi, kk, lam), i in keyed:
        by_comp.setdefault(wi, []).append(i)
    pairs = []
    for wi, idxs in by_comp.items():
        n = len(idxs)
        if n < 2:
            continue
        for j in range(n):
            pairs.append((recs[idxs[j]], recs[idxs[(j + 1) % n]]))
    return pos, pairs


def slide_candidates(c_words, rec_x, rec_y, pos: PositionedCurves):
    """Surger c along the meridian arc between two adjacent crossings.

    Reconnects the strand ends across arcs parallel to the meridian,
    realising a homotopy of c across its disk.  There are two smoothing
    patterns; both are sound, and the caller keeps the embedded ones.
    Returns a list of candidate component-word lists.
    """
    surf = pos.surface
    m_words = pos.words[1]
    wx_m = rec_x["m_chord"]
    wy_m = rec_y["m_chord"]
    if wx_m[0][1] != wy_m[0][1]:
        raise CurveError("crossings on different meridian components")
    mw = m_words[wx_m[0][1]]
    nm = len(mw)
    kx_m, ky_m = wx_m[1][2], wy_m[1][2]
    corridor = _cyc(mw, kx_m, ky_m) if kx_m != ky_m else []
    rev_corr = [surf.glue[s] for s in reversed(corridor)]

    comp_x, comp_y = rec_x["c_chord"][0][1], rec_y["c_chord"][0][1]
    kx, ky = rec_x["c_chord"][1][2], rec_y["c_chord"][1][2]

    def rev(seg):
        return [surf.glue[s] for s in reversed(seg)]

    cands = []
    if comp_x == comp_y:
        w = c_words[comp_x]
        s1 = _cyc(w, kx, ky)          # letters kx .. ky-1 (X to Y stretch)
        s2 = _cyc(w, ky, kx)          # Y to X stretch
        rest = [ww for i, ww in enumerate(c_words) if i != comp_x]
        # split pattern: two circles, each closed by one corridor copy
        cands.append([tuple(s2 + corridor), tuple(s1 + rev_corr)] + rest)
        # fold pattern: one circle traversing s2 reversed
        cands.append([tuple(s1 + rev_corr + rev(s2) + rev_corr)] + rest)
    else:
        w1, w2 = c_words[comp_x], c_words[comp_y]
        rest = [ww for i, ww in enumerate(c_words) if i not in (comp_x, comp_y)]
        full1 = _cyc(w1, kx, kx)
        full2 = _cyc(w2, ky, ky)
        cands.append([tuple(full1 + corridor + full2 + rev_corr)] + rest)
        cands.append([tuple(full1 + corridor + rev(full2) + rev_corr)] + rest)
    return [c for c in cands if c is not None]


def _cyc(w, i, j):
    """letters i, i+1, ..., j-1 cyclically (full cycle when i == j)."""
    n = len(w)
    out = []
    k = i % n
    while True:
        out.append(w[k])
        k = (k + 1) % n
        if k == j % n:
            break
    return out
