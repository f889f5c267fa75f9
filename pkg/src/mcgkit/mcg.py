"""Mapping classes: twist words, curve action, homology action, growth.

A mapping class is a word in Dehn twists about stored curves and powers
of the surface symmetry.  Twists act on curves by splicing copies of
the twisting curve at every crossing, with the inserted orientation
following the crossing sign; the convention is fixed globally and tied
down by the torus oracle and the transvection compatibility tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .curves import NormalMulticurve, CurveError
from .ops import crossing_records, _chord_param, _cyc, geometric_intersection
from .homology import HomologyBasis, HomologyClass


@dataclass(frozen=True)
class MappingClass:
    """Word in twist and rotation letters, leftmost letter applied last."""

    surface: object
    letters: tuple      # ("twist", NormalMulticurve, k) | ("rot", k)

    @staticmethod
    def identity(surface):
        return MappingClass(surface, ())

    @staticmethod
    def twist(curve: NormalMulticurve, k: int = 1):
        if curve.num_components != 1:
            raise CurveError("twists are about single curves")
        return MappingClass(curve.surface, (("twist", curve, k),))

    @staticmethod
    def rotation(surface, k: int = 1):
        return MappingClass(surface, (("rot", k),))

    def compose(self, other: "MappingClass") -> "MappingClass":
        if other.surface != self.surface:
            raise CurveError("mapping classes on different surfaces")
        return MappingClass(self.surface, self.letters + other.letters)

    def power(self, n: int) -> "MappingClass":
        if n == 0:
            return MappingClass.identity(self.surface)
        if n < 0:
            inv = tuple(self._invert_letter(l) for l in reversed(self.letters))
            return MappingClass(self.surface, inv * (-n))
        return MappingClass(self.surface, self.letters * n)

    def inverse(self) -> "MappingClass":
        return self.power(-1)

    def _invert_letter(self, letter):
        if letter[0] == "twist":
            return ("twist", letter[1], -letter[2])
        return ("rot", -letter[1])

    # -- action on curves ---------------------------------------------------

    def act(self, c: NormalMulticurve) -> NormalMulticurve:
        for kind, *rest in reversed(self.letters):
            if kind == "rot":
                c = c.apply_symmetry(rest[0])
            else:
                t, k = rest
                c = twist_curve(t, k, c)
        return c

    def act_on_homology(self, hb: HomologyBasis):
        n = hb.rank
        m = [[int(i == j) for j in range(n)] for i in range(n)]
        for kind, *rest in reversed(self.letters):
            if kind == "rot":
                step = _rotation_matrix(hb, rest[0])
            else:
                t, k = rest
                step = hb.transvection_matrix(hb.class_of(t), k)
            m = _mat_mul(step, m)
        return m


def _mat_mul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)]


def _rotation_matrix(hb: HomologyBasis, k: int):
    n = hb.rank
    cols = []
    for b in hb.curves:
        words = [tuple(b.surface.apply_symmetry_slot(s, k) for s in w)
                 for w in b.components]
        image = NormalMulticurve(b.surface, tuple(words))
        cols.append(hb.class_of(image).vector)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def twist_curve(t: NormalMulticurve, k: int, c: NormalMulticurve) -> NormalMulticurve:
    """Image of c under the k-fold twist about t.

    Every crossing is replaced by |k| full copies of t, oriented with
    the product of the crossing sign and the sign of k.
    """
    if k == 0 or c.is_empty or t.is_empty:
        return c
    surf = t.surface
    pos, arr, recs = crossing_records(c, t)
    if not recs:
        return c
    words_c = pos.words[0]
    words_t = pos.words[1]
    glue = surf.glue

    # group crossings by c-component and position along c
    by_comp = {}
    for rec in recs:
        (ci_c, wi_c, _), cur_c = rec["c_chord"]
        kc = cur_c[2]
        lam = _chord_param(arr, rec["c_chord"], rec["triangle"], rec["point"])
        u, v = rec["dirs"]
        cross = u[0] * v[1] - u[1] * v[0]
        sign = 1 if cross > 0 else -1
        wi_t = rec["m_chord"][0][1]
        kt = rec["m_chord"][1][2]
        by_comp.setdefault(wi_c, []).append((kc, lam, sign, wi_t, kt))

    out_words = []
    for wi, w in enumerate(words_c):
        if wi not in by_comp:
            out_words.append(tuple(w))
            continue
        events = sorted(by_comp[wi], key=lambda z: (z[0], z[1]))
        new = []
        n = len(w)
        ptr = 0
        for kc in range(n):
            for (kc_e, lam, sign, wi_t, kt) in events:
                if kc_e != kc:
                    continue
                tw = words_t[wi_t]
                forward = (sign * k) > 0
                copy = _cyc(tw, kt, kt) if forward else \
                    [glue[s] for s in reversed(_cyc(tw, kt, kt))]
                new.extend(copy * abs(k))
            new.append(w[kc])
        out_words.append(tuple(new))
    return NormalMulticurve.from_words(surf, out_words)
