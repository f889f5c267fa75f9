"""First homology of the surface as a symplectic lattice.

The basis is a list of explicitly oriented curves whose pairwise signed
crossing numbers form a unimodular antisymmetric matrix; classes of
other curves are recovered from their pairings against the basis.
Sublattices are kept in Hermite normal form so equality is literal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .curves import NormalMulticurve, CurveError
from .ops import algebraic_crossing_sum


def _mat_inv(m):
    """Exact inverse of a square integer matrix with det +-1."""
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        f = a[col][col]
        a[col] = [x / f for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                g = a[r][col]
                a[r] = [x - g * y for x, y in zip(a[r], a[col])]
    inv = [[a[i][j + n] for j in range(n)] for i in range(n)]
    out = [[int(x) for x in row] for row in inv]
    if any(inv[i][j] != out[i][j] for i in range(n) for j in range(n)):
        raise ValueError("matrix is not unimodular")
    return out


def hermite_normal_form(rows):
    """Row-style HNF over the integers with positive pivots; zero rows
    dropped.  Canonical for each sublattice."""
    rows = [list(map(int, r)) for r in rows if any(r)]
    if not rows:
        return []
    ncols = len(rows[0])
    mat = [r[:] for r in rows]
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        # gcd-reduce the column below the pivot
        again = True
        while again:
            again = False
            for i in range(r + 1, len(mat)):
                if mat[i][c] != 0:
                    q = mat[i][c] // mat[r][c]
                    mat[i] = [x - q * y for x, y in zip(mat[i], mat[r])]
                    if mat[i][c] != 0:
                        mat[r], mat[i] = mat[i], mat[r]
                        again = True
        if mat[r][c] < 0:
            mat[r] = [-x for x in mat[r]]
        for i in range(r):
            q = mat[i][c] // mat[r][c]
            if q:
                mat[i] = [x - q * y for x, y in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    mat = [row for row in mat[:r] if any(row)]
    return mat


@dataclass(frozen=True)
class HomologyClass:
    vector: tuple
    defined_up_to_sign: bool = True

    @property
    def is_zero(self):
        return not any(self.vector)

    def canonical(self):
        v = self.vector
        for x in v:
            if x > 0:
                return self
            if x < 0:
                return HomologyClass(tuple(-y for y in v), self.defined_up_to_sign)
        return self

    def neg(self):
        return HomologyClass(tuple(-x for x in self.vector), self.defined_up_to_sign)


@dataclass(frozen=True)
class Sublattice:
    basis: tuple          # HNF rows

    @staticmethod
    def span(vectors):
        return Sublattice(tuple(map(tuple, hermite_normal_form(list(vectors)))))

    @property
    def rank(self):
        return len(self.basis)

    def contains(self, vector):
        v = list(map(int, vector))
        for row in self.basis:
            c = next((j for j, x in enumerate(row) if x), None)
            if c is None:
                continue
            if v[c] % row[c] != 0:
                return False
            q = v[c] // row[c]
            v = [x - q * y for x, y in zip(v, row)]
        return not any(v)

    def intersect(self, other: "Sublattice") -> "Sublattice":
        """Lattice intersection via the integer kernel of stacked bases."""
        a = [list(r) for r in self.basis]
        b = [list(r) for r in other.basis]
        if not a or not b:
            return Sublattice(())
        n = len(a[0])
        stacked = [a[i] + [int(i == k) for k in range(len(a))] + [0] * len(b)
                   for i in range(len(a))]
        stacked += [b[i] + [0] * len(a) + [int(i == k) for k in range(len(b))]
                    for i in range(len(b))]
        # kernel of the combination map (u, v) -> uA - vB gives common vectors
        vecs = _integer_kernel_combinations(a, b)
        return Sublattice.span(vecs)


def _integer_kernel_combinations(a, b):
    """Vectors u*A with u*A = v*B, from the integer kernel of [A^T | -B^T]."""
    from sympy import Matrix

    A = Matrix(a)
    B = Matrix(b)
    M = A.T.row_join(-B.T)        # columns: coefficients of rows of A, B
    null = M.nullspace()
    out = []
    for vec in null:
        denom = 1
        for x in vec:
            denom = denom * int(x.q) // _gcd(denom, int(x.q))
        ints = [int(x * denom) for x in vec]
        u = ints[:A.rows]
        w = [0] * A.cols
        for coef, row in zip(u, a):
            for j in range(A.cols):
                w[j] += coef * row[j]
        out.append(w)
    return out


def _gcd(x, y):
    from math import gcd
    return gcd(x, y)


class HomologyBasis:
    """A geometric symplectic basis and the pairing it induces."""

    def __init__(self, surface, basis_curves):
        self.surface = surface
        self.curves = list(basis_curves)
        n = len(self.curves)
        self.form = [[algebraic_crossing_sum(self.curves[i], self.curves[j])
                      for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                if self.form[i][j] != -self.form[j][i]:
                    raise CurveError("intersection form is not antisymmetric")
        self.form_inv_t = _mat_inv([list(r) for r in zip(*self.form)])

    @property
    def rank(self):
        return len(self.curves)

    def class_of(self, c: NormalMulticurve) -> HomologyClass:
        """Homology class from pairings against the basis; the sign
        depends on the stored orientation of c's word."""
        pair = [algebraic_crossing_sum(c, b) for b in self.curves]
        vec = tuple(sum(self.form_inv_t[i][j] * pair[j] for j in range(self.rank))
                    for i in range(self.rank))
        return HomologyClass(vec)

    def pairing(self, x: HomologyClass, y: HomologyClass) -> int:
        return sum(x.vector[i] * self.form[i][j] * y.vector[j]
                   for i in range(self.rank) for j in range(self.rank))

    def transvection(self, t_class: HomologyClass, k: int,
                     x: HomologyClass) -> HomologyClass:
        """Homology action of the k-fold twist about a curve with class
        t: x + k <x, t> t."""
        c = k * self.pairing(x, t_class)
        return HomologyClass(tuple(
            x.vector[i] + c * t_class.vector[i] for i in range(self.rank)))

    def transvection_matrix(self, t_class: HomologyClass, k: int):
        n = self.rank
        cols = []
        for j in range(n):
            e = HomologyClass(tuple(int(i == j) for i in range(n)))
            cols.append(self.transvection(t_class, k, e).vector)
        return [[cols[j][i] for j in range(n)] for i in range(n)]
