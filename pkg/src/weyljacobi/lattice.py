"""Even positive definite lattices, exact linear algebra, reflections.

Vectors are tuples of ints or :class:`~fractions.Fraction`; matrices are
tuples of row tuples. Nothing here uses floating point.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch

Vector = tuple
Matrix = tuple


def canon(x):
    """Return ``x`` as an int when it is integral, else as a Fraction."""
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def vec(xs: Iterable) -> Vector:
    return tuple(canon(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> Matrix:
    return tuple(vec(r) for r in rows)


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise DimensionMismatch(f"length {len(u)} vs {len(v)}")
    return canon(sum(a * b for a, b in zip(u, v)))


def mat_vec(m: Matrix, v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(dot(row, c) for c in cols) for row in a)


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def det(m: Matrix):
    """Determinant by fraction-exact Gaussian elimination."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    sign = 1
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    out = Fraction(sign)
    for i in range(n):
        out *= a[i][i]
    return canon(out)


def solve(m: Matrix, rhs: Sequence) -> Vector:
    """Solve ``m x = rhs`` for square invertible ``m``."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(m)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return vec(row[n] for row in a)


def inverse(m: Matrix) -> Matrix:
    """Gauss-Jordan inverse of a square invertible matrix."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return mat(row[n:] for row in a)


def is_positive_definite(m: Matrix) -> bool:
    # Sylvester's criterion on leading principal minors.
    return all(det(tuple(row[:k] for row in m[:k])) > 0 for k in range(1, len(m) + 1))


@dataclass(frozen=True)
class Lattice:
    """An even positive definite lattice given by its Gram data.

    ``gram_normalized`` is the even form used for Jacobi forms;
    ``gram_standard`` is the root-system form, and
    ``gram_normalized == scale * gram_standard``.
    """

    gram_standard: Matrix
    scale: int = 1
    name: str = ""

    def __post_init__(self):
        g = mat(self.gram_standard)
        object.__setattr__(self, "gram_standard", g)
        n = len(g)
        if any(len(row) != n for row in g):
            raise DimensionMismatch("Gram matrix must be square")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise ValueError("Gram matrix must be symmetric")
        if self.scale not in (1, 2):
            raise ValueError("scale must be 1 or 2")
        gn = mat((self.scale * x for x in row) for row in g)
        if any(not isinstance(x, int) for row in gn for x in row):
            raise ValueError("normalized Gram matrix is not integral")
        if any(gn[i][i] % 2 for i in range(n)):
            raise ValueError("normalized Gram matrix has odd diagonal")
        if not is_positive_definite(gn):
            raise ValueError("Gram matrix is not positive definite")
        object.__setattr__(self, "_gram", gn)
        object.__setattr__(self, "_gram_inv", inverse(gn))

    @classmethod
    def from_standard(cls, gram_standard: Matrix, name: str = "") -> "Lattice":
        """Rescale by 2 exactly when the standard form has an odd diagonal entry."""
        g = mat(gram_standard)
        odd = any(not isinstance(g[i][i], int) or g[i][i] % 2 for i in range(len(g)))
        return cls(g, 2 if odd else 1, name)

    @classmethod
    def from_normalized(cls, gram: Matrix, name: str = "") -> "Lattice":
        return cls(gram, 1, name)

    @property
    def rank(self) -> int:
        return len(self.gram_standard)

    @property
    def gram_normalized(self) -> Matrix:
        return self._gram

    @property
    def gram_inverse(self) -> Matrix:
        """Inverse of the normalized Gram matrix (the dual-lattice form)."""
        return self._gram_inv

    def tag(self) -> str:
        return self.name or "gram:" + ";".join(",".join(str(x) for x in r) for r in self._gram)

    def __repr__(self):
        return f"Lattice({self.tag()}, rank={self.rank}, scale={self.scale})"


def pairing(L: Lattice, u: Sequence, v: Sequence, form: str = "normalized"):
    """Exact value of the bilinear form on lattice-basis coordinate vectors."""
    if len(u) != L.rank or len(v) != L.rank:
        raise DimensionMismatch(f"expected vectors of length {L.rank}")
    if form == "normalized":
        g = L.gram_normalized
    elif form == "standard":
        g = L.gram_standard
    else:
        raise ValueError(f"unknown form {form!r}")
    return dot(u, mat_vec(g, v))


def dual_norm(L: Lattice, d: Sequence):
    """<l, l> for the dual vector l with <l, b_i> = d_i."""
    return dot(d, mat_vec(L.gram_inverse, d))


def coroot(r: Sequence, gram: Matrix | None = None) -> Vector:
    """``2 r / (r, r)``; ``gram`` defaults to the identity (ambient coordinates)."""
    rr = dot(r, r) if gram is None else dot(r, mat_vec(gram, r))
    if rr == 0:
        raise ValueError("coroot of the zero vector")
    return vec(Fraction(2 * x) / rr for x in r)


def reflection(r: Sequence, gram: Matrix) -> Matrix:
    """Matrix (acting on coordinate columns) of v -> v - 2<r,v>/<r,r> r."""
    gr = mat_vec(gram, r)
    rr = dot(r, gr)
    if rr == 0:
        raise ValueError("reflection in the zero vector")
    n = len(r)
    return mat(
        (int(i == j) - Fraction(2 * r[i] * gr[j]) / rr for j in range(n)) for i in range(n)
    )


def orbit(generators: Sequence[Matrix], v: Sequence, limit: int | None = None) -> set:
    """Breadth-first closure of ``{v}`` under the given matrices."""
    return orbit_union(generators, [v], limit)


def orbit_union(generators: Sequence[Matrix], seeds: Iterable[Sequence], limit: int | None = None) -> set:
    """Union of the orbits of ``seeds``, in one breadth-first pass."""
    sparse = [[tuple((j, a) for j, a in enumerate(row) if a) for row in g] for g in generators]
    integral = all(isinstance(a, int) for g in generators for row in g for a in row)
    seen = set()
    todo = deque()
    for v in seeds:
        x = vec(v)
        if x not in seen:
            seen.add(x)
            todo.append(x)
    while todo:
        x = todo.popleft()
        for rows in sparse:
            if integral and all(isinstance(c, int) for c in x):
                y = tuple(sum(a * x[j] for j, a in row) for row in rows)
            else:
                y = tuple(canon(sum(a * x[j] for j, a in row)) for row in rows)
            if y not in seen:
                seen.add(y)
                if limit is not None and len(seen) > limit:
                    raise OverflowError(f"orbit exceeds {limit} elements")
                todo.append(y)
    return seen


def group_closure(generators: Sequence[Matrix], limit: int = 100000) -> set:
    """All products of the generators (finite groups only)."""
    n = len(generators[0])
    e = identity(n)
    seen = {e}
    todo = deque([e])
    while todo:
        x = todo.popleft()
        for g in generators:
            y = mat_mul(g, x)
            if y not in seen:
                seen.add(y)
                if len(seen) > limit:
                    raise OverflowError(f"group exceeds {limit} elements")
                todo.append(y)
    return seen


def dual_action(L: Lattice, sigma: Matrix) -> Matrix:
    """Action of ``sigma`` on dual coordinates d_i = <l, b_i>.

    For sigma in O(L), <sigma l, b_i> = <l, sigma^{-1} b_i>, so the matrix is
    ``(sigma^{-1})^T = G sigma G^{-1}``.
    """
    return mat_mul(mat_mul(L.gram_normalized, sigma), L.gram_inverse)
