"""Truncated q/zeta expansions with exact rational coefficients.

A :class:`QZSeries` on a lattice ``L`` of rank ``l`` stores terms

    c * q^(n24/24) * e^(2 pi i <l, z>),   <l, b_i> = d_i,

where ``d`` is half-integral. Internally each q-level is a sparse Laurent
polynomial ``{key: coeff}`` whose key packs the doubled vector ``2d`` into
one integer with balanced base-``2**24`` digits, so multiplying monomials
is integer addition. Terms with ``n24 >= trunc24`` are unknown, not zero.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    DimensionMismatch,
    IntegralityError,
    LatticeMismatch,
    NotDivisible,
    ResourceCapExceeded,
)
from .lattice import Lattice, canon, det, dual_action, mat_vec

BITS = 24
BASE = 1 << BITS
HALF_BASE = BASE >> 1
MASK = BASE - 1

DEFAULT_MAX_TERMS = 5_000_000

POINT = Lattice((), 1, "point")  # rank-0 lattice for pure q-series


def pack(d2: Sequence[int]) -> int:
    k = 0
    for x in reversed(d2):
        if not -HALF_BASE < x < HALF_BASE:
            raise OverflowError("exponent out of packing range")
        k = k * BASE + x
    return k


def unpack(k: int, rank: int) -> tuple:
    out = []
    for _ in range(rank):
        r = k & MASK
        if r >= HALF_BASE:
            r -= BASE
        out.append(r)
        k = (k - r) >> BITS
    return tuple(out)


def _cdiv(a, b):
    if isinstance(a, int) and isinstance(b, int) and a % b == 0:
        return a // b
    return canon(Fraction(a) / b)


def _to_d2(d: Sequence) -> tuple:
    out = []
    for x in d:
        y = Fraction(x) * 2
        if y.denominator != 1:
            raise IntegralityError(f"exponent {x} is not half-integral")
        out.append(int(y))
    return tuple(out)


def _from_d2(d2: Sequence[int]) -> tuple:
    return tuple(x // 2 if x % 2 == 0 else Fraction(x, 2) for x in d2)


# ---------------------------------------------------------------------------
# sparse Laurent polynomials on packed keys


def lp_add_into(acc: dict, other: Mapping, scale=1) -> dict:
    for k, c in other.items():
        v = acc.get(k, 0) + scale * c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)
    return acc


def lp_mul(a: Mapping, b: Mapping) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for kb, cb in b.items():
        for ka, ca in a.items():
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


def _grlex(e: tuple):
    return (sum(e), e)


def lp_divexact(f: Mapping, g: Mapping, rank: int) -> dict:
    """Exact quotient ``f / g`` of Laurent polynomials, or :class:`NotDivisible`.

    Both are shifted by monomials into ordinary polynomials with ``g`` free of
    monomial factors; the quotient is then a polynomial and plain division
    with respect to graded lex order either terminates with zero remainder or
    meets a non-divisible leading term.
    """
    if not g:
        raise NotDivisible("division by the zero polynomial")
    if not f:
        return {}
    if len(g) == 1:
        (kg, cg), = g.items()
        return {k - kg: _cdiv(c, cg) for k, c in f.items()}
    fe = {unpack(k, rank): c for k, c in f.items()}
    ge = {unpack(k, rank): c for k, c in g.items()}
    fmin = tuple(min(e[i] for e in fe) for i in range(rank))
    gmin = tuple(min(e[i] for e in ge) for i in range(rank))
    fs = {tuple(x - m for x, m in zip(e, fmin)): c for e, c in fe.items()}
    gs = [(tuple(x - m for x, m in zip(e, gmin)), c) for e, c in ge.items()]
    lt, lc = max(gs, key=lambda t: _grlex(t[0]))
    heap = [(-sum(e), tuple(-x for x in e)) for e in fs]
    heapq.heapify(heap)
    quot = {}
    while heap:
        s, ne = heapq.heappop(heap)
        e = tuple(-x for x in ne)
        c = fs.pop(e, 0)
        if not c:
            continue
        shift = tuple(x - y for x, y in zip(e, lt))
        if min(shift, default=0) < 0:
            raise NotDivisible("leading term not divisible by the divisor's leading term")
        qc = _cdiv(c, lc)
        quot[shift] = qc
        for ge_, gc in gs:
            if ge_ == lt:
                continue
            key = tuple(a + b for a, b in zip(shift, ge_))
            v = fs.get(key, 0) - qc * gc
            if v:
                if key not in fs:
                    heapq.heappush(heap, (-sum(key), tuple(-x for x in key)))
                fs[key] = v
            else:
                fs.pop(key, None)
    off = tuple(a - b for a, b in zip(fmin, gmin))
    return {pack(tuple(x + o for x, o in zip(e, off))): canon(c) for e, c in quot.items()}


# ---------------------------------------------------------------------------


class QZSeries:
    """Truncated bivariate expansion on a lattice (see module docstring)."""

    __slots__ = ("lattice", "levels", "trunc24")

    def __init__(self, lattice: Lattice, levels: Mapping | None = None, trunc24: int = 0):
        self.lattice = lattice
        self.trunc24 = int(trunc24)
        lv = {}
        for n, poly in (levels or {}).items():
            if n >= self.trunc24:
                continue
            poly = {k: c for k, c in poly.items() if c}
            if poly:
                lv[int(n)] = poly
        self.levels = lv

    # -- construction -------------------------------------------------------

    @classmethod
    def from_terms(cls, lattice: Lattice, terms: Mapping | Iterable, trunc24: int) -> "QZSeries":
        """Build from ``{(n24, d): coeff}`` (or an iterable of such triples)."""
        items = terms.items() if isinstance(terms, Mapping) else ((k[:2], k[2]) if len(k) == 3 else k for k in terms)
        levels: dict = {}
        for (n24, d), c in items:
            if len(d) != lattice.rank:
                raise DimensionMismatch(f"d-vector {d} for rank {lattice.rank}")
            poly = levels.setdefault(int(n24), {})
            k = pack(_to_d2(d))
            v = poly.get(k, 0) + canon(c)
            if v:
                poly[k] = v
            else:
                poly.pop(k, None)
        return cls(lattice, levels, trunc24)

    @classmethod
    def constant(cls, lattice: Lattice, c, trunc24: int) -> "QZSeries":
        return cls(lattice, {0: {0: canon(c)}} if c else {}, trunc24)

    @classmethod
    def zero(cls, lattice: Lattice, trunc24: int) -> "QZSeries":
        return cls(lattice, {}, trunc24)

    # -- accessors ------------------------------------------------------------

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def is_zero(self) -> bool:
        return not self.levels

    def __len__(self):
        return sum(len(p) for p in self.levels.values())

    @property
    def valuation(self) -> int:
        """Smallest stored n24, or ``trunc24`` for the zero series."""
        return min(self.levels) if self.levels else self.trunc24

    def items(self) -> Iterator[tuple]:
        """Yield ``(n24, d2, coeff)`` with doubled d-vectors, in sorted order."""
        r = self.rank
        for n in sorted(self.levels):
            for d2, c in sorted((unpack(k, r), c) for k, c in self.levels[n].items()):
                yield n, d2, c

    @property
    def terms(self) -> dict:
        return {(n, _from_d2(d2)): c for n, d2, c in self.items()}

    def coefficient(self, n24: int, d: Sequence):
        if len(d) != self.rank:
            raise DimensionMismatch(f"d-vector {d} for rank {self.rank}")
        return self.levels.get(n24, {}).get(pack(_to_d2(d)), 0)

    def q0_term(self) -> dict:
        """The q^0 Laurent polynomial as ``{d: coeff}``."""
        r = self.rank
        return {_from_d2(unpack(k, r)): c for k, c in sorted(self.levels.get(0, {}).items())}

    def level(self, n24: int) -> dict:
        r = self.rank
        return {_from_d2(unpack(k, r)): c for k, c in self.levels.get(n24, {}).items()}

    def is_z_independent(self) -> bool:
        return all(set(p) == {0} for p in self.levels.values())

    def has_integral_exponents(self) -> bool:
        """q-exponents integral and d-vectors in the dual lattice (d integral)."""
        if any(n % 24 for n in self.levels):
            return False
        r = self.rank
        return all(all(x % 2 == 0 for x in unpack(k, r)) for p in self.levels.values() for k in p)

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other: "QZSeries"):
        if not isinstance(other, QZSeries):
            raise TypeError(f"expected QZSeries, got {type(other).__name__}")
        if other.lattice != self.lattice:
            raise LatticeMismatch(f"{self.lattice!r} vs {other.lattice!r}")

    def copy(self) -> "QZSeries":
        return QZSeries(self.lattice, {n: dict(p) for n, p in self.levels.items()}, self.trunc24)

    def truncate(self, trunc24: int) -> "QZSeries":
        if trunc24 > self.trunc24:
            raise ValueError(f"cannot extend truncation {self.trunc24} to {trunc24}")
        return QZSeries(self.lattice, {n: dict(p) for n, p in self.levels.items() if n < trunc24}, trunc24)

    def __neg__(self):
        return QZSeries(self.lattice, {n: {k: -c for k, c in p.items()} for n, p in self.levels.items()}, self.trunc24)

    def scale(self, c) -> "QZSeries":
        c = canon(c)
        if not c:
            return QZSeries.zero(self.lattice, self.trunc24)
        return QZSeries(self.lattice, {n: {k: canon(v * c) for k, v in p.items()} for n, p in self.levels.items()}, self.trunc24)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, other, -1)

    def __mul__(self, other):
        if isinstance(other, QZSeries):
            return mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers: use exact_divide")
        if e == 0:
            return QZSeries.constant(self.lattice, 1, self.trunc24)
        out = None
        base = self
        while e:
            if e & 1:
                out = base if out is None else mul(out, base)
            e >>= 1
            if e:
                base = mul(base, base)
        return out

    def __eq__(self, other):
        if not isinstance(other, QZSeries):
            return NotImplemented
        return self.lattice == other.lattice and self.trunc24 == other.trunc24 and self.levels == other.levels

    def agrees_with(self, other: "QZSeries") -> bool:
        """Coefficientwise equality below the smaller truncation."""
        self._check(other)
        t = min(self.trunc24, other.trunc24)
        a = {n: p for n, p in self.levels.items() if n < t}
        b = {n: p for n, p in other.levels.items() if n < t}
        return a == b

    def ratio_to(self, other: "QZSeries"):
        """The rational c with ``self == c * other`` below the common truncation, else None."""
        self._check(other)
        t = min(self.trunc24, other.trunc24)
        a = {(n, k): c for n, p in self.levels.items() if n < t for k, c in p.items()}
        b = {(n, k): c for n, p in other.levels.items() if n < t for k, c in p.items()}
        if set(a) != set(b) or not a:
            return None
        key = next(iter(a))
        c = canon(Fraction(a[key]) / b[key])
        return c if all(a[k] == c * b[k] for k in a) else None

    def __repr__(self):
        return f"QZSeries(rank={self.rank}, terms={len(self)}, trunc24={self.trunc24})"

    # -- z-side operations -----------------------------------------------------

    def lift(self, lattice: Lattice) -> "QZSeries":
        """Embed a z-independent series into another lattice."""
        if not self.is_z_independent():
            raise ValueError("only z-independent series can be lifted")
        return QZSeries(lattice, {n: dict(p) for n, p in self.levels.items()}, self.trunc24)

    def map_d(self, lattice: Lattice, fn) -> "QZSeries":
        """Apply ``fn`` (doubled d-vector -> doubled d-vector) to every monomial."""
        r = self.rank
        levels = {}
        for n, p in self.levels.items():
            out: dict = {}
            for k, c in p.items():
                nk = pack(fn(unpack(k, r)))
                v = out.get(nk, 0) + c
                out[nk] = v
            levels[n] = out
        return QZSeries(lattice, levels, self.trunc24)

    def substitute(self, lattice: Lattice, direction: Sequence[int]) -> "QZSeries":
        """Rank-1 series in a variable w, pulled back along w = <direction-dual, z>.

        A monomial with exponent ``d`` becomes the vector ``d * direction``.
        """
        if self.rank != 1:
            raise DimensionMismatch("substitute expects a one-variable series")
        if len(direction) != lattice.rank:
            raise DimensionMismatch("direction length differs from target rank")
        direction = [int(x) for x in direction]
        return self.map_d(lattice, lambda d2: tuple(d2[0] * x for x in direction))

    def embed(self, lattice: Lattice, axes: Sequence[int]) -> "QZSeries":
        """Place the coordinates of this series at positions ``axes`` of ``lattice``."""
        if len(axes) != self.rank:
            raise DimensionMismatch("one axis per source coordinate")
        n = lattice.rank

        def fn(d2):
            out = [0] * n
            for a, x in zip(axes, d2):
                out[a] = x
            return tuple(out)

        return self.map_d(lattice, fn)

    def act(self, dual_matrix) -> "QZSeries":
        """Apply an integer matrix to every d-vector (dual-coordinate action)."""
        return self.map_d(self.lattice, lambda d2: mat_vec(dual_matrix, d2))


# ---------------------------------------------------------------------------
# module-level operations


def add(f: QZSeries, g: QZSeries, sign=1) -> QZSeries:
    f._check(g)
    t = min(f.trunc24, g.trunc24)
    levels = {n: dict(p) for n, p in f.levels.items() if n < t}
    for n, p in g.levels.items():
        if n < t:
            lp_add_into(levels.setdefault(n, {}), p, sign)
    return QZSeries(f.lattice, levels, t)


def product_trunc(f: QZSeries, g: QZSeries) -> int:
    """Truncation of ``f * g``; reduces to min(trunc f, trunc g) for valuations >= 0."""
    return min(f.trunc24 + min(g.valuation, 0), g.trunc24 + min(f.valuation, 0))


def mul(f: QZSeries, g: QZSeries, max_terms: int | None = None) -> QZSeries:
    f._check(g)
    t = product_trunc(f, g)
    cap = DEFAULT_MAX_TERMS if max_terms is None else max_terms
    levels: dict = {}
    count = 0
    for nf, pf in f.levels.items():
        for ng, pg in g.levels.items():
            n = nf + ng
            if n >= t:
                continue
            prod = lp_mul(pf, pg)
            if n in levels:
                lp_add_into(levels[n], prod)
            else:
                levels[n] = prod
            count += len(prod)
            if count > cap:
                raise ResourceCapExceeded(f"product exceeds {cap} terms")
    return QZSeries(f.lattice, levels, t)


def dz(f: QZSeries, i: int) -> QZSeries:
    """Normalized derivative (2 pi i)^-1 d/dz_i: multiply each term by d_i.

    ``i`` is 0-based here.
    """
    r = f.rank
    if not 0 <= i < r:
        raise DimensionMismatch(f"axis {i} outside rank {r}")
    levels = {}
    for n, p in f.levels.items():
        out = {}
        for k, c in p.items():
            x = unpack(k, r)[i]
            if x:
                out[k] = canon(Fraction(c) * x / 2) if x % 2 else c * (x // 2)
        levels[n] = out
    return QZSeries(f.lattice, levels, f.trunc24)


def exact_divide(f: QZSeries, g: QZSeries) -> QZSeries:
    """``h`` with ``h * g == f`` to the deliverable truncation.

    Computed order by order in q: if ``g`` starts at level ``v`` with
    Laurent coefficient ``g_v``, then
    ``h_n = (f_{n+v} - sum_{k>0} g_{v+k} h_{n-k}) / g_v`` with each division
    exact (else :class:`NotDivisible`).
    """
    f._check(g)
    if g.is_zero():
        raise NotDivisible("division by the zero series")
    r = f.rank
    v = g.valuation
    g0 = g.levels[v]
    if f.is_zero():
        return QZSeries.zero(f.lattice, f.trunc24 - v)
    vf = f.valuation
    t = min(f.trunc24 - v, g.trunc24 - 2 * v + vf)
    higher = sorted((n - v, p) for n, p in g.levels.items() if n > v)
    h: dict = {}
    for n in range(vf - v, t):
        resid = dict(f.levels.get(n + v, {}))
        for k, gk in higher:
            hm = h.get(n - k)
            if hm:
                lp_add_into(resid, lp_mul(gk, hm), -1)
        if resid:
            h[n] = lp_divexact(resid, g0, r)
    return QZSeries(f.lattice, h, t)


def divide_by_factors(f: QZSeries, factors: Iterable[QZSeries]) -> QZSeries:
    """Exact division by a product given as its factors, one at a time."""
    for g in factors:
        if f.is_zero():
            return QZSeries.zero(f.lattice, f.trunc24 - g.valuation)
        f = exact_divide(f, g)
    return f


# ---------------------------------------------------------------------------
# Jacobi forms

TRIVIAL = "trivial"
DETERMINANT = "det"


def _char_mul(a: str, b: str) -> str:
    return TRIVIAL if (a == DETERMINANT) == (b == DETERMINANT) else DETERMINANT


@dataclass(frozen=True)
class JacobiForm:
    """A validated weak Jacobi form: integral exponents, q-valuation >= 0.

    ``group`` holds generator matrices acting on lattice coordinates;
    ``group_name`` is informational (usually the root system tag).
    """

    series: QZSeries
    weight: int
    index: int
    character: str = TRIVIAL
    group: tuple = ()
    group_name: str = ""
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if self.character not in (TRIVIAL, DETERMINANT):
            raise ValueError(f"unknown character {self.character!r}")
        if self.index < 0:
            raise ValueError("index must be nonnegative")
        s = self.series
        if s.levels and min(s.levels) < 0:
            raise IntegralityError("weak Jacobi forms have no negative q-powers")
        if not s.has_integral_exponents():
            raise IntegralityError("fractional q- or zeta-exponents in a Jacobi form")

    @property
    def lattice(self) -> Lattice:
        return self.series.lattice

    @property
    def trunc24(self) -> int:
        return self.series.trunc24

    @property
    def q_order(self) -> int:
        return self.series.trunc24 // 24

    def with_series(self, series: QZSeries, **kw) -> "JacobiForm":
        args = dict(weight=self.weight, index=self.index, character=self.character, group=self.group, group_name=self.group_name)
        args.update(kw)
        return JacobiForm(series, **args)

    def __mul__(self, other):
        if isinstance(other, JacobiForm):
            return JacobiForm(
                mul(self.series, other.series),
                self.weight + other.weight,
                self.index + other.index,
                _char_mul(self.character, other.character),
                self.group or other.group,
                self.group_name or other.group_name,
            )
        return self.with_series(self.series.scale(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self.with_series(-self.series)

    def _same_space(self, other: "JacobiForm"):
        if (self.weight, self.index) != (other.weight, other.index):
            if not (self.series.is_zero() or other.series.is_zero()):
                raise ValueError("adding forms of different weight/index")

    def __add__(self, other: "JacobiForm"):
        self._same_space(other)
        return self.with_series(self.series + other.series)

    def __sub__(self, other: "JacobiForm"):
        self._same_space(other)
        return self.with_series(self.series - other.series)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers: use exact_divide")
        if e == 0:
            return self.with_series(self.series ** 0, weight=0, index=0, character=TRIVIAL)
        out = self
        for _ in range(e - 1):
            out = out * self
        return out

    def truncate(self, trunc24: int) -> "JacobiForm":
        return self.with_series(self.series.truncate(trunc24))

    def __repr__(self):
        name = f"{self.label} " if self.label else ""
        return f"JacobiForm({name}k={self.weight}, t={self.index}, {self.character}, {self.series!r})"


def lift_modular(f: QZSeries, lattice: Lattice) -> QZSeries:
    return f.lift(lattice)


# ---------------------------------------------------------------------------
# coefficient-level checks


@dataclass
class Report:
    check: str
    passed: bool
    checked: int = 0
    violations: list = field(default_factory=list)
    note: str = ""

    def __bool__(self):
        return self.passed

    def lines(self, limit: int = 10):
        yield f"{self.check}: {'PASS' if self.passed else 'FAIL'} ({self.checked} relations checked){' ' + self.note if self.note else ''}"
        for v in self.violations[:limit]:
            yield f"  violation: {v}"


def _short_shifts(gram, center, rho):
    """Integer x with (x + center)^T G (x + center) <= rho (Fincke-Pohst).

    Floating bounds are widened slightly; callers filter exactly.
    """
    n = len(gram)
    # LDL^T-style decomposition: Q(y) = sum_i q[i][i] * (y_i + sum_{j>i} q[i][j] y_j)^2
    q = [[float(x) for x in row] for row in gram]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for j in range(k, n):
                q[k][j] -= q[k][i] * q[i][j]
    c = [float(x) for x in center]
    eps = 1e-7 * (1 + abs(rho))
    out = []
    x = [0] * n

    def rec(i, remaining):
        # y_i = x_i + c_i; shift from coordinates already fixed (j > i)
        s = sum(q[i][j] * (x[j] + c[j]) for j in range(i + 1, n))
        if remaining < -eps:
            return
        w = math.sqrt(max(remaining, 0.0) / q[i][i]) + 1e-9
        lo = math.ceil(-w - s - c[i] - 1e-9)
        hi = math.floor(w - s - c[i] + 1e-9)
        for xi in range(lo, hi + 1):
            x[i] = xi
            t = xi + c[i] + s
            r = remaining - q[i][i] * t * t
            if i == 0:
                if r >= -eps:
                    out.append(tuple(x))
            else:
                rec(i - 1, r)
        x[i] = 0

    if n == 0:
        return [()]
    rec(n - 1, float(rho))
    return out


def check_elliptic(form: JacobiForm, limit: int | None = None) -> Report:
    """Verify f(n, l) = f(n', l + t x) on all related pairs inside the truncation.

    For x in L, n' = n + <x, l> + t <x, x> / 2. A partner with n' < 0 forces
    f(n, l) = 0 (weak forms have no negative q-powers). Index 0 forms must be
    z-independent.
    """
    s = form.series
    t = form.index
    L = s.lattice
    if t == 0:
        ok = s.is_z_independent()
        return Report("elliptic", ok, len(s), [] if ok else ["index-0 form depends on z"], "index 0")
    G = L.gram_normalized
    Ginv = L.gram_inverse
    N = s.trunc24 // 24
    r = s.rank
    table = {}
    for n24, d2, c in s.items():
        table[(n24 // 24, tuple(x // 2 for x in d2))] = c
    violations = []
    checked = 0
    for (n, d), c in table.items():
        center = tuple(Fraction(x, t) for x in mat_vec(Ginv, d))
        dn = canon(sum(a * b for a, b in zip(d, mat_vec(Ginv, d))))
        rho = Fraction(2 * (N - n), t) + Fraction(dn) / (t * t)
        for x in _short_shifts(G, center, rho):
            if not any(x):
                continue
            gx = mat_vec(G, x)
            n2 = n + sum(a * b for a, b in zip(x, d)) + t * sum(a * b for a, b in zip(x, gx)) // 2
            if n2 >= N:
                continue
            checked += 1
            d2 = tuple(a + t * b for a, b in zip(d, gx))
            c2 = table.get((n2, d2), 0) if n2 >= 0 else 0
            if c2 != c:
                violations.append(((n, d), (n2, d2), c, c2))
                if limit and len(violations) >= limit:
                    return Report("elliptic", False, checked, violations)
    return Report("elliptic", not violations, checked, violations)


def check_group_invariance(form: JacobiForm, generators: Sequence | None = None) -> Report:
    """Verify f(n, sigma l) = det(sigma)^eps f(n, l) for each generator sigma."""
    s = form.series
    gens = form.group if generators is None else generators
    eps = 1 if form.character == DETERMINANT else 0
    violations = []
    checked = 0
    r = s.rank
    for sigma in gens:
        sign = det(sigma) ** eps
        m = dual_action(s.lattice, sigma)
        for n, p in s.levels.items():
            for k, c in p.items():
                k2 = pack(mat_vec(m, unpack(k, r)))
                checked += 1
                if p.get(k2, 0) != sign * c:
                    violations.append((n, unpack(k, r), c, p.get(k2, 0)))
    note = "" if gens else "no generators"
    return Report("invariance", not violations, checked, violations, note)


def validate(form: JacobiForm) -> list:
    return [check_elliptic(form), check_group_invariance(form)]
