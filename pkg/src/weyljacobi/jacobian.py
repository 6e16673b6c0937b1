"""Jacobian of l+1 Jacobi forms and the cofactor family of l+2 forms.

The determinant has first row ``m_j phi_j`` and rows ``D_i phi_j`` with the
normalized derivative ``D_i = (2 pi i)^-1 d/dz_i``; with that normalization
the result is the classical Jacobian times ``(2 pi i)^-l``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatch, LatticeMismatch
from .series import DETERMINANT, TRIVIAL, JacobiForm, QZSeries, add, dz, mul


def _check_inputs(forms: Sequence[JacobiForm], extra: int) -> int:
    if not forms:
        raise DimensionMismatch("no forms given")
    L = forms[0].lattice
    l = L.rank
    if len(forms) != l + extra:
        raise DimensionMismatch(f"expected {l + extra} forms on a rank-{l} lattice, got {len(forms)}")
    for f in forms:
        if f.lattice != L:
            raise LatticeMismatch(f"{f.lattice!r} vs {L!r}")
    chars = {f.character for f in forms}
    if len(chars) != 1:
        raise ValueError("forms must share a character")
    return l


class _Minors:
    """Memoized minors of the derivative rows, keyed by column bitmask."""

    def __init__(self, forms: Sequence[JacobiForm], max_terms=None):
        self.l = forms[0].lattice.rank
        self.trunc = min(f.trunc24 for f in forms)
        self.L = forms[0].lattice
        self.max_terms = max_terms
        self.rows = [[dz(f.series, i) for f in forms] for i in range(self.l)]
        self.cache: dict = {}

    def get(self, i: int, cols: int) -> QZSeries:
        """Determinant of derivative rows i..l-1 restricted to columns ``cols``."""
        if i == self.l:
            return QZSeries.constant(self.L, 1, self.trunc)
        key = (i, cols)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        acc = QZSeries.zero(self.L, self.trunc)
        pos = 0
        j = 0
        c = cols
        while c:
            if c & 1:
                entry = self.rows[i][j]
                if not entry.is_zero():
                    sub = self.get(i + 1, cols & ~(1 << j))
                    if not sub.is_zero():
                        acc = add(acc, mul(entry, sub, self.max_terms), -1 if pos % 2 else 1)
                pos += 1
            c >>= 1
            j += 1
        self.cache[key] = acc
        return acc


def _expand(forms: Sequence[JacobiForm], cols: Sequence[int], minors: _Minors) -> QZSeries:
    mask = 0
    for j in cols:
        mask |= 1 << j
    acc = QZSeries.zero(minors.L, minors.trunc)
    for pos, j in enumerate(cols):
        f = forms[j]
        if f.index == 0 or f.series.is_zero():
            continue
        sub = minors.get(0, mask & ~(1 << j))
        if sub.is_zero():
            continue
        term = mul(f.series, sub, minors.max_terms).scale(f.index)
        acc = add(acc, term, -1 if pos % 2 else 1)
    return acc


def _result(forms: Sequence[JacobiForm], series: QZSeries, label: str) -> JacobiForm:
    l = forms[0].lattice.rank
    char = DETERMINANT if forms[0].character == TRIVIAL else TRIVIAL
    return JacobiForm(
        series,
        l + sum(f.weight for f in forms),
        sum(f.index for f in forms),
        char,
        forms[0].group,
        forms[0].group_name,
        label=label,
    )


def jacobian(forms: Sequence[JacobiForm], max_terms: int | None = None) -> JacobiForm:
    """J(phi_1, ..., phi_{l+1}): weight l + sum k_j, index sum m_j, det character."""
    l = _check_inputs(forms, 1)
    minors = _Minors(forms, max_terms)
    series = _expand(forms, list(range(l + 1)), minors)
    return _result(forms, series, "J")


def cofactor_jacobians(forms: Sequence[JacobiForm], max_terms: int | None = None) -> list:
    """[J_1, ..., J_{l+2}] where J_t omits the t-th form; minors are shared."""
    l = _check_inputs(forms, 2)
    minors = _Minors(forms, max_terms)
    out = []
    for t in range(l + 2):
        cols = [j for j in range(l + 2) if j != t]
        sub = [forms[j] for j in cols]
        out.append(_result(sub, _expand(forms, cols, minors), f"J_{t + 1}"))
    return out


def syzygy(forms: Sequence[JacobiForm], cofactors: Sequence[JacobiForm] | None = None) -> QZSeries:
    """sum_t (-1)^t m_t phi_t J_t (1-based t); identically zero."""
    js = cofactor_jacobians(forms) if cofactors is None else cofactors
    acc = None
    for t, (f, j) in enumerate(zip(forms, js), start=1):
        term = mul(f.series, j.series).scale((-1) ** t * f.index)
        acc = term if acc is None else add(acc, term)
    return acc


@dataclass
class IndependenceReport:
    independent: bool
    status: str
    jacobian: JacobiForm

    def __bool__(self):
        return self.independent


def is_algebraically_independent(forms: Sequence[JacobiForm], max_terms: int | None = None) -> IndependenceReport:
    """Nonzero Jacobian certifies independence; a zero truncation proves nothing."""
    J = jacobian(forms, max_terms)
    if J.series.is_zero():
        return IndependenceReport(False, "dependent or truncation-inconclusive", J)
    return IndependenceReport(True, "independent (certified)", J)
