"""Concrete series: eta, theta, Eisenstein series, theta blocks, generators."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .errors import IntegralityError, TruncationExhausted
from .lattice import Lattice, canon
from .rootsystems import RootSystemData, catalog
from .series import (
    DETERMINANT,
    POINT,
    TRIVIAL,
    JacobiForm,
    QZSeries,
    exact_divide,
    mul,
    pack,
)

A1_LATTICE: Lattice = catalog("A1").lattice


def _sigma(n: int, k: int) -> int:
    s = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            s += d**k
            e = n // d
            if e != d:
                s += e**k
        d += 1
    return s


def euler_power(p: int, count: int) -> list:
    """Coefficients of prod_{n>=1} (1 - q^n)^p up to q^(count-1).

    Uses n a_n = -p sum_{m=1}^{n} sigma(m) a_{n-m}; works for negative p.
    """
    a = [0] * max(count, 0)
    if count <= 0:
        return a
    a[0] = 1
    sig = [0] + [_sigma(m, 1) for m in range(1, count)]
    for n in range(1, count):
        s = sum(sig[m] * a[n - m] for m in range(1, n + 1))
        a[n] = (-p * s) // n
    return a


def eta_power(p: int, trunc24: int, lattice: Lattice = POINT) -> QZSeries:
    """eta(tau)^p = q^(p/24) prod (1 - q^n)^p, for any integer p."""
    if p == 0:
        return QZSeries.constant(lattice, 1, trunc24)
    count = max((trunc24 - p + 23) // 24, 0)
    coeffs = euler_power(p, count)
    return QZSeries(lattice, {p + 24 * n: {0: c} for n, c in enumerate(coeffs) if c}, trunc24)


def eta(trunc24: int, lattice: Lattice = POINT) -> QZSeries:
    if trunc24 <= 0:
        raise ValueError("trunc24 must be positive")
    return eta_power(1, trunc24, lattice)


def theta1d(trunc24: int) -> QZSeries:
    """Odd Jacobi theta function in one variable, on the A1 lattice.

    theta = sum_n (-1)^n q^((2n+1)^2/8) zeta^((2n+1)/2); the lowest terms are
    q^(1/8) (zeta^(1/2) - zeta^(-1/2)).
    """
    levels: dict = {}
    k = 1
    while 3 * k * k < trunc24:
        # k = 2n+1 > 0 and its partner -k (n -> -n-1), signs (-1)^n
        n = (k - 1) // 2
        s = -1 if n % 2 else 1
        lv = levels.setdefault(3 * k * k, {})
        lv[pack((k,))] = s
        lv[pack((-k,))] = -s
        k += 2
    return QZSeries(A1_LATTICE, levels, trunc24)


def theta_characteristic(i: int, trunc24: int, z: bool = True) -> QZSeries:
    """theta_2, theta_3, theta_4 on A1 (``z=False`` gives the theta constant)."""
    if i not in (2, 3, 4):
        raise ValueError("characteristic index must be 2, 3 or 4")
    levels: dict = {}
    bound = isqrt(trunc24) + 2
    for n in range(-bound, bound + 1):
        if i == 2:
            n24, d2, c = 3 * (2 * n + 1) ** 2, 2 * n + 1, 1
        else:
            n24, d2, c = 12 * n * n, 2 * n, (-1) ** n if i == 4 else 1
        if n24 >= trunc24:
            continue
        key = pack((d2,)) if z else 0
        lv = levels.setdefault(n24, {})
        lv[key] = lv.get(key, 0) + c
    return QZSeries(A1_LATTICE, levels, trunc24)


def theta_over_eta3(trunc24: int) -> QZSeries:
    """theta(tau, w) / eta(tau)^3 on A1; integral q-exponents, q^0 term zeta^(1/2) - zeta^(-1/2)."""
    th = theta1d(trunc24 + 3)
    inv = eta_power(-3, trunc24, A1_LATTICE)
    out = mul(th, inv)
    assert out.trunc24 == trunc24
    return out


def theta_pullback(R: RootSystemData, j: int, trunc24: int, series: QZSeries | None = None) -> QZSeries:
    """theta(tau, (r_j, z)) on L_R for the ``j``-th positive coroot.

    zeta^(k/2) becomes the d-vector (k/2) ((r_j, b_i))_i.
    """
    if not 0 <= j < len(R.positive_coroots):
        raise IndexError(f"coroot index {j} outside the stored dual system")
    s = theta1d(trunc24) if series is None else series
    return s.substitute(R.lattice, R.coroot_pairings[j])


def phi_factors(R: RootSystemData, trunc24: int) -> list:
    """The theta-block factors theta(tau,(r,z))/eta^3, one per positive coroot."""
    base = theta_over_eta3(trunc24)
    return [base.substitute(R.lattice, p) for p in R.coroot_pairings]


def phi_R(R: RootSystemData, trunc24: int, max_terms: int | None = None) -> JacobiForm:
    """Theta block prod_{r>0 in R^vee} theta(tau,(r,z))/eta(tau)^3 on L_R."""
    if trunc24 <= 0:
        raise TruncationExhausted("trunc24 must be positive")
    factors = phi_factors(R, trunc24)
    out = factors[0]
    for f in factors[1:]:
        out = mul(out, f, max_terms=max_terms)
    if not out.levels.get(0):
        raise IntegralityError("theta block has a vanishing q^0 term")
    return JacobiForm(
        out,
        R.phi_weight,
        R.phi_index,
        DETERMINANT,
        R.weyl_generators,
        R.name,
        label=f"Phi_{R.name}",
    )


def weyl_denominator(R: RootSystemData) -> QZSeries:
    """prod_{r>0} (zeta^(r/2) - zeta^(-r/2)) as a q^0-only series."""
    out = QZSeries.constant(R.lattice, 1, 24)
    for p in R.coroot_pairings:
        f = QZSeries(R.lattice, {0: {pack(p): 1, pack(tuple(-x for x in p)): -1}}, 24)
        out = mul(out, f)
    return out


# ---------------------------------------------------------------------------
# modular forms


@dataclass(frozen=True)
class ModularForm:
    series: QZSeries  # on POINT, integral q-exponents
    weight: int

    def lift(self, lattice: Lattice) -> QZSeries:
        return self.series.lift(lattice)

    def coefficients(self) -> list:
        """[a_0, a_1, ...] below the truncation."""
        n = self.series.trunc24 // 24
        return [self.series.levels.get(24 * i, {}).get(0, 0) for i in range(n)]

    def __mul__(self, other: "ModularForm") -> "ModularForm":
        return ModularForm(mul(self.series, other.series), self.weight + other.weight)

    def __pow__(self, e: int) -> "ModularForm":
        return ModularForm(self.series**e, self.weight * e)


def eisenstein(k: int, trunc24: int) -> ModularForm:
    """E_4 = 1 + 240 sum sigma_3(n) q^n and E_6 = 1 - 504 sum sigma_5(n) q^n."""
    if k not in (4, 6):
        raise ValueError(f"unsupported Eisenstein weight {k}")
    c = 240 if k == 4 else -504
    levels = {0: {0: 1}}
    for n in range(1, (trunc24 + 23) // 24):
        levels[24 * n] = {0: c * _sigma(n, k - 1)}
    return ModularForm(QZSeries(POINT, levels, trunc24), k)


def delta(trunc24: int) -> ModularForm:
    return ModularForm(eta_power(24, trunc24), 12)


def modular_monomial(a: int, b: int, trunc24: int) -> ModularForm:
    """E4^a E6^b."""
    out = ModularForm(QZSeries.constant(POINT, 1, trunc24), 0)
    if a:
        out = out * eisenstein(4, trunc24) ** a
    if b:
        out = out * eisenstein(6, trunc24) ** b
    return out


# ---------------------------------------------------------------------------
# explicit generators


def normalize(series: QZSeries) -> tuple:
    """Scale to coprime integer q^0 coefficients, positive at the largest d.

    Falls back to the lowest nonzero q-level when there is no q^0 term.
    Returns ``(scaled series, factor)``.
    """
    if series.is_zero():
        return series, 1
    n0 = 0 if series.levels.get(0) else series.valuation
    lv = series.level(n0)
    coeffs = [Fraction(c) for c in lv.values()]
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    num = 0
    for c in coeffs:
        num = gcd(num, int(c * den))
    top = lv[max(lv)]
    factor = Fraction(den, num) * (1 if top > 0 else -1)
    return series.scale(factor), canon(factor)


def _headroom_trunc(trunc24: int) -> int:
    return trunc24 + 24


def phi_m2_1(trunc24: int) -> JacobiForm:
    """Weight -2 index 1 form theta(tau,z)^2 / eta(tau)^6 on A1."""
    th2 = mul(theta1d(trunc24 + 6), theta1d(trunc24 + 6))
    inv = eta_power(-6, trunc24, A1_LATTICE)
    s, _ = normalize(mul(th2, inv))
    return JacobiForm(s, -2, 1, TRIVIAL, catalog("A1").weyl_generators, "A1", label="phi_-2,1")


def phi_0_1(trunc24: int) -> JacobiForm:
    """Weight 0 index 1 form 4 sum_{i=2,3,4} theta_i(tau,z)^2 / theta_i(tau,0)^2 on A1."""
    big = trunc24 + 6
    total = QZSeries.zero(A1_LATTICE, trunc24)
    for i in (2, 3, 4):
        num = theta_characteristic(i, big) ** 2
        den = theta_characteristic(i, big, z=False) ** 2
        total = total + exact_divide(num, den).truncate(trunc24)
    s, _ = normalize(total)
    return JacobiForm(s, 0, 1, TRIVIAL, catalog("A1").weyl_generators, "A1", label="phi_0,1")


def a1_generators(trunc24: int) -> tuple:
    """(phi_{0,1}, phi_{-2,1}) on A1."""
    if trunc24 < 24:
        raise TruncationExhausted("a1_generators needs trunc24 >= 24")
    return phi_0_1(trunc24), phi_m2_1(trunc24)


def b_tower(l: int, trunc24: int) -> list:
    """psi_s = sum_{|S|=s} prod_{i in S} phi_{-2,1}(z_i) prod_{i not in S} phi_{0,1}(z_i).

    Returned normalized, for s = 0..l, on L_{B_l} = lA1 with orthogonal basis.
    """
    if l < 2:
        raise ValueError("B_l needs l >= 2")
    R = catalog(f"B{l}")
    L = R.lattice
    p0, p2 = a1_generators(trunc24)
    elem = [QZSeries.constant(L, 1, trunc24)]
    for i in range(l):
        a = p0.series.embed(L, (i,))
        b = p2.series.embed(L, (i,))
        new = []
        for s in range(len(elem) + 1):
            term = QZSeries.zero(L, trunc24)
            if s < len(elem):
                term = term + mul(elem[s], a)
            if s >= 1:
                term = term + mul(elem[s - 1], b)
            new.append(term)
        elem = new
    out = []
    for s, series in enumerate(elem):
        ns, _ = normalize(series)
        out.append(JacobiForm(ns, -2 * s, 1, TRIVIAL, R.weyl_generators, R.name, label=f"psi_{s}"))
    return out


def builtin_generators(R: RootSystemData, trunc24: int) -> list:
    """Built-in generator sets: A1 pair and B_l towers."""
    if R.name == "A1":
        return list(a1_generators(trunc24))
    if R.type_tag == "B":
        return b_tower(R.rank, trunc24)
    raise NotImplementedError(f"no built-in generators for {R.name}; ingest them from files")
