"""Free generation, decomposition over the generators, and the E8 pipeline.

Polynomials in E4 and E6 are dicts ``{(a, b): coeff}`` standing for
``sum coeff E4^a E6^b``.  A decomposition polynomial is a dict
``{(i_1, ..., i_{l+1}): epoly}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .blocks import ModularForm, builtin_generators, eisenstein, phi_factors, phi_R
from .errors import (
    DimensionMismatch,
    IndexMismatch,
    LatticeMismatch,
    NonConstantQuotient,
    NonModularResidue,
    NotApplicable,
    NotDivisible,
    SignatureMismatch,
    TruncationExhausted,
    ValidationFailed,
    ZeroJacobian,
)
from .jacobian import cofactor_jacobians, jacobian
from .lattice import canon
from .rootsystems import RootSystemData, catalog, verify_catalog
from .series import (
    POINT,
    JacobiForm,
    QZSeries,
    check_elliptic,
    check_group_invariance,
    divide_by_factors,
    exact_divide,
    lp_divexact,
    mul,
    pack,
    unpack,
)

# ---------------------------------------------------------------------------
# polynomials in E4, E6


def modular_dimension(k: int) -> int:
    """dim M_k(SL2(Z)) = number of (a, b) with 4a + 6b = k."""
    if k < 0 or k % 2:
        return 0
    return sum(1 for b in range(k // 6 + 1) if (k - 6 * b) % 4 == 0)


def modular_basis(k: int) -> list:
    """Exponent pairs (a, b) with 4a + 6b = k, ordered by increasing b."""
    if k < 0 or k % 2:
        return []
    return [((k - 6 * b) // 4, b) for b in range(k // 6 + 1) if (k - 6 * b) % 4 == 0]


def epoly_add(p: dict, q: dict, scale=1) -> dict:
    out = dict(p)
    for m, c in q.items():
        v = out.get(m, 0) + scale * c
        if v:
            out[m] = canon(v)
        else:
            out.pop(m, None)
    return out


def epoly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for (a1, b1), c1 in p.items():
        for (a2, b2), c2 in q.items():
            m = (a1 + a2, b1 + b2)
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = canon(v)
            else:
                out.pop(m, None)
    return out


def epoly_scale(p: dict, c) -> dict:
    if not c:
        return {}
    return {m: canon(v * c) for m, v in p.items()}


def epoly_pow(p: dict, e: int) -> dict:
    out = {(0, 0): 1}
    for _ in range(e):
        out = epoly_mul(out, p)
    return out


def epoly_divexact(p: dict, q: dict) -> dict:
    """Exact quotient in Q[E4, E6]; :class:`NotDivisible` otherwise."""
    num = {pack(m): c for m, c in p.items()}
    den = {pack(m): c for m, c in q.items()}
    return {unpack(k, 2): canon(c) for k, c in lp_divexact(num, den, 2).items()}


def epoly_text(p: dict) -> str:
    if not p:
        return "0"
    parts = []
    for (a, b), c in sorted(p.items()):
        mono = "*".join(s for s in (f"E4^{a}" if a else "", f"E6^{b}" if b else "") if s)
        parts.append(f"({c})" + (f"*{mono}" if mono else ""))
    return " + ".join(parts)


class _Eisenstein:
    """Cached E4^a E6^b expansions at one truncation."""

    def __init__(self, trunc24: int):
        self.trunc24 = trunc24
        self.e4 = eisenstein(4, trunc24).series
        self.e6 = eisenstein(6, trunc24).series
        self.pows = {4: [QZSeries.constant(POINT, 1, trunc24)], 6: [QZSeries.constant(POINT, 1, trunc24)]}
        self.cache: dict = {}

    def _pow(self, which: int, e: int) -> QZSeries:
        lst = self.pows[which]
        base = self.e4 if which == 4 else self.e6
        while len(lst) <= e:
            lst.append(mul(lst[-1], base))
        return lst[e]

    def monomial(self, a: int, b: int) -> QZSeries:
        key = (a, b)
        if key not in self.cache:
            self.cache[key] = mul(self._pow(4, a), self._pow(6, b))
        return self.cache[key]

    def evaluate(self, p: dict) -> QZSeries:
        out = QZSeries.zero(POINT, self.trunc24)
        for (a, b), c in p.items():
            out = out + self.monomial(a, b).scale(c)
        return out


def _solve_exact(rows: list, rhs: list):
    """Solve the (possibly overdetermined) system exactly; None if inconsistent."""
    n = len(rows[0]) if rows else 0
    aug = [[Fraction(x) for x in r] + [Fraction(y)] for r, y in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(aug)) if aug[i][c]), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if any(row[n] for row in aug[r:]):
        return None
    if len(piv_cols) < n:
        raise NonModularResidue("coefficient system is underdetermined")
    sol = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        sol[c] = aug[i][n]
    return sol


def index0_to_poly(f, weight: int) -> dict:
    """Express a z-independent form of index 0 as a polynomial in E4, E6.

    Uses every available q-coefficient, so the coefficients beyond
    dim M_k act as a consistency check.
    """
    s = f.series if isinstance(f, JacobiForm) else f
    if s.is_zero():
        return {}
    if not s.is_z_independent():
        raise NonModularResidue("index-0 residue depends on z")
    if any(n % 24 or n < 0 for n in s.levels):
        raise NonModularResidue("index-0 residue has non-integral q-powers")
    basis = modular_basis(weight)
    if not basis:
        raise NonModularResidue(f"nonzero residue in M_{weight} = 0")
    N = s.trunc24 // 24
    if N < len(basis):
        raise NonModularResidue(f"weight {weight} needs q-order >= {len(basis)}, have {N}")
    E = _Eisenstein(24 * N)
    cols = [E.monomial(a, b) for a, b in basis]
    rows = [[c.levels.get(24 * n, {}).get(0, 0) for c in cols] for n in range(N)]
    rhs = [s.levels.get(24 * n, {}).get(0, 0) for n in range(N)]
    sol = _solve_exact(rows, rhs)
    if sol is None:
        raise NonModularResidue(f"no element of M_{weight} matches the residue")
    return {m: canon(c) for m, c in zip(basis, sol) if c}


# ---------------------------------------------------------------------------
# the criterion


@dataclass
class GeneratorSystem:
    root_system: RootSystemData
    generators: list
    J: JacobiForm
    J_hat: JacobiForm
    scalar: Fraction | int | None = None  # J = scalar * J_hat in the free case
    g: ModularForm | None = None  # J / J_hat otherwise
    g_poly: dict | None = None
    declared_M: int | None = None

    @property
    def free(self) -> bool:
        return self.scalar is not None

    @property
    def trunc24(self) -> int:
        return self.J.trunc24

    @property
    def g_weight(self) -> int:
        return self.J.weight - self.J_hat.weight

    def lines(self) -> list:
        R = self.root_system
        out = [
            f"root_system {R.name}",
            f"generators {' '.join(f'({f.weight},{f.index})' for f in self.generators)}",
            f"jacobian weight={self.J.weight} index={self.J.index} character={self.J.character}",
            f"theta_block weight={self.J_hat.weight} index={self.J_hat.index}",
            f"trunc24 {self.trunc24}",
        ]
        if self.free:
            out.append(f"scalar {self.scalar}")
        else:
            out.append(f"g weight={self.g_weight} poly={epoly_text(self.g_poly or {})}")
            out.append(f"declared_M {self.declared_M}")
        return out


def _signature_of(forms: Sequence[JacobiForm]) -> list:
    return sorted((f.weight, f.index) for f in forms)


def _check_lattice(R: RootSystemData, forms: Sequence[JacobiForm]):
    for f in forms:
        if f.lattice != R.lattice:
            raise LatticeMismatch(f"{f.label or 'form'} lives on {f.lattice.tag()}, expected {R.lattice.tag()}")


def _quotient_scalar(q: QZSeries):
    """The constant c if ``q`` is the constant series c, else None."""
    if set(q.levels) != {0} or set(q.levels[0]) != {0}:
        return None
    return q.levels[0][0]


def check_free_criterion(
    R: RootSystemData,
    candidates: Sequence[JacobiForm],
    allow_g: bool = False,
    signature: Sequence | None = None,
    declared_M: int | None = None,
    max_terms: int | None = None,
) -> GeneratorSystem:
    """Certify that ``candidates`` freely generate, via J = c Phi_R.

    ``signature`` overrides the tabulated (weight, index) pairs.  With
    ``allow_g`` a quotient of positive weight is accepted and stored as g.
    """
    cands = list(candidates)
    if len(cands) != R.rank + 1:
        raise DimensionMismatch(f"{R.name} needs {R.rank + 1} forms, got {len(cands)}")
    _check_lattice(R, cands)
    expected = R.generator_weights if signature is None else tuple(signature)
    if sorted(expected) != _signature_of(cands):
        raise SignatureMismatch(f"signature {_signature_of(cands)} differs from {sorted(expected)}")
    if any(f.index <= 0 for f in cands):
        raise IndexMismatch("generators of index 0 drop out of the Jacobian")
    J = jacobian(cands, max_terms)
    if J.series.is_zero():
        raise ZeroJacobian(f"Jacobian vanishes to q-order {J.q_order} (dependent, or truncation too small)")
    J_hat = phi_R(R, J.trunc24, max_terms)
    if J.index != J_hat.index:
        raise IndexMismatch(f"index(J) = {J.index} but index(Phi_{R.name}) = {J_hat.index}")
    w = J.weight - J_hat.weight
    if w < 0:
        raise IndexMismatch(f"weight(J) = {J.weight} is below weight(Phi_{R.name}) = {J_hat.weight}")
    quotient = exact_divide(J.series, J_hat.series)
    if w == 0:
        c = _quotient_scalar(quotient)
        if c is None or not c:
            raise NonConstantQuotient("J / Phi_R is not a nonzero constant")
        return GeneratorSystem(R, cands, J, J_hat, scalar=c)
    if not allow_g:
        raise NonConstantQuotient(f"J / Phi_R has weight {w} > 0; this is the g-regime")
    g_poly = index0_to_poly(quotient, w)
    g = ModularForm(QZSeries(POINT, quotient.levels, quotient.trunc24), w)
    return GeneratorSystem(R, cands, J, J_hat, g=g, g_poly=g_poly, declared_M=declared_M)


# ---------------------------------------------------------------------------
# decomposition


@dataclass
class DecompResult:
    polynomial: dict  # {(i_1, ..., i_{l+1}): epoly}
    g_power: int
    certified_truncation: int
    weight: int
    index: int
    generator_signature: tuple = ()
    labels: tuple = ()

    def monomials(self) -> list:
        return sorted(self.polynomial)

    def is_homogeneous(self) -> bool:
        idx = [m for _, m in self.generator_signature]
        return all(sum(i * m for i, m in zip(e, idx)) == self.index for e in self.polynomial)

    def lines(self) -> list:
        out = [
            f"weight {self.weight}",
            f"index {self.index}",
            f"g_power {self.g_power}",
            f"certified_trunc24 {self.certified_truncation}",
            f"generators {' '.join(f'({k},{m})' for k, m in self.generator_signature)}",
        ]
        for e in self.monomials():
            mono = " ".join(f"X{j + 1}^{i}" for j, i in enumerate(e) if i) or "1"
            out.append(f"term {mono} : {epoly_text(self.polynomial[e])}")
        return out


def _gpoly_add(p: dict, q: dict, scale=1) -> dict:
    out = dict(p)
    for e, ep in q.items():
        v = epoly_add(out.get(e, {}), ep, scale)
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _gpoly_shift(p: dict, t: int) -> dict:
    """Multiply by X_t."""
    return {tuple(x + (j == t) for j, x in enumerate(e)): ep for e, ep in p.items()}


def _gpoly_map(p: dict, fn) -> dict:
    out = {}
    for e, ep in p.items():
        v = fn(ep)
        if v:
            out[e] = v
    return out


def truncation_budget(sys: GeneratorSystem, weight: int, index: int) -> tuple:
    """(needed q-order, weight of the bottleneck residue) for decomposing (weight, index)."""
    steps = [(f.weight, f.index) for f in sys.generators]
    wg = 0 if sys.free else sys.g_weight
    best = [None] * (index + 1)
    best[0] = 0
    for m in range(1, index + 1):
        vals = [best[m - mt] + wg - kt for kt, mt in steps if mt <= m and best[m - mt] is not None]
        best[m] = max(vals) if vals else None
    top = weight + best[index] if best[index] is not None else weight
    # residues of odd or negative weight must vanish; that needs no coefficients
    need = max((modular_dimension(k) for k in range(top + 1)), default=0)
    return need, top


def decompose(phi: JacobiForm, sys: GeneratorSystem, max_terms: int | None = None) -> DecompResult:
    """Write g^e phi as a polynomial in the generators over M_*."""
    R = sys.root_system
    _check_lattice(R, [phi])
    if phi.character != sys.generators[0].character:
        raise NotDivisible("character differs from the generators")
    trunc = min(phi.trunc24, sys.trunc24)
    need, top = truncation_budget(sys, phi.weight, phi.index)
    if trunc // 24 < need:
        raise TruncationExhausted(
            f"index-0 residue of weight {top} needs q-order {need}; only {trunc // 24} available"
        )
    gens = [f.truncate(trunc) for f in sys.generators]
    J_hat = sys.J_hat.series.truncate(trunc)
    n = len(gens)
    wg = 0 if sys.free else sys.g_weight

    def rec(series: QZSeries, k: int, m: int, depth: int) -> tuple:
        if depth > phi.index:
            raise AssertionError("recursion deeper than the input index")
        if series.is_zero():
            return {}, 0
        if m == 0:
            ep = index0_to_poly(series, k)
            return ({(0,) * n: ep} if ep else {}), 0
        form = JacobiForm(series, k, m, phi.character, phi.group, phi.group_name)
        cof = cofactor_jacobians(gens + [form], max_terms)
        parts = []
        for t, (f, Jt) in enumerate(zip(gens, cof[:-1])):
            if f.index > m:
                if not Jt.series.is_zero():
                    raise NotDivisible(f"cofactor J_{t + 1} of negative index is nonzero")
                continue
            gt = exact_divide(Jt.series, J_hat).truncate(trunc)
            P, e = rec(gt, k - f.weight + wg, m - f.index, depth + 1)
            sign = (-1) ** (t + 1 + n)  # (-1)^(t + l + 1) with 1-based t, l + 1 = n
            parts.append((t, Fraction(sign * f.index, m), P, e))
        if sys.free:
            out: dict = {}
            for t, coef, P, _ in parts:
                out = _gpoly_add(out, _gpoly_shift(P, t), coef / sys.scalar)
            return out, 0
        E = max((e for *_, e in parts), default=0)
        out = {}
        for t, coef, P, e in parts:
            gp = epoly_pow(sys.g_poly, E - e)
            out = _gpoly_add(out, _gpoly_map(_gpoly_shift(P, t), lambda ep: epoly_mul(ep, gp)), coef)
        return out, E + 1

    P, e = rec(phi.series.truncate(trunc), phi.weight, phi.index, 0)
    if not sys.free and e:
        target = max(0, phi.index - (sys.declared_M or 0) + 1) if sys.declared_M is not None else 0
        while e > target and P:
            try:
                P = _gpoly_map(P, lambda ep: epoly_divexact(ep, sys.g_poly))
            except NotDivisible:
                break
            e -= 1
        if not P:
            e = 0
    return DecompResult(
        polynomial=P,
        g_power=e,
        certified_truncation=trunc,
        weight=phi.weight,
        index=phi.index,
        generator_signature=tuple((f.weight, f.index) for f in sys.generators),
        labels=tuple(f.label for f in sys.generators),
    )


def evaluate_decomposition(res: DecompResult, sys: GeneratorSystem, max_terms: int | None = None) -> QZSeries:
    """Re-expand the polynomial at the generators; equals g^e phi to the truncation."""
    trunc = res.certified_truncation
    L = sys.root_system.lattice
    E = _Eisenstein(trunc)
    gens = [f.series.truncate(trunc) for f in sys.generators]
    pows: list = [[QZSeries.constant(L, 1, trunc)] for _ in gens]

    def gpow(j, i):
        while len(pows[j]) <= i:
            pows[j].append(mul(pows[j][-1], gens[j], max_terms))
        return pows[j][i]

    out = QZSeries.zero(L, trunc)
    for e, ep in sorted(res.polynomial.items()):
        term = E.evaluate(ep).lift(L)
        for j, i in enumerate(e):
            if i:
                term = mul(term, gpow(j, i), max_terms)
        out = out + term
    return out


def g_power_times(phi: JacobiForm, sys: GeneratorSystem, e: int) -> QZSeries:
    """g^e phi (phi itself in the free case)."""
    s = phi.series
    if e and not sys.free:
        gs = sys.g.series.truncate(s.trunc24).lift(s.lattice)
        for _ in range(e):
            s = mul(s, gs)
    return s


def round_trip(phi: JacobiForm, res: DecompResult, sys: GeneratorSystem) -> bool:
    lhs = g_power_times(phi, sys, res.g_power).truncate(res.certified_truncation)
    return lhs == evaluate_decomposition(res, sys)


# ---------------------------------------------------------------------------
# obstruction pipeline (E8 and small analogues)


@dataclass
class ObstructionReport:
    root_system: str
    signature: tuple
    index_sum: int
    phi_index: int
    jacobian_weight: int
    phi_weight: int
    g_weight: int
    trunc24: int
    jacobian_zero: bool
    z_independent: bool
    g_valuation24: int  # trunc24 when g vanishes to the available order
    declared_M: int | None
    g_poly: dict | None = None
    notes: list = field(default_factory=list)

    @property
    def vanishing_order(self) -> int:
        return self.g_valuation24 // 24

    def q8_status(self) -> str:
        avail = self.trunc24 // 24
        if self.g_valuation24 < self.trunc24:
            v = self.vanishing_order
            return f"g has a q^{v} term" + (" (contradicts g = O(q^8))" if v < 8 else "")
        if avail >= 8:
            return "g = O(q^8) verified"
        return f"g = O(q^{avail}) to the available order; q^8 not reachable"

    def lines(self) -> list:
        out = [
            f"root_system {self.root_system}",
            f"signature {' '.join(f'({k},{m})' for k, m in self.signature)}",
            f"index_sum {self.index_sum} phi_index {self.phi_index}",
            f"weight J={self.jacobian_weight} Phi={self.phi_weight} g={self.g_weight}",
            f"trunc24 {self.trunc24}",
            f"jacobian_zero_to_truncation {self.jacobian_zero}",
            f"quotient_z_independent {self.z_independent}",
            f"q8_check {self.q8_status()}",
            f"declared_M {self.declared_M}",
        ]
        if self.g_poly is not None:
            out.append(f"g {epoly_text(self.g_poly)}")
        out.extend(f"note {n}" for n in self.notes)
        return out


def obstruction_pipeline(
    R: RootSystemData,
    forms: Sequence[JacobiForm],
    signature: Sequence,
    declared_M: int | None = None,
    max_terms: int | None = None,
) -> ObstructionReport:
    """J(forms) / Phi_R computed factor by factor; Phi_R itself is never expanded."""
    forms = list(forms)
    if len(forms) != R.rank + 1:
        raise DimensionMismatch(f"{R.name} needs {R.rank + 1} forms, got {len(forms)}")
    _check_lattice(R, forms)
    if _signature_of(forms) != sorted(signature):
        raise SignatureMismatch(f"signature {_signature_of(forms)} differs from {sorted(signature)}")
    index_sum = sum(f.index for f in forms)
    if index_sum != R.phi_index:
        raise IndexMismatch(f"index sum {index_sum} differs from index(Phi_{R.name}) = {R.phi_index}")
    J = jacobian(forms, max_terms)
    gw = J.weight - R.phi_weight
    notes = []
    if J.series.is_zero():
        q = QZSeries.zero(R.lattice, J.trunc24)
        notes.append("Jacobian vanishes below the truncation; quotient is zero there")
    else:
        q = divide_by_factors(J.series, phi_factors(R, J.trunc24))
    if not q.is_z_independent():
        raise NonModularResidue("J / Phi_R depends on z")
    g_poly = None
    dim = modular_dimension(gw)
    if dim <= q.trunc24 // 24:
        g_poly = index0_to_poly(q, gw)
    else:
        notes.append(f"M_{gw} has dimension {dim}; g is not determined at q-order {q.trunc24 // 24}")
    return ObstructionReport(
        root_system=R.name,
        signature=tuple(sorted(signature)),
        index_sum=index_sum,
        phi_index=R.phi_index,
        jacobian_weight=J.weight,
        phi_weight=R.phi_weight,
        g_weight=gw,
        trunc24=q.trunc24,
        jacobian_zero=J.series.is_zero(),
        z_independent=True,
        g_valuation24=q.valuation,
        declared_M=declared_M,
        g_poly=g_poly,
        notes=notes,
    )


def e8_pipeline(forms: Sequence[JacobiForm], declared_M: int = 2, max_terms: int | None = None) -> ObstructionReport:
    """Weight-172 obstruction form from nine ingested E8 forms."""
    R = catalog("E8")
    return obstruction_pipeline(R, forms, R.sakai_signature, declared_M, max_terms)


# ---------------------------------------------------------------------------
# certificates


@dataclass
class Certificate:
    root_system: str
    trunc24: int
    inputs: list  # (label, weight, index, term count)
    scalar: Fraction | int
    catalog_lines: list
    validation_lines: list
    system_lines: list

    def lines(self) -> list:
        out = [f"certificate free-generation {self.root_system}", f"trunc24 {self.trunc24}"]
        for label, k, m, n in self.inputs:
            out.append(f"input {label or '-'} weight={k} index={m} terms={n}")
        out.append(f"scalar {self.scalar}")
        out.extend(f"catalog {s}" for s in self.catalog_lines)
        out.extend(f"validate {s}" for s in self.validation_lines)
        out.extend(f"system {s}" for s in self.system_lines)
        out.append("status certified")
        return out

    def text(self) -> str:
        return "\n".join(self.lines()) + "\n"


def verify_wirthmuller(
    R: RootSystemData,
    candidates: Sequence[JacobiForm] | None = None,
    trunc24: int = 48,
    max_terms: int | None = None,
) -> Certificate:
    """Catalog checks, candidate validation and the free criterion in one pass."""
    if R.name == "E8":
        raise NotApplicable("E8 is not freely generated; use e8_pipeline")
    rep = verify_catalog(R)
    if not rep.passed:
        raise ValidationFailed("\n".join(rep.lines()))
    if candidates is None:
        try:
            candidates = builtin_generators(R, trunc24)
        except NotImplementedError as exc:
            raise NotApplicable(str(exc)) from None
    cands = list(candidates)
    _check_lattice(R, cands)
    if sorted(R.generator_weights) != _signature_of(cands):
        raise SignatureMismatch(f"signature {_signature_of(cands)} differs from {sorted(R.generator_weights)}")
    vlines = []
    for j, f in enumerate(cands, start=1):
        for report in (check_elliptic(f), check_group_invariance(f, R.weyl_generators)):
            vlines.extend(f"X{j} {s}" for s in report.lines())
            if not report.passed:
                raise ValidationFailed("\n".join(report.lines()))
    sys = check_free_criterion(R, cands, max_terms=max_terms)
    return Certificate(
        root_system=R.name,
        trunc24=sys.trunc24,
        inputs=[(f.label, f.weight, f.index, len(f.series)) for f in cands],
        scalar=sys.scalar,
        catalog_lines=rep.lines(),
        validation_lines=vlines,
        system_lines=sys.lines(),
    )


__all__ = [
    "Certificate",
    "DecompResult",
    "GeneratorSystem",
    "ObstructionReport",
    "check_free_criterion",
    "decompose",
    "e8_pipeline",
    "evaluate_decomposition",
    "g_power_times",
    "index0_to_poly",
    "modular_basis",
    "modular_dimension",
    "obstruction_pipeline",
    "round_trip",
    "truncation_budget",
    "verify_wirthmuller",
]
