"""Catalog of irreducible root systems and their Jacobi-form data.

Each entry is built from a conventional realization (simple roots in
ambient coordinates); the full root set is the Weyl orbit of the simple
roots. Tabulated quantities (dual Coxeter number, number of positive roots,
parity of the root lattice, generator weights/indices) are stored as given
and cross-checked against the computed roots by :func:`verify_catalog`.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import UnknownRootSystem
from .lattice import (
    Lattice,
    canon,
    coroot,
    det,
    dot,
    mat,
    mat_mul,
    mat_vec,
    orbit,
    orbit_union,
    reflection,
    solve,
    transpose,
    vec,
    identity,
    inverse,
)

MAX_RANK = 8
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class RootSystemData:
    type_tag: str  # one of A B C D E F G
    rank: int
    lattice: Lattice
    basis: tuple  # ambient coordinates of the lattice basis b_i
    simple_roots: tuple  # lattice-basis coordinates
    positive_roots: tuple  # lattice-basis coordinates, ordered by height
    positive_coroots: tuple  # coroots of positive_roots, lattice-basis coordinates
    coroot_pairings: tuple  # ((r, b_i))_i for each positive coroot, standard form
    weyl_generators: tuple  # simple reflections, matrices on lattice coordinates
    h_dual: int
    num_roots: int
    parity: str  # "even" or "odd": parity of the lattice spanned by the roots
    group_name: str
    lattice_name: str
    dual_name: str
    generator_signature: tuple | None  # generator pairs (k_j, m_j): weight -k_j, index m_j
    sakai_signature: tuple | None = None  # E8 only: (weight, index) pairs
    ambient_simple_roots: tuple = field(default=(), repr=False)

    @property
    def name(self) -> str:
        return f"{self.type_tag}{self.rank}"

    @property
    def phi_weight(self) -> int:
        return -(self.num_roots // 2)

    @property
    def phi_index(self) -> int:
        return self.h_dual if self.parity == "even" else self.h_dual // 2

    @property
    def generator_weights(self) -> tuple:
        """(weight, index) of the tabulated generators."""
        if self.generator_signature is None:
            return ()
        return tuple((-k, m) for k, m in self.generator_signature)

    def __repr__(self):
        return f"RootSystemData({self.name})"


def _e8_simple():
    h = HALF
    return [
        (h, -h, -h, -h, -h, -h, -h, h),
        (1, 1, 0, 0, 0, 0, 0, 0),
        (-1, 1, 0, 0, 0, 0, 0, 0),
        (0, -1, 1, 0, 0, 0, 0, 0),
        (0, 0, -1, 1, 0, 0, 0, 0),
        (0, 0, 0, -1, 1, 0, 0, 0),
        (0, 0, 0, 0, -1, 1, 0, 0),
        (0, 0, 0, 0, 0, -1, 1, 0),
    ]


def _unit(n, i, s=1):
    v = [0] * n
    v[i] = s
    return v


def _realization(t: str, l: int):
    """Ambient simple roots and lattice basis for type ``t`` of rank ``l``."""
    if t == "A":
        simple = [[int(k == i) - int(k == i + 1) for k in range(l + 1)] for i in range(l)]
        return simple, simple
    if t in ("B", "C", "D"):
        simple = [[int(k == i) - int(k == i + 1) for k in range(l)] for i in range(l - 1)]
        if t == "B":
            simple.append(_unit(l, l - 1))
            # orthogonal basis e_i: L_R = lA_1 with O(lA_1) = signed permutations
            return simple, [_unit(l, i) for i in range(l)]
        if t == "C":
            simple.append(_unit(l, l - 1, 2))
        else:
            last = [0] * l
            last[l - 2] = last[l - 1] = 1
            simple.append(last)
        return simple, simple
    if t == "E":
        simple = _e8_simple()[:l]
        return simple, simple
    if t == "F":
        simple = [[0, 1, -1, 0], [0, 0, 1, -1], [0, 0, 0, 1], [HALF, -HALF, -HALF, -HALF]]
        return simple, simple
    if t == "G":
        simple = [[1, -1, 0], [-2, 1, 1]]
        return simple, simple
    raise UnknownRootSystem(t)


# (h_dual, |R|/2, parity, L_R, R^vee, group)
def _family_data(t: str, l: int):
    if t == "A":
        return l + 1, l * (l + 1) // 2, "even", f"A{l}", f"A{l}", f"W(A{l})"
    if t == "B":
        return 2 * l + 2, l * l, "odd", f"{l}A1", f"C{l}", f"O({l}A1)"
    if t == "C":
        return 2 * l - 1, l * l, "even", f"D{l}", f"B{l}", f"W(C{l})"
    if t == "D":
        return 2 * (l - 1), l * (l - 1), "even", f"D{l}", f"D{l}", f"W(D{l})"
    if t == "E":
        h, n = {6: (12, 36), 7: (18, 63), 8: (30, 120)}[l]
        return h, n, "even", f"E{l}", f"E{l}", f"W(E{l})"
    if t == "G":
        return 4, 6, "even", "A2", "G2(1/3)", "O(A2)"
    if t == "F":
        return 18, 24, "odd", "D4", "F4(2)", "O(D4)"
    raise UnknownRootSystem(t)


def _signature(t: str, l: int):
    if t == "A":
        return ((0, 1),) + tuple((s, 1) for s in range(2, l + 2))
    if t == "B":
        return tuple((2 * s, 1) for s in range(l + 1))
    if t == "C":
        return ((0, 1), (2, 1), (4, 1)) + tuple((2 * s, 2) for s in range(3, l + 1))
    if t == "D":
        return ((0, 1), (2, 1), (4, 1), (l, 1)) + tuple((2 * s, 2) for s in range(3, l))
    if t == "E" and l == 6:
        return ((0, 1), (2, 1), (5, 1), (6, 2), (8, 2), (9, 2), (12, 3))
    if t == "E" and l == 7:
        return ((0, 1), (2, 1), (6, 2), (8, 2), (10, 2), (12, 3), (14, 3), (18, 4))
    if t == "G":
        return ((0, 1), (2, 1), (6, 2))
    if t == "F":
        return ((0, 1), (2, 1), (6, 2), (8, 2), (12, 3))
    return None


SAKAI_E8_SIGNATURE = tuple((4, m) for m in (1, 2, 3, 4, 5)) + tuple((6, m) for m in (2, 3, 4, 6))


def _check_type(t: str, l: int):
    ok = {
        "A": l >= 1,
        "B": l >= 2,
        "C": l >= 3,
        "D": l >= 4,
        "E": l in (6, 7, 8),
        "F": l == 4,
        "G": l == 2,
    }
    if t not in ok or not ok[t]:
        raise UnknownRootSystem(f"{t}{l} is not in the classification (A>=1, B>=2, C>=3, D>=4, E6-8, F4, G2)")
    if l > MAX_RANK:
        raise UnknownRootSystem(f"rank {l} exceeds the supported maximum {MAX_RANK}")


def parse_tag(tag: str, rank: int | None = None) -> tuple[str, int]:
    """``"B3"`` -> ``("B", 3)``; ``("B", 3)`` style via ``rank``."""
    m = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d*)\s*", tag)
    if not m:
        raise UnknownRootSystem(f"cannot parse root system {tag!r}")
    t = m.group(1).upper()
    l = int(m.group(2)) if m.group(2) else rank
    if l is None:
        raise UnknownRootSystem(f"rank missing for {tag!r}")
    if rank is not None and l != rank:
        raise UnknownRootSystem(f"{tag!r} conflicts with rank {rank}")
    _check_type(t, l)
    return t, l


def catalog(type_tag: str, rank: int | None = None) -> RootSystemData:
    """Root-system data for a tag like ``"B3"`` (or ``"B", 3``); cached."""
    return _build(*parse_tag(type_tag, rank))


@lru_cache(maxsize=None)
def _build(t: str, l: int) -> RootSystemData:
    amb_simple, amb_basis = _realization(t, l)
    amb_simple = [vec(v) for v in amb_simple]
    amb_basis = [vec(v) for v in amb_basis]
    gram_std = mat(tuple(dot(u, v) for v in amb_basis) for u in amb_basis)
    lattice = Lattice.from_standard(gram_std, name=f"{t}{l}")
    # coordinates of the simple roots in the lattice basis
    g = lattice.gram_standard
    simple = tuple(solve(g, [dot(a, b) for b in amb_basis]) for a in amb_simple)
    gens = tuple(reflection(a, g) for a in simple)
    roots = orbit_union(gens, simple)
    # positivity: nonnegative coefficients on the simple roots
    st_inv = inverse(transpose(simple)) if t == "B" else None
    pos = []
    for r in roots:
        c = mat_vec(st_inv, r) if st_inv else r
        if all(x >= 0 for x in c):
            pos.append((sum(c), c, r))
        elif not all(x <= 0 for x in c):
            raise AssertionError("root with mixed-sign simple coordinates")
    pos.sort()
    positive = tuple(r for _, _, r in pos)
    coroots = tuple(coroot(r, g) for r in positive)
    pairings = tuple(mat_vec(g, c) for c in coroots)
    h, half, parity, lname, dname, gname = _family_data(t, l)
    return RootSystemData(
        type_tag=t,
        rank=l,
        lattice=lattice,
        basis=tuple(amb_basis),
        simple_roots=simple,
        positive_roots=positive,
        positive_coroots=coroots,
        coroot_pairings=pairings,
        weyl_generators=gens,
        h_dual=h,
        num_roots=2 * half,
        parity=parity,
        group_name=gname,
        lattice_name=lname,
        dual_name=dname,
        generator_signature=_signature(t, l),
        sakai_signature=SAKAI_E8_SIGNATURE if (t, l) == ("E", 8) else None,
        ambient_simple_roots=tuple(amb_simple),
    )


def all_types(max_rank: int = MAX_RANK, include_e8: bool = True):
    """Every catalog tag up to ``max_rank``."""
    out = []
    for l in range(1, max_rank + 1):
        out.append(f"A{l}")
    for l in range(2, max_rank + 1):
        out.append(f"B{l}")
    for l in range(3, max_rank + 1):
        out.append(f"C{l}")
    for l in range(4, max_rank + 1):
        out.append(f"D{l}")
    for tag, l in (("E6", 6), ("E7", 7), ("E8", 8), ("F4", 4), ("G2", 2)):
        if l <= max_rank and (include_e8 or tag != "E8"):
            out.append(tag)
    return out


def weyl_orbit(R: RootSystemData, v) -> set:
    """Orbit of a lattice-coordinate vector under the stored group generators."""
    return orbit(R.weyl_generators, v)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class CatalogReport:
    system: str
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self):
        for c in self.checks:
            yield f"{self.system}\t{c.name}\t{'PASS' if c.passed else 'FAIL'}\t{c.detail}"


def coxeter_sides(R: RootSystemData, z):
    """(h_dual * (z, z), sum over positive coroots of (r, z)^2), standard form."""
    g = R.lattice.gram_standard
    gz = mat_vec(g, z)
    lhs = canon(R.h_dual * dot(z, gz))
    rhs = canon(sum(dot(r, gz) ** 2 for r in R.positive_coroots))
    return lhs, rhs


def verify_catalog(R: RootSystemData, samples: int = 10, seed: int = 0) -> CatalogReport:
    checks = []
    L = R.lattice
    gn = L.gram_normalized
    checks.append(CheckResult("even_lattice", all(gn[i][i] % 2 == 0 for i in range(R.rank)), f"diag={[gn[i][i] for i in range(R.rank)]}"))
    odd = L.scale == 2
    checks.append(CheckResult("parity_rule", odd == (R.parity == "odd"), f"scale={L.scale} parity={R.parity}"))
    n_orbit = len(orbit_union(R.weyl_generators, R.simple_roots))
    checks.append(CheckResult("root_count", n_orbit == R.num_roots and 2 * len(R.positive_roots) == R.num_roots, f"orbit={n_orbit} expected={R.num_roots}"))
    rng = random.Random(seed)
    bad = []
    for _ in range(samples):
        z = tuple(rng.randint(-9, 9) for _ in range(R.rank))
        lhs, rhs = coxeter_sides(R, z)
        if lhs != rhs:
            bad.append((z, lhs, rhs))
    checks.append(CheckResult("coxeter_identity", not bad, f"{samples} samples" if not bad else f"violations={bad[:3]}"))
    refl_ok = all(det(s) == -1 and mat_mul(s, s) == identity(R.rank) for s in R.weyl_generators)
    checks.append(CheckResult("reflections", refl_ok, "det=-1, order 2"))
    if R.generator_signature is not None:
        sm = sum(m for _, m in R.generator_signature)
        checks.append(CheckResult("index_sum", sm == R.phi_index, f"sum m_j={sm} index(Phi)={R.phi_index}"))
        sk = sum(-k for k, _ in R.generator_signature)
        target = -R.num_roots // 2 - R.rank
        checks.append(CheckResult("weight_sum", sk == target, f"sum -k_j={sk} -|R|/2-l={target}"))
        checks.append(CheckResult("generator_count", len(R.generator_signature) == R.rank + 1, f"{len(R.generator_signature)} generators"))
    if R.sakai_signature is not None:
        sm = sum(m for _, m in R.sakai_signature)
        checks.append(CheckResult("sakai_index_sum", sm == R.phi_index, f"sum m_j={sm} index(Phi)={R.phi_index}"))
    return CatalogReport(R.name, checks)


def catalog_record(R: RootSystemData) -> str:
    """One-line structured text record for the catalog dump."""
    sig = ",".join(f"({k},{m})" for k, m in R.generator_signature) if R.generator_signature else "-"
    sak = ",".join(f"({k},{m})" for k, m in R.sakai_signature) if R.sakai_signature else "-"
    gram = ";".join(",".join(str(x) for x in row) for row in R.lattice.gram_normalized)
    return (
        f"type={R.name} rank={R.rank} L_R={R.lattice_name} dual={R.dual_name} group={R.group_name} "
        f"parity={R.parity} scale={R.lattice.scale} h_dual={R.h_dual} num_roots={R.num_roots} "
        f"phi_weight={R.phi_weight} phi_index={R.phi_index} signature={sig} sakai={sak} gram={gram}"
    )
