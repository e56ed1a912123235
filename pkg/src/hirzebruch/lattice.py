"""The lattice generated by six complex reflections R(ij) of order 5 in PU(2,1).

Only R(01), R(02), R(12) are needed for Gamma(2): they fix e3 = (0,0,1), a
positive vector for A1, and so act on its orthogonal complement, a complex
line of signature (1,1).  That action realizes the (5,5,5) triangle group.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Tuple

from .field import MU, CycloNum, Sign, real_sign
from .linalg import (HermForm, IsometryClass, Matrix, classify_isometry, proj_equal,
                     restrict_to_complement, signature, unitary_ratio)
from .words import (GenWord, InternalInconsistency, Mat2Z, NTClass, NTTag, cyclic_reduce,
                    eval_psl2, free_conjugate, gen, in_pi1Cu, invert, nt_classify)

PAIRS = ("01", "02", "03", "12", "13", "23")
DEFAULT_ASSIGNMENT = ("01", "02", "12")  # images of Tinf, T0, T1
INVARIANT_VECTOR = (0, 0, 1)
TRIPLES = ("012", "013", "023", "123")


class PreconditionViolation(ValueError):
    pass


class AssignmentError(ValueError):
    pass


def _one():
    return CycloNum.rational(1)


def _r_matrices(mu: CycloNum, literal_r01: bool) -> Dict[str, Matrix]:
    one = _one()
    a = mu * (one - mu)      # mu(1 - mu)
    b = one - mu             # 1 - mu
    m2 = mu * mu - one       # mu^2 - 1
    z = CycloNum.rational(0)
    I = Matrix.identity(3)
    # The first column of R(01) below carries -mu(1-mu).  With +mu(1-mu), as in
    # one printed version, R(01) does not preserve A1; see literal_r01.
    s = a if literal_r01 else -a
    return {
        "12": I + Matrix([[-a, a, z], [b, -b, z], [z, z, z]]),
        "23": I + Matrix([[z, z, z], [z, -a, a], [z, b, -b]]),
        "13": I + Matrix([[-a, z, a], [b * b, z, -b * b], [b, z, -b]]),
        "01": I + Matrix([[m2, z, z], [s, z, z], [s, z, z]]),
        "02": I + Matrix([[z, -b, z], [z, m2, z], [z, -a, z]]),
        "03": I * mu + Matrix([[z, z, -b], [z, z, -b], [z, z, m2]]) * mu,
    }


def hermitian_a1(mu: CycloNum = MU) -> HermForm:
    mb = mu.conj()
    d = -(mu + mb).inverse()
    one = _one()
    return HermForm(Matrix([[d, mb, one], [mu, d, mb], [one, mu, d]]))


@dataclass(frozen=True)
class LatticeGens:
    R: Dict[str, Matrix]
    form: HermForm
    mu: CycloNum

    def __getitem__(self, pair: str) -> Matrix:
        return self.R[pair]


class LatticeConsistencyError(RuntimeError):
    pass


def build_generators(literal_r01: bool = False, check: bool = True) -> LatticeGens:
    """The six R(ij) and A1 over Q(zeta_5), mu = zeta_5^3.

    With ``check`` every matrix must preserve A1 up to a positive scalar and
    A1 must have signature (2, 1); otherwise construction fails.
    """
    gens = LatticeGens(_r_matrices(MU, literal_r01), hermitian_a1(MU), MU)
    if check:
        if signature(gens.form) != (2, 1):
            raise LatticeConsistencyError("A1 does not have signature (2,1)")
        for p in PAIRS:
            if _positive_ratio(gens[p], gens.form) is None:
                raise LatticeConsistencyError(f"R({p}) does not preserve A1")
    return gens


@lru_cache(maxsize=None)
def default_generators() -> LatticeGens:
    return build_generators()


def _positive_ratio(M: Matrix, H: HermForm) -> Optional[CycloNum]:
    lam = unitary_ratio(M, H)
    if lam is None or not lam.is_real() or real_sign(lam) is not Sign.POSITIVE:
        return None
    return lam


def _commutator(X: Matrix, Y: Matrix) -> Matrix:
    return X * Y * X.inverse() * Y.inverse()


# -- verification report ---------------------------------------------------------

@dataclass(frozen=True)
class CheckItem:
    item: str
    name: str
    passed: bool
    detail: str

    def to_json(self) -> dict:
        return {"item": self.item, "name": self.name, "passed": self.passed,
                "detail": self.detail}


@dataclass(frozen=True)
class LatticeReport:
    checks: tuple
    signature: Optional[tuple]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def item_passed(self, item: str) -> bool:
        return all(c.passed for c in self.checks if c.item == item)

    def to_json(self) -> dict:
        return {
            "checks": [c.to_json() for c in self.checks],
            "signature": None if self.signature is None else f"({self.signature[0]},{self.signature[1]})",
            "passed": self.passed,
        }


def verify_lattice(gens: Optional[LatticeGens] = None) -> LatticeReport:
    """Items (a) unitarity, (b) commutator relations, (c) product relation,
    (d) fifth powers scalar, (e) signature (2,1)."""
    gens = gens or default_generators()
    H = gens.form
    checks = []
    for p in PAIRS:
        lam = unitary_ratio(gens[p], H)
        ok = lam is not None and lam.is_real() and real_sign(lam) is Sign.POSITIVE
        checks.append(CheckItem("a", f"R({p}) preserves A1", ok,
                                "ratio " + (str(lam) if lam is not None else "none")))
    for t in TRIPLES:
        i, j, k = t
        ij, ik, jk = i + j, i + k, j + k
        P = gens[ij] * gens[ik] * gens[jk]
        for x in (ij, ik, jk):
            ok = _commutator(P, gens[x]).is_scalar()
            checks.append(CheckItem("b", f"[R({ij})R({ik})R({jk}), R({x})] = 1", ok,
                                    "scalar" if ok else "not scalar"))
    prod = Matrix.identity(3)
    for p in ("01", "02", "12", "03", "13", "23"):
        prod = prod * gens[p]
    ok = prod.is_scalar()
    checks.append(CheckItem("c", "R(01)R(02)R(12)R(03)R(13)R(23) = 1", ok,
                            "scalar " + str(prod[0, 0]) if ok else "not scalar"))
    for p in PAIRS:
        ok = (gens[p] ** 5).is_scalar()
        checks.append(CheckItem("d", f"R({p})^5 = 1", ok, "scalar" if ok else "not scalar"))
    try:
        sig = signature(H)
    except ValueError:
        sig = None
    checks.append(CheckItem("e", "signature of A1", sig == (2, 1),
                            "degenerate" if sig is None else f"({sig[0]},{sig[1]})"))
    return LatticeReport(tuple(checks), sig)


# -- Gamma(2) -> T(5,5,5) ---------------------------------------------------------

def parse_assignment(text: str) -> tuple:
    parts = tuple(p.strip() for p in text.replace(" ", ",").split(",") if p.strip())
    if sorted(parts) != sorted(DEFAULT_ASSIGNMENT):
        raise AssignmentError(
            "assignment must be a permutation of 01,02,12 (images of Tinf,T0,T1)")
    return parts


class Gamma2Rep:
    """Gamma(2) acting through the configured R(ij) on C^3 and on the e3-complement."""

    def __init__(self, gens: Optional[LatticeGens] = None,
                 assignment: tuple = DEFAULT_ASSIGNMENT):
        self.gens = gens or default_generators()
        if sorted(assignment) != sorted(DEFAULT_ASSIGNMENT):
            raise AssignmentError("assignment must be a permutation of 01,02,12")
        self.assignment = tuple(assignment)
        self.images = dict(zip(("Tinf", "T0", "T1"), (self.gens[p] for p in assignment)))
        self.inverses = {g: M.inverse() for g, M in self.images.items()}
        self.restricted = {g: self.restrict(M) for g, M in self.images.items()}
        self.restricted_inv = {g: M.inverse() for g, M in self.restricted.items()}

    def restrict(self, M: Matrix) -> Matrix:
        return restrict_to_complement(M, self.gens.form, INVARIANT_VECTOR)

    def image(self, w: GenWord) -> Matrix:
        return self._eval(w, self.images, self.inverses, 3)

    def restricted_image(self, w: GenWord) -> Matrix:
        return self._eval(w, self.restricted, self.restricted_inv, 2)

    @staticmethod
    def _eval(w, fwd, inv, size):
        M = Matrix.identity(size)
        for g, e in w.letters:
            base = fwd[g] if e > 0 else inv[g]
            for _ in range(abs(e)):
                M = M * base
        return M

    def validation(self) -> dict:
        """Necessary conditions for the assignment to realize T(5,5,5)."""
        rel = self.restricted_image(GenWord((("Tinf", 1), ("T0", 1), ("T1", 1))))
        fifth = {g: (M ** 5).is_scalar() for g, M in self.restricted.items()}
        fixes = all(_fixes_line(M) for M in self.images.values())
        return {"relation": rel.is_scalar(), "fifth_powers": all(fifth.values()),
                "fixes_line": fixes}

    def is_valid(self) -> bool:
        return all(self.validation().values())


def _fixes_line(M: Matrix) -> bool:
    v = M.apply(INVARIANT_VECTOR)
    return v[0].is_zero() and v[1].is_zero() and not v[2].is_zero()


def valid_assignments(gens: Optional[LatticeGens] = None) -> list:
    return [p for p in itertools.permutations(DEFAULT_ASSIGNMENT)
            if Gamma2Rep(gens, p).is_valid()]


@lru_cache(maxsize=None)
def _default_rep(assignment: tuple = DEFAULT_ASSIGNMENT) -> Gamma2Rep:
    return Gamma2Rep(default_generators(), assignment)


def gamma2_image(w: GenWord, rep: Optional[Gamma2Rep] = None) -> Matrix:
    return (rep or _default_rep()).image(w)


def in_kernel_to_pi1C(w: GenWord, rep: Optional[Gamma2Rep] = None) -> bool:
    if not in_pi1Cu(w):
        raise PreconditionViolation(f"{w} is not in the index-25 subgroup")
    return (rep or _default_rep()).restricted_image(w).is_scalar()


def classify_image(w: GenWord, rep: Optional[Gamma2Rep] = None,
                   precision_cap: int = 256) -> IsometryClass:
    rep = rep or _default_rep()
    return classify_isometry(rep.image(w), rep.gens.form, precision_cap)


# -- certificates -------------------------------------------------------------------

class FiberKind(enum.Enum):
    MANIFOLD = "manifold-fiber"
    ORBIFOLD = "orbifold-fiber"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class RepCertificate:
    word: GenWord
    psl2_matrix: Mat2Z
    trace: int
    nt_class: NTClass
    in_pi1Cu: bool
    lattice_image: Matrix
    restricted_image: Matrix
    image_trivial_in_pi1C: bool
    pseudo_anosov: bool
    hyperbolic_manifold: bool
    fiber_kind: FiberKind
    isometry_class: IsometryClass

    def to_json(self) -> dict:
        return {
            "word": str(self.word),
            "psl2_matrix": self.psl2_matrix.rows(),
            "trace": self.trace,
            "nt_class": self.nt_class.tag.value,
            "in_pi1Cu": self.in_pi1Cu,
            "lattice_image": [[str(x) for x in r] for r in self.lattice_image.rows],
            "restricted_image": [[str(x) for x in r] for r in self.restricted_image.rows],
            "image_trivial_in_pi1C": self.image_trivial_in_pi1C,
            "pseudo_anosov": self.pseudo_anosov,
            "hyperbolic_manifold": self.hyperbolic_manifold,
            "fiber_kind": self.fiber_kind.value,
            "isometry_class": self.isometry_class.to_json(),
        }


def certify(w: GenWord, rep: Optional[Gamma2Rep] = None,
            precision_cap: int = 256) -> RepCertificate:
    rep = rep or _default_rep()
    m = eval_psl2(w)
    nt = nt_classify(w)
    member = in_pi1Cu(w)
    image = rep.image(w)
    restricted = rep.restricted_image(w)
    trivial = restricted.is_scalar()
    pa = nt.tag is NTTag.PSEUDO_ANOSOV
    if member and not trivial and not pa:
        raise InternalInconsistency(
            f"{w}: nontrivial image in the triangle group but not pseudo-Anosov")
    return RepCertificate(
        word=w, psl2_matrix=m, trace=m.trace, nt_class=nt, in_pi1Cu=member,
        lattice_image=image, restricted_image=restricted,
        image_trivial_in_pi1C=trivial, pseudo_anosov=pa, hyperbolic_manifold=pa,
        fiber_kind=FiberKind.MANIFOLD if member else FiberKind.ORBIFOLD,
        isometry_class=classify_isometry(image, rep.gens.form, precision_cap),
    )


# -- distinguishing representations --------------------------------------------------

def iota(M: Matrix) -> CycloNum:
    """trace^2 / det, a conjugation invariant of a 2x2 matrix up to scalars and inversion."""
    return M.trace() * M.trace() / M.det()


class VerdictTag(enum.Enum):
    DISTINCT = "distinct"
    INCONCLUSIVE = "inconclusive"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class DistinguishVerdict:
    tag: VerdictTag
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"tag": self.tag.value, "witness": self.witness}


def _projective_key(M: Matrix):
    pivot = next(x for x in M.entries() if not x.is_zero())
    inv = pivot.inverse()
    return tuple((x * inv) for x in M.entries())


def find_conjugator(A: Matrix, B: Matrix, rep: Gamma2Rep, depth: int) -> Optional[GenWord]:
    """Breadth-first search for g with g A g^-1 = B projectively, |g| <= depth."""
    target = _projective_key(B)
    letters = (("Tinf", 1), ("Tinf", -1), ("T0", 1), ("T0", -1))
    frontier = [(GenWord(), Matrix.identity(2), Matrix.identity(2))]
    seen = {_projective_key(Matrix.identity(2))}
    for level in range(depth + 1):
        nxt = []
        for w, g, ginv in frontier:
            if _projective_key(g * A * ginv) == target:
                return w
            if level == depth:
                continue
            for name, e in letters:
                step = rep.restricted[name] if e > 0 else rep.restricted_inv[name]
                step_inv = rep.restricted_inv[name] if e > 0 else rep.restricted[name]
                g2 = step * g
                key = _projective_key(g2)
                if key in seen:
                    continue
                seen.add(key)
                nxt.append((GenWord(((name, e),)) * w, g2, ginv * step_inv))
        frontier = nxt
    return None


def distinguish(w1: GenWord, w2: GenWord, rep: Optional[Gamma2Rep] = None,
                depth: int = 8) -> DistinguishVerdict:
    """One-sided test: ``distinct`` is a proof, ``inconclusive`` is not."""
    rep = rep or _default_rep()
    for w in (w1, w2):
        if not in_pi1Cu(w):
            raise PreconditionViolation(f"{w} is not in the index-25 subgroup")
    m1 = rep.restricted_image(w1)
    m2 = rep.restricted_image(w2)
    m2i = rep.restricted_image(invert(w2))
    i1, i2, i2inv = iota(m1), iota(m2), iota(m2i)
    witness = {"iota_1": str(i1), "iota_2": str(i2), "iota_2_inverse": str(i2inv)}
    if i1 != i2 and i1 != i2inv:
        return DistinguishVerdict(VerdictTag.DISTINCT, witness)
    if free_conjugate(w1, w2) or free_conjugate(w1, invert(w2)):
        witness["conjugate_in_free_group"] = True
        return DistinguishVerdict(VerdictTag.INCONCLUSIVE, witness)
    for target, label in ((m2, "w2"), (m2i, "w2^-1")):
        g = find_conjugator(m1, target, rep, depth)
        if g is not None:
            witness["conjugator"] = str(g)
            witness["conjugator_target"] = label
            break
    return DistinguishVerdict(VerdictTag.INCONCLUSIVE, witness)
