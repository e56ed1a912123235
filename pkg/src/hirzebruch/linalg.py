"""Small exact matrices over Q(zeta_n), Hermitian forms and PU(2,1) isometries."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import kernels
from .field import (DEFAULT_CONDUCTOR, CycloNum, PrecisionExhausted, Sign, embed,
                    real_sign, zeta)


class ShapeMismatch(ValueError):
    pass


class DegenerateForm(ValueError):
    pass


class PreconditionError(ValueError):
    pass


def _num(x, n: int) -> CycloNum:
    if isinstance(x, CycloNum):
        return x
    return CycloNum.rational(x, n)


class Matrix:
    """Immutable matrix with CycloNum entries."""

    __slots__ = ("rows", "conductor", "_hash")

    def __init__(self, rows: Sequence[Sequence], conductor: int = DEFAULT_CONDUCTOR):
        rows = tuple(tuple(_num(x, conductor) for x in r) for r in rows)
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ShapeMismatch("rows must be nonempty and of equal length")
        for r in rows:
            for x in r:
                if x.conductor != conductor:
                    raise ValueError("entry conductor differs from matrix conductor")
        self.rows = rows
        self.conductor = conductor
        self._hash = None

    @classmethod
    def _from_pairs(cls, pairs, n: int) -> "Matrix":
        obj = object.__new__(cls)
        obj.rows = tuple(tuple(CycloNum._raw(n, nums, den) for nums, den in r)
                         for r in pairs)
        obj.conductor = n
        obj._hash = None
        return obj

    @classmethod
    def identity(cls, size: int, conductor: int = DEFAULT_CONDUCTOR) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(size)] for i in range(size)],
                   conductor)

    @classmethod
    def diag(cls, entries, conductor: int = DEFAULT_CONDUCTOR) -> "Matrix":
        k = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(k)] for i in range(k)],
                   conductor)

    @property
    def shape(self) -> tuple:
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def entries(self):
        for r in self.rows:
            yield from r

    def _pairs(self):
        return tuple(tuple(x.kernel_pair for x in r) for r in self.rows)

    # -- arithmetic ----------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.shape[1] != other.shape[0]:
                raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
            return Matrix._from_pairs(
                kernels.matmul(self._pairs(), other._pairs(), self.conductor),
                self.conductor)
        if isinstance(other, (CycloNum, int, Fraction)):
            c = _num(other, self.conductor)
            return Matrix([[c * x for x in r] for r in self.rows], self.conductor)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (CycloNum, int, Fraction)):
            return self * other
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ShapeMismatch("shape mismatch in addition")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                      self.conductor)

    def __neg__(self):
        return Matrix([[-x for x in r] for r in self.rows], self.conductor)

    def __sub__(self, other):
        return self + (-other)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Matrix.identity(self.shape[0], self.conductor)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def apply(self, v: Sequence) -> tuple:
        v = [_num(x, self.conductor) for x in v]
        col = tuple((x.kernel_pair,) for x in v)
        out = kernels.matmul(self._pairs(), col, self.conductor)
        return tuple(CycloNum._raw(self.conductor, *r[0]) for r in out)

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self.rows)), self.conductor)

    def conj_transpose(self) -> "Matrix":
        return Matrix([[x.conj() for x in col] for col in zip(*self.rows)], self.conductor)

    def trace(self) -> CycloNum:
        total = CycloNum.rational(0, self.conductor)
        for i in range(min(self.shape)):
            total = total + self.rows[i][i]
        return total

    def det(self) -> CycloNum:
        m = self.rows
        k, l = self.shape
        if k != l:
            raise ShapeMismatch("determinant of a non-square matrix")
        if k == 1:
            return m[0][0]
        if k == 2:
            return m[0][0] * m[1][1] - m[0][1] * m[1][0]
        if k == 3:
            return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                    - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                    + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
        raise ShapeMismatch("only 1x1, 2x2 and 3x3 determinants are supported")

    def adjugate(self) -> "Matrix":
        m = self.rows
        k = self.shape[0]
        if k == 2:
            return Matrix([[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]], self.conductor)
        if k == 3:
            def minor(i, j):
                r = [a for a in range(3) if a != i]
                c = [b for b in range(3) if b != j]
                return m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
            return Matrix([[minor(j, i) * (-1) ** (i + j) for j in range(3)]
                           for i in range(3)], self.conductor)
        raise ShapeMismatch("adjugate only for 2x2 and 3x3")

    def inverse(self) -> "Matrix":
        d = self.det()
        if d.is_zero():
            raise ZeroDivisionError("singular matrix")
        return self.adjugate() * d.inverse()

    def is_scalar(self) -> bool:
        k, l = self.shape
        if k != l:
            return False
        d = self.rows[0][0]
        return all((x == d) if i == j else x.is_zero()
                   for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.entries())

    def galois(self, k: int) -> "Matrix":
        return Matrix([[x.galois(k) for x in r] for r in self.rows], self.conductor)

    def to_complex(self):
        return [[x.to_complex() for x in r] for r in self.rows]

    def to_json(self) -> list:
        return [[x.to_json() for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, data) -> "Matrix":
        rows = [[CycloNum.from_json(x) for x in r] for r in data]
        return cls(rows, rows[0][0].conductor)

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix([{body}])"


Mat3C = Matrix


# -- projective equality -------------------------------------------------------

def proportionality(M: Matrix, N: Matrix) -> Optional[CycloNum]:
    """Return lambda with M = lambda * N, or None when no such scalar exists."""
    if M.shape != N.shape:
        raise ShapeMismatch(f"shapes differ: {M.shape} vs {N.shape}")
    pivot = next(((i, j) for i, r in enumerate(N.rows) for j, x in enumerate(r)
                  if not x.is_zero()), None)
    if pivot is None:
        raise ValueError("zero matrix has no projective class")
    lam = M[pivot] / N[pivot]
    for a, b in zip(M.entries(), N.entries()):
        if a != lam * b:
            return None
    return lam


def proj_equal(M: Matrix, N: Matrix) -> bool:
    if M.is_zero() or N.is_zero():
        raise ValueError("zero matrix has no projective class")
    return proportionality(M, N) is not None


def vectors_proportional(u: Sequence[CycloNum], v: Sequence[CycloNum]) -> bool:
    u = list(u)
    v = list(v)
    if len(u) != len(v):
        raise ShapeMismatch("vector lengths differ")
    return all((u[i] * v[j] - u[j] * v[i]).is_zero()
               for i in range(len(u)) for j in range(i + 1, len(u)))


# -- Hermitian forms ------------------------------------------------------------

@dataclass(frozen=True)
class HermForm:
    matrix: Matrix

    def __post_init__(self):
        m = self.matrix
        if m.shape[0] != m.shape[1]:
            raise ShapeMismatch("Hermitian form needs a square matrix")
        if m.conj_transpose() != m:
            raise ValueError("matrix is not conjugate-symmetric")

    def __call__(self, x: Sequence, y: Sequence) -> CycloNum:
        """h(x, y) = x^* H y."""
        n = self.matrix.conductor
        Hy = self.matrix.apply(y)
        total = CycloNum.rational(0, n)
        for a, b in zip(x, Hy):
            total = total + _num(a, n).conj() * b
        return total


def herm_pullback(M: Matrix, H: HermForm | Matrix) -> Matrix:
    """M^* H M."""
    Hm = H.matrix if isinstance(H, HermForm) else H
    return M.conj_transpose() * Hm * M


def unitary_ratio(M: Matrix, H: HermForm) -> Optional[CycloNum]:
    """lambda with M^* H M = lambda H, or None."""
    return proportionality(herm_pullback(M, H), H.matrix)


def _congruence_diagonal(H: HermForm) -> list:
    n = H.matrix.conductor
    a = [list(r) for r in H.matrix.rows]
    size = len(a)
    diag = []
    for k in range(size):
        if a[k][k].is_zero():
            j = next((i for i in range(k + 1, size) if not a[i][i].is_zero()), None)
            if j is not None:
                a[k], a[j] = a[j], a[k]
                for r in a:
                    r[k], r[j] = r[j], r[k]
            else:
                j = next((i for i in range(k + 1, size) if not a[k][i].is_zero()), None)
                if j is None:
                    raise DegenerateForm("Hermitian form is degenerate")
                # e_k <- e_k + t e_j; one of t = 1, z makes the new pivot nonzero
                for t in (CycloNum.rational(1, n), zeta(1, n)):
                    pivot = a[k][k] + t * a[k][j] + t.conj() * a[j][k] + t * t.conj() * a[j][j]
                    if not pivot.is_zero():
                        break
                for r in a:
                    r[k] = r[k] + t * r[j]
                a[k] = [x + t.conj() * y for x, y in zip(a[k], a[j])]
        p = a[k][k]
        for i in range(k + 1, size):
            if a[i][k].is_zero():
                continue
            c = a[k][i] / p
            for r in a:
                r[i] = r[i] - c * r[k]
            cc = c.conj()
            a[i] = [x - cc * y for x, y in zip(a[i], a[k])]
        diag.append(p)
    return diag


def signature(H: HermForm) -> tuple:
    """Inertia (p, q) by exact congruence diagonalization."""
    p = q = 0
    for d in _congruence_diagonal(H):
        s = real_sign(d)
        if s is Sign.POSITIVE:
            p += 1
        elif s is Sign.NEGATIVE:
            q += 1
        else:
            raise DegenerateForm("Hermitian form is degenerate")
    return p, q


# -- invariant line and its complement -----------------------------------------

def complement_basis(H: HermForm, v: Sequence) -> tuple:
    """Two H-orthogonal-to-v vectors from Gram-Schmidt on standard basis vectors."""
    n = H.matrix.conductor
    v = [_num(x, n) for x in v]
    hvv = H(v, v)
    if hvv.is_zero():
        raise PreconditionError("v is isotropic")
    size = len(v)
    candidates = []
    for i in range(size):
        e = [CycloNum.rational(1 if j == i else 0, n) for j in range(size)]
        c = H(v, e) / hvv
        candidates.append(tuple(x - c * y for x, y in zip(e, v)))
    for i in range(size):
        for j in range(i + 1, size):
            u1, u2 = candidates[i], candidates[j]
            rows = _independent_rows(u1, u2)
            if rows is not None:
                return u1, u2, rows
    raise PreconditionError("could not build a complement basis")


def _independent_rows(u1, u2):
    for a in range(len(u1)):
        for b in range(a + 1, len(u1)):
            if not (u1[a] * u2[b] - u1[b] * u2[a]).is_zero():
                return a, b
    return None


def restrict_to_complement(M: Matrix, H: HermForm, v: Sequence) -> Matrix:
    """Matrix of M on the H-orthogonal complement of the line spanned by v."""
    n = M.conductor
    v = [_num(x, n) for x in v]
    if not vectors_proportional(M.apply(v), v):
        raise PreconditionError("M does not preserve the line spanned by v")
    u1, u2, (a, b) = complement_basis(H, v)
    # coordinates in (u1, u2) from the two rows where the basis is independent
    B = Matrix([[u1[a], u2[a]], [u1[b], u2[b]]], n)
    Binv = B.inverse()
    cols = []
    for u in (u1, u2):
        w = M.apply(u)
        cols.append(Binv.apply([w[a], w[b]]))
    return Matrix([[cols[0][0], cols[1][0]], [cols[0][1], cols[1][1]]], n)


# -- polynomials over Q(zeta_n) --------------------------------------------------

def _ptrim(p):
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def _pdivmod(a, b):
    a = _ptrim(a)
    b = _ptrim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    n = b[0].conductor
    q = [CycloNum.rational(0, n)] * max(len(a) - len(b) + 1, 1)
    lead_inv = b[-1].inverse()
    while len(a) >= len(b):
        shift = len(a) - len(b)
        f = a[-1] * lead_inv
        q[shift] = f
        for i, c in enumerate(b):
            a[i + shift] = a[i + shift] - f * c
        a = _ptrim(a)
        if not a:
            break
    return q, a


def poly_gcd(a, b):
    a, b = _ptrim(a), _ptrim(b)
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    if not a:
        return a
    lead = a[-1].inverse()
    return [c * lead for c in a]


def poly_derivative(p):
    return [c * i for i, c in enumerate(p)][1:]


def char_poly(M: Matrix) -> list:
    """Characteristic polynomial det(xI - M), coefficients low degree first."""
    k = M.shape[0]
    tr = M.trace()
    if k == 2:
        return [M.det(), -tr, CycloNum.rational(1, M.conductor)]
    if k == 3:
        m = M.rows
        c2 = (m[0][0] * m[1][1] - m[0][1] * m[1][0]
              + m[0][0] * m[2][2] - m[0][2] * m[2][0]
              + m[1][1] * m[2][2] - m[1][2] * m[2][1])
        return [-M.det(), c2, -tr, CycloNum.rational(1, M.conductor)]
    raise ShapeMismatch("characteristic polynomial only for 2x2 and 3x3")


def _solve_combination(vectors, target):
    """Coefficients c with sum c_i vectors[i] = target, or None."""
    n_vec = len(vectors)
    length = len(target)
    # augmented system: rows = coordinates, columns = vectors + target
    rows = [[vectors[j][i] for j in range(n_vec)] + [target[i]] for i in range(length)]
    pivots = []
    r = 0
    for col in range(n_vec):
        piv = next((i for i in range(r, length) if not rows[i][col].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(length):
            if i != r and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    for i in range(r, length):
        if not rows[i][n_vec].is_zero():
            return None
    n = target[0].conductor
    coeffs = [CycloNum.rational(0, n)] * n_vec
    for i, col in enumerate(pivots):
        coeffs[col] = rows[i][n_vec]
    return coeffs


def min_poly(M: Matrix) -> list:
    """Monic minimal polynomial of M, coefficients low degree first."""
    k = M.shape[0]
    n = M.conductor
    powers = [Matrix.identity(k, n)]
    while True:
        nxt = powers[-1] * M
        flat = [list(P.entries()) for P in powers]
        coeffs = _solve_combination(flat, list(nxt.entries()))
        if coeffs is not None:
            return [-c for c in coeffs] + [CycloNum.rational(1, n)]
        powers.append(nxt)


def min_poly_squarefree(M: Matrix) -> bool:
    p = min_poly(M)
    return len(poly_gcd(p, poly_derivative(p))) <= 1


def projective_order(M: Matrix, limit: int = 60) -> Optional[int]:
    P = M
    for k in range(1, limit + 1):
        if P.is_scalar():
            return k
        P = P * M
    return None


# -- isometry classification -----------------------------------------------------

class IsometryTag(enum.Enum):
    SCALAR = "scalar"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    LOXODROMIC = "loxodromic"
    NEAR_DEGENERATE = "near-degenerate"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class IsometryClass:
    tag: IsometryTag
    margin: float
    discriminant: Optional[CycloNum] = None

    def to_json(self) -> dict:
        return {
            "tag": self.tag.value,
            "margin": repr(self.margin),
            "discriminant": None if self.discriminant is None else str(self.discriminant),
        }


def goldman_discriminant(M: Matrix, ratio: CycloNum) -> CycloNum:
    """|t|^4 - 8 Re(t^3) + 18 |t|^2 - 27 for the SU(2,1) normalization of M.

    ``ratio`` is the positive real lambda with M^* H M = lambda H.  The
    normalization needs no cube roots: |t|^2 = tr*conj(tr)/lambda and
    t^3 = tr^3/det.
    """
    tr = M.trace()
    d = M.det()
    abs2 = tr * tr.conj() / ratio
    cube = tr * tr * tr / d
    re_cube = (cube + cube.conj()) * Fraction(1, 2)
    return abs2 * abs2 - 8 * re_cube + 18 * abs2 - 27


def classify_isometry(M: Matrix, H: HermForm, precision_cap: int = 256) -> IsometryClass:
    """Elliptic / parabolic / loxodromic classification of M in PU(2,1).

    Loxodromic and regular elliptic elements are separated by the sign of the
    trace discriminant; its zero set (parabolic or repeated-eigenvalue
    elliptic) is split by squarefreeness of the minimal polynomial.
    """
    if M.shape != (3, 3):
        raise ShapeMismatch("classify_isometry expects a 3x3 matrix")
    lam = unitary_ratio(M, H)
    if lam is None:
        raise PreconditionError("M does not preserve the form up to scalar")
    if not lam.is_real() or real_sign(lam) is not Sign.POSITIVE:
        raise PreconditionError("M preserves the form only with a non-positive ratio")
    if M.is_scalar():
        return IsometryClass(IsometryTag.SCALAR, 0.0)
    f = goldman_discriminant(M, lam)
    margin = float(embed(f, 64).value.real)
    if f.is_zero():
        tag = IsometryTag.ELLIPTIC if min_poly_squarefree(M) else IsometryTag.PARABOLIC
        return IsometryClass(tag, 0.0, f)
    try:
        s = real_sign(f, max_precision=precision_cap)
    except PrecisionExhausted:
        return IsometryClass(IsometryTag.NEAR_DEGENERATE, margin, f)
    tag = IsometryTag.LOXODROMIC if s is Sign.POSITIVE else IsometryTag.ELLIPTIC
    return IsometryClass(tag, margin, f)
