"""Exact arithmetic in the cyclotomic field Q(zeta_n) for a prime conductor n.

Elements are stored in the power basis ``1, z, ..., z^(n-2)`` (``z = exp(2 pi i/n)``)
reduced modulo ``1 + z + ... + z^(n-1)``.  Numeric embeddings use interval
arithmetic, so sign decisions are certified.
"""
from __future__ import annotations

import enum
import threading
from fractions import Fraction
from typing import NamedTuple


from mpmath.ctx_iv import MPIntervalContext
from mpmath.ctx_mp import MPContext

from . import kernels

DEFAULT_CONDUCTOR = 5
DEFAULT_SIGN_PRECISION_CAP = 4096


class ConductorMismatch(ValueError):
    pass


class PrecisionExhausted(ArithmeticError):
    """Interval refinement hit the precision cap before separating a value from 0."""


class Sign(enum.Enum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    def __str__(self):
        return self.name.lower()


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class CycloNum:
    """An element of Q(zeta_n), immutable and hashable."""

    __slots__ = ("conductor", "_nums", "_den", "_hash")

    def __init__(self, coeffs, conductor: int = DEFAULT_CONDUCTOR):
        if not _is_prime(conductor):
            raise ValueError(f"conductor must be prime, got {conductor}")
        fr = [_as_fraction(c) for c in coeffs]
        if len(fr) != conductor - 1:
            raise ValueError(f"expected {conductor - 1} coefficients, got {len(fr)}")
        den = 1
        for c in fr:
            den = den * c.denominator // _gcd(den, c.denominator)
        nums, den = kernels.normalize(tuple(int(c * den) for c in fr), den)
        self.conductor = conductor
        self._nums = nums
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, n: int, nums: tuple, den: int) -> "CycloNum":
        obj = object.__new__(cls)
        obj.conductor = n
        obj._nums = nums
        obj._den = den
        obj._hash = None
        return obj

    @classmethod
    def from_poly(cls, coeffs, conductor: int = DEFAULT_CONDUCTOR) -> "CycloNum":
        """Reduce an arbitrary polynomial in ``z`` (coefficient list, low degree first)."""
        n = conductor
        folded = [Fraction(0)] * n
        for i, c in enumerate(coeffs):
            folded[i % n] += _as_fraction(c)
        top = folded[n - 1]
        return cls([folded[i] - top for i in range(n - 1)], n)

    @classmethod
    def rational(cls, r, conductor: int = DEFAULT_CONDUCTOR) -> "CycloNum":
        return cls([r] + [0] * (conductor - 2), conductor)

    @classmethod
    def zeta(cls, k: int = 1, conductor: int = DEFAULT_CONDUCTOR) -> "CycloNum":
        coeffs = [0] * conductor
        coeffs[k % conductor] = 1
        return cls.from_poly(coeffs, conductor)

    # -- accessors -----------------------------------------------------------

    @property
    def coeffs(self) -> tuple:
        return tuple(Fraction(c, self._den) for c in self._nums)

    @property
    def kernel_pair(self) -> tuple:
        return self._nums, self._den

    def is_zero(self) -> bool:
        return not any(self._nums)

    def is_rational(self) -> bool:
        return not any(self._nums[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._nums[0], self._den)

    def is_real(self) -> bool:
        return self == self.conj()

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> "CycloNum":
        if isinstance(other, CycloNum):
            if other.conductor != self.conductor:
                raise ConductorMismatch(
                    f"conductors differ: {self.conductor} vs {other.conductor}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNum.rational(other, self.conductor)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNum._raw(self.conductor,
                             *kernels.add(self._nums, self._den, other._nums, other._den))

    __radd__ = __add__

    def __neg__(self):
        return CycloNum._raw(self.conductor, tuple(-c for c in self._nums), self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNum._raw(self.conductor,
                             *kernels.mul(self._nums, self._den, other._nums,
                                          other._den, self.conductor))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = CycloNum.rational(1, self.conductor)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloNum.rational(other, self.conductor)
        if not isinstance(other, CycloNum):
            return NotImplemented
        return (self.conductor == other.conductor and self._den == other._den
                and self._nums == other._nums)

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._nums[0], self._den))
            else:
                self._hash = hash((self.conductor, self._nums, self._den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def conj(self) -> "CycloNum":
        """Complex conjugation, z -> z^(n-1)."""
        return self.galois(-1)

    def galois(self, k: int) -> "CycloNum":
        """The Galois automorphism z -> z^k (k prime to n)."""
        n = self.conductor
        if k % n == 0:
            raise ValueError("k must be prime to the conductor")
        poly = [0] * n
        for i, c in enumerate(self._nums):
            if c:
                poly[(i * k) % n] += c
        top = poly[n - 1]
        nums = tuple(poly[i] - top for i in range(n - 1))
        return CycloNum._raw(n, *kernels.normalize(nums, self._den))

    def inverse(self) -> "CycloNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_n)")
        if self.is_rational():
            return CycloNum.rational(1 / self.to_rational(), self.conductor)
        n = self.conductor
        cyclotomic = [Fraction(1)] * n
        s, g = _poly_inverse_mod(list(self.coeffs), cyclotomic)
        return CycloNum.from_poly([c / g for c in s], n)

    # -- numerics ------------------------------------------------------------

    def to_complex(self) -> complex:
        v = embed(self, 60).value
        return complex(v)

    # -- display / serialization ----------------------------------------------

    def __repr__(self):
        return f"CycloNum({self}, conductor={self.conductor})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {"conductor": self.conductor, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "CycloNum":
        return cls([Fraction(c) for c in data["coeffs"]], int(data["conductor"]))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = _trim(list(a))
    b = _trim(list(b))
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / b[-1]
        q[shift] = f
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        _trim(a)
    return q, a


def _poly_inverse_mod(a, m):
    """Return (s, g) with s*a = g (mod m) and g a nonzero constant."""
    # extended Euclid, tracking only the cofactor of ``a``
    r0, r1 = _trim(list(m)), _trim(list(a))
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        prod = [Fraction(0)] * (len(q) + len(s1))
        for i, x in enumerate(q):
            for j, y in enumerate(s1):
                prod[i + j] += x * y
        s_new = [Fraction(0)] * max(len(s0), len(prod))
        for i, x in enumerate(s0):
            s_new[i] += x
        for i, x in enumerate(prod):
            s_new[i] -= x
        r0, r1 = r1, r
        s0, s1 = s1, _trim(s_new) or [Fraction(0)]
    if not r1:
        raise ZeroDivisionError("element is not invertible")
    return s1, r1[0]


# -- module-level operation names -------------------------------------------

def cyclo_add(a: CycloNum, b: CycloNum) -> CycloNum:
    return a + b


def cyclo_mul(a: CycloNum, b: CycloNum) -> CycloNum:
    return a * b


def cyclo_neg(a: CycloNum) -> CycloNum:
    return -a


def cyclo_conj(a: CycloNum) -> CycloNum:
    return a.conj()


def cyclo_inverse(a: CycloNum) -> CycloNum:
    return a.inverse()


def zeta(k: int = 1, conductor: int = DEFAULT_CONDUCTOR) -> CycloNum:
    return CycloNum.zeta(k, conductor)


def rational(r, conductor: int = DEFAULT_CONDUCTOR) -> CycloNum:
    return CycloNum.rational(r, conductor)


#: exp(2 pi i 3/5), fixed throughout the package
MU = CycloNum.zeta(3, 5)


class Embedding(NamedTuple):
    value: object   # mpmath mpc midpoint
    radius: object  # mpmath mpf bound on |true value - midpoint|
    real: object    # mpmath interval enclosing the real part
    imag: object    # mpmath interval enclosing the imaginary part


_contexts = threading.local()


def _ctx(precision: int):
    # mpmath contexts carry mutable precision; keep one pair per thread
    if not hasattr(_contexts, "iv"):
        _contexts.iv = MPIntervalContext()
        _contexts.mp = MPContext()
    _contexts.iv.prec = precision
    _contexts.mp.prec = precision
    return _contexts.iv, _contexts.mp


def embed(a: CycloNum, precision: int = 53) -> Embedding:
    """Evaluate ``a`` at z = exp(2 pi i/n) with a rigorous error radius."""
    n = a.conductor
    ivc, mpc = _ctx(precision + 10)
    if a.is_zero():
        zero = ivc.mpf(0)
        return Embedding(mpc.mpc(0), mpc.mpf(0), zero, zero)
    re = ivc.mpf(0)
    im = ivc.mpf(0)
    for i, c in enumerate(a._nums):
        if not c:
            continue
        if i == 0:
            re += ivc.mpf(c)
            continue
        angle = 2 * ivc.pi * i / n
        re += ivc.mpf(c) * ivc.cos(angle)
        im += ivc.mpf(c) * ivc.sin(angle)
    den = ivc.mpf(a._den)
    re = re / den
    im = im / den
    rlo, rhi = (mpc.mpf(x) for x in re._mpi_)
    ilo, ihi = (mpc.mpf(x) for x in im._mpi_)
    value = mpc.mpc((rlo + rhi) / 2, (ilo + ihi) / 2)
    radius = (rhi - rlo) / 2 + (ihi - ilo) / 2
    return Embedding(value, radius, re, im)


def real_sign(a: CycloNum, max_precision: int = DEFAULT_SIGN_PRECISION_CAP,
              start_precision: int = 64) -> Sign:
    """Exact sign of a real element of Q(zeta_n).

    Zero is decided exactly; otherwise the embedding is refined until the
    enclosing interval excludes 0.  Raises :class:`PrecisionExhausted` past
    ``max_precision`` bits.
    """
    if not a.is_real():
        raise ValueError(f"real_sign needs a real element, got {a}")
    if a.is_zero():
        return Sign.ZERO
    prec = start_precision
    while prec <= max_precision:
        re = embed(a, prec).real
        lo, hi = re._mpi_
        if lo[0] == 0 and lo[1] != 0:   # lower endpoint strictly positive
            return Sign.POSITIVE
        if hi[0] == 1 and hi[1] != 0:   # upper endpoint strictly negative
            return Sign.NEGATIVE
        prec *= 2
    raise PrecisionExhausted(f"sign of {a} undecided at {max_precision} bits")
