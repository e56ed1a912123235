"""The pencil of conics through [1:0:0], [0:1:0], [0:0:1], [1:1:1].

Everything here is over Q.  The map is
    [z1:z2:z3] -> [(z1 - z3) z2 : z1 (z2 - z3)],
undefined exactly at the four base points.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence


class BasePointError(ValueError):
    pass


class IndeterminateValue(ValueError):
    pass


class Degenerate(ValueError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not accepted; use int, str or Fraction")
    return Fraction(x)


@dataclass(frozen=True, init=False)
class ProjPoint:
    """Point of P^1 or P^2, stored as primitive integers with last nonzero entry positive."""

    coords: tuple

    def __init__(self, *coords):
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        c = [_frac(x) for x in coords]
        if len(c) not in (2, 3):
            raise ValueError("projective points have 2 or 3 coordinates")
        if not any(c):
            raise IndeterminateValue("all coordinates are zero")
        den = lcm(*(x.denominator for x in c))
        ints = [int(x * den) for x in c]
        g = 0
        for x in ints:
            g = gcd(g, x)
        last = next(x for x in reversed(ints) if x)
        s = g if last > 0 else -g
        object.__setattr__(self, "coords", tuple(x // s for x in ints))

    @classmethod
    def parse(cls, text: str) -> "ProjPoint":
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"expected [a:b] or [a:b:c], got {text!r}")
        try:
            return cls(*(Fraction(p.strip()) for p in body[1:-1].split(":")))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad projective point {text!r}: {exc}") from None

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __str__(self):
        return "[" + ":".join(str(x) for x in self.coords) + "]"

    def to_json(self) -> list:
        return [str(x) for x in self.coords]


BASE_POINTS = (ProjPoint(1, 0, 0), ProjPoint(0, 1, 0), ProjPoint(0, 0, 1), ProjPoint(1, 1, 1))
SINGULAR_VALUES = (ProjPoint(1, 0), ProjPoint(0, 1), ProjPoint(1, 1))


def _pencil_pair(z1, z2, z3):
    return (z1 - z3) * z2, z1 * (z2 - z3)


def pencil_eval(p: ProjPoint) -> ProjPoint:
    if len(p) != 3:
        raise ValueError("pencil_eval expects a point of P^2")
    a, b = _pencil_pair(*p.coords)
    if a == 0 and b == 0:
        raise BasePointError(f"{p} is a base point of the pencil")
    return ProjPoint(a, b)


W_CHART = "w"
W_PRIME_CHART = "w'"


def blowup_chart_eval(chart: str, coords: Sequence) -> ProjPoint:
    """The pencil in the two charts of the blow-up at [0:0:1].

    ``w`` chart: (w1, w21) with w2 = w21 w1; ``w'`` chart: (w12, w2) with
    w1 = w12 w2.  The exceptional curve is w1 = 0 (resp. w2 = 0).
    """
    x, y = (_frac(c) for c in coords)
    if chart == W_CHART:
        a, b = (x - 1) * y, x * y - 1
    elif chart == W_PRIME_CHART:
        a, b = y * x - 1, x * (y - 1)
    else:
        raise ValueError(f"unknown chart {chart!r}")
    if a == 0 and b == 0:
        raise IndeterminateValue(f"pencil is indeterminate at {chart}-chart point {tuple(coords)}")
    return ProjPoint(a, b)


# -- conics -------------------------------------------------------------------------

@dataclass(frozen=True)
class ConicForm:
    """Symmetric 3x3 rational matrix S of the quadratic form z^T S z."""
    matrix: tuple

    def __post_init__(self):
        m = tuple(tuple(_frac(x) for x in r) for r in self.matrix)
        if len(m) != 3 or any(len(r) != 3 for r in m):
            raise ValueError("conic form must be 3x3")
        if any(m[i][j] != m[j][i] for i in range(3) for j in range(3)):
            raise ValueError("conic form must be symmetric")
        object.__setattr__(self, "matrix", m)

    def __call__(self, z: Sequence) -> Fraction:
        z = [_frac(x) for x in z]
        return sum(self.matrix[i][j] * z[i] * z[j] for i in range(3) for j in range(3))

    def det(self) -> Fraction:
        m = self.matrix
        return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))

    def combine(self, a, other: "ConicForm", b) -> "ConicForm":
        a, b = _frac(a), _frac(b)
        return ConicForm(tuple(tuple(a * x + b * y for x, y in zip(r, s))
                               for r, s in zip(self.matrix, other.matrix)))

    def to_json(self) -> list:
        return [[str(x) for x in r] for r in self.matrix]


H = Fraction(1, 2)
P_FORM = ConicForm(((0, H, 0), (H, 0, -H), (0, -H, 0)))   # (z1 - z3) z2
Q_FORM = ConicForm(((0, H, -H), (H, 0, 0), (-H, 0, 0)))   # z1 (z2 - z3)


def fiber_equation(v: ProjPoint) -> ConicForm:
    """mu P - lambda Q for v = [lambda : mu]."""
    if len(v) != 2:
        raise ValueError("fiber_equation expects a point of P^1")
    lam, mu = v.coords
    return P_FORM.combine(mu, Q_FORM, -lam)


def is_singular_fiber(v: ProjPoint) -> bool:
    return fiber_equation(v).det() == 0


def _discriminant_cubic() -> list:
    """Coefficients c0..c3 (low first) of det(P - t Q), by exact interpolation."""
    ts = [Fraction(i) for i in range(4)]
    vals = [P_FORM.combine(1, Q_FORM, -t).det() for t in ts]
    # Newton divided differences, then expand
    coef = list(vals)
    for j in range(1, 4):
        for i in range(3, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (ts[i] - ts[i - j])
    poly = [Fraction(0)] * 4
    for i in range(3, -1, -1):
        # poly = poly * (t - ts[i]) + coef[i]
        shifted = [Fraction(0)] + poly[:-1]
        poly = [s - ts[i] * p for s, p in zip(shifted, poly)]
        poly[0] += coef[i]
    return poly


def _rational_roots(poly: list) -> list:
    while poly and poly[-1] == 0:
        poly = poly[:-1]
    if len(poly) <= 1:
        return []
    den = lcm(*(c.denominator for c in poly))
    ints = [int(c * den) for c in poly]
    if ints[0] == 0:
        return [Fraction(0)] + _rational_roots([Fraction(c) for c in ints[1:]])

    def divisors(x):
        x = abs(x)
        return [d for d in range(1, x + 1) if x % d == 0]

    roots = []
    for p in divisors(ints[0]):
        for q in divisors(ints[-1]):
            for s in (1, -1):
                r = Fraction(s * p, q)
                if r not in roots and sum(c * r ** i for i, c in enumerate(ints)) == 0:
                    roots.append(r)
    return roots


def singular_values() -> list:
    """All [lambda:mu] with a singular fiber, found from the exact discriminant."""
    cubic = _discriminant_cubic()
    out = []
    if cubic[3] == 0:
        out.append(ProjPoint(1, 0))
    for t in _rational_roots(cubic):
        out.append(ProjPoint(t, 1))
    return sorted(set(out), key=lambda p: p.coords)


# -- configurations of points on P^1 -----------------------------------------------------

def _det(u: ProjPoint, v: ProjPoint) -> int:
    return u[0] * v[1] - u[1] * v[0]


def cross_ratio(v1: ProjPoint, v2: ProjPoint, v3: ProjPoint, v4: ProjPoint) -> ProjPoint:
    d14, d24 = _det(v1, v4), _det(v2, v4)
    if d14 == 0 or d24 == 0:
        raise Degenerate("cross ratio undefined: coincident points")
    a = Fraction(_det(v1, v3), d14)
    b = Fraction(_det(v2, v3), d24)
    if a == 0 and b == 0:
        raise Degenerate("cross ratio undefined: coincident points")
    return ProjPoint(a, b)


def config5(v1, v2, v3, v4, v5) -> ProjPoint:
    vs = (v1, v2, v3)
    dens = [_det(v, v5) for v in vs]
    if any(d == 0 for d in dens):
        raise Degenerate("configuration undefined: coincident points")
    vals = [Fraction(_det(v, v4), d) for v, d in zip(vs, dens)]
    if not any(vals):
        raise Degenerate("configuration undefined: coincident points")
    return ProjPoint(*vals)


def _random_p1(rng: random.Random, height: int = 9) -> ProjPoint:
    while True:
        a, b = rng.randint(-height, height), rng.randint(-height, height)
        if a or b:
            return ProjPoint(a, b)


def _distinct_p1(rng: random.Random, k: int) -> list:
    pts: list = []
    while len(pts) < k:
        p = _random_p1(rng)
        if p not in pts:
            pts.append(p)
    return pts


def commutativity_check(samples: int = 500, seed: int = 0) -> dict:
    """pencil_eval(config5(v)) == cross_ratio(v1..v4) on random distinct 5-tuples."""
    rng = random.Random(seed)
    passed = failed = swapped_differ = 0
    for _ in range(samples):
        v = _distinct_p1(rng, 5)
        if pencil_eval(config5(*v)) == cross_ratio(*v[:4]):
            passed += 1
        else:
            failed += 1
        if pencil_eval(config5(v[0], v[1], v[2], v[4], v[3])) != cross_ratio(*v[:4]):
            swapped_differ += 1
    # v3 = v4 forces the value [1:1]
    forced = []
    for _ in range(5):
        v = _distinct_p1(rng, 4)
        tup = (v[0], v[1], v[2], v[2], v[3])
        forced.append(pencil_eval(config5(*tup)) == cross_ratio(*tup[:4]) == ProjPoint(1, 1))
    return {"samples": samples, "seed": seed, "passed": passed, "failed": failed,
            "forced_singular_value_passed": all(forced),
            "swapped_last_two_differ": swapped_differ}


def lefschetz_coords(p: ProjPoint) -> tuple:
    z1, z2, z3 = p.coords
    if z1 == 0 or z2 == z3:
        raise Degenerate(f"{p} lies outside the chart")
    return Fraction(z1 - z3, z1), Fraction(z2, z2 - z3)


def lefschetz_chart_check(samples: int = 200, seed: int = 0) -> dict:
    """pencil_eval == [xy : 1] in the chart x = (z1-z3)/z1, y = z2/(z2-z3)."""
    rng = random.Random(seed)
    passed = failed = 0
    done = 0
    while done < samples:
        z = [rng.randint(-9, 9) for _ in range(3)]
        if not any(z):
            continue
        p = ProjPoint(*z)
        if p.coords[0] == 0 or p.coords[1] == p.coords[2] or p in BASE_POINTS:
            continue
        x, y = lefschetz_coords(p)
        if pencil_eval(p) == ProjPoint(x * y, 1):
            passed += 1
        else:
            failed += 1
        done += 1
    return {"samples": samples, "seed": seed, "passed": passed, "failed": failed}
