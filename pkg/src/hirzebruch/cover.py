"""Abelian branched covers of line arrangements with exponent n.

The deck group of the cover branched with index n along k lines is modeled
as (Z/n)^k modulo the all-ones vector, so that the product of all the line
generators alpha_D is the identity.  Subgroups are stored as preimages in
(Z/n)^k, always containing the all-ones vector, in reduced row echelon form.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .field import _is_prime


class ArrangementError(ValueError):
    pass


class MixedArrangements(ValueError):
    pass


# -- linear algebra over F_p ---------------------------------------------------------

def rref_mod(rows: Iterable[Sequence[int]], p: int, width: int) -> tuple:
    """Reduced row echelon form over F_p with zero rows dropped."""
    m = [[x % p for x in r] for r in rows]
    out = []
    col = 0
    for col in range(width):
        piv = next((i for i, r in enumerate(m) if r[col]), None)
        if piv is None:
            continue
        r = m.pop(piv)
        inv = pow(r[col], -1, p)
        r = [(x * inv) % p for x in r]
        m = [[(x - s[col] * y) % p for x, y in zip(s, r)] for s in m]
        out = [[(x - s[col] * y) % p for x, y in zip(s, r)] for s in out]
        out.append(r)
    out.sort(key=lambda r: next(i for i, x in enumerate(r) if x))
    return tuple(tuple(r) for r in out)


def nullspace_mod(rows: Sequence[Sequence[int]], p: int, width: int) -> tuple:
    """Basis of {x : r.x = 0 for all rows r} over F_p."""
    R = rref_mod(rows, p, width)
    pivots = [next(i for i, x in enumerate(r) if x) for r in R]
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * width
        v[f] = 1
        for r, pc in zip(R, pivots):
            v[pc] = (-r[f]) % p
        basis.append(tuple(v))
    return tuple(basis)


# -- arrangement -------------------------------------------------------------------

@dataclass(frozen=True)
class Arrangement:
    n: int
    lines: tuple                     # labels
    points: tuple                    # (label, frozenset of line labels)
    forms: Optional[Dict[str, tuple]] = None      # linear form coefficients per line
    coords: Optional[Dict[str, tuple]] = None     # projective coordinates per point

    def __post_init__(self):
        if not _is_prime(self.n):
            raise ArrangementError("exponent n must be prime")
        if len(set(self.lines)) != len(self.lines):
            raise ArrangementError("duplicate line labels")
        for label, ls in self.points:
            if len(ls) < 2:
                raise ArrangementError(f"point {label} lies on fewer than two lines")
            unknown = set(ls) - set(self.lines)
            if unknown:
                raise ArrangementError(f"point {label} uses unknown lines {sorted(unknown)}")

    @property
    def k(self) -> int:
        return len(self.lines)

    def index(self, line: str) -> int:
        try:
            return self.lines.index(line)
        except ValueError:
            raise ArrangementError(f"unknown line {line!r}") from None

    def point_lines(self, label: str) -> frozenset:
        for lab, ls in self.points:
            if lab == label:
                return ls
        raise ArrangementError(f"unknown point {label!r}")

    def multiple_points(self, min_lines: int = 2) -> list:
        return [lab for lab, ls in self.points if len(ls) >= min_lines]

    def triple_points(self) -> list:
        return self.multiple_points(3)

    def double_points(self) -> list:
        return [lab for lab, ls in self.points if len(ls) == 2]

    def points_on(self, line: str) -> list:
        self.index(line)
        return [lab for lab, ls in self.points if line in ls]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "lines": list(self.lines),
            "points": [{"label": lab, "lines": sorted(ls)} for lab, ls in self.points],
        }

    @classmethod
    def from_json(cls, data) -> "Arrangement":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls(int(data["n"]), tuple(data["lines"]),
                       tuple((p["label"], frozenset(p["lines"])) for p in data["points"]))
        except (KeyError, TypeError) as exc:
            raise ArrangementError(f"malformed arrangement: {exc}") from None


def complete_quadrilateral(n: int = 5) -> Arrangement:
    """Six lines D_ab = {z_a = z_b} in P^2 with z_4 = 0.

    Triple points are [1:0:0], [0:1:0], [0:0:1], [1:1:1] (labelled p1..p4);
    double points are D12.D34, D13.D24, D14.D23.
    """
    forms = {
        "D12": (1, -1, 0), "D13": (1, 0, -1), "D14": (1, 0, 0),
        "D23": (0, 1, -1), "D24": (0, 1, 0), "D34": (0, 0, 1),
    }
    coords = {
        "p1": (1, 0, 0), "p2": (0, 1, 0), "p3": (0, 0, 1), "p4": (1, 1, 1),
        "q12": (1, 1, 0), "q13": (1, 0, 1), "q14": (0, 1, 1),
    }
    points = []
    for lab, c in coords.items():
        on = frozenset(l for l, f in forms.items() if sum(a * b for a, b in zip(f, c)) == 0)
        points.append((lab, on))
    return Arrangement(n, tuple(forms), tuple(points), forms, coords)


# -- group elements and subgroups ---------------------------------------------------

@dataclass(frozen=True)
class GaloisElt:
    n: int
    vec: tuple

    def __post_init__(self):
        v = tuple(int(x) % self.n for x in self.vec)
        if v:
            v = tuple((x - v[0]) % self.n for x in v)
        object.__setattr__(self, "vec", v)

    def __add__(self, other: "GaloisElt") -> "GaloisElt":
        if (self.n, len(self.vec)) != (other.n, len(other.vec)):
            raise MixedArrangements("elements of different groups")
        return GaloisElt(self.n, tuple(a + b for a, b in zip(self.vec, other.vec)))

    def __neg__(self):
        return GaloisElt(self.n, tuple(-a for a in self.vec))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k: int) -> "GaloisElt":
        return GaloisElt(self.n, tuple(k * a for a in self.vec))

    __rmul__ = __mul__

    def is_identity(self) -> bool:
        return not any(self.vec)

    def __str__(self):
        return "(" + ",".join(map(str, self.vec)) + ")"


def identity(arr: Arrangement) -> GaloisElt:
    return GaloisElt(arr.n, (0,) * arr.k)


def alpha(arr: Arrangement, line: str) -> GaloisElt:
    v = [0] * arr.k
    v[arr.index(line)] = 1
    return GaloisElt(arr.n, tuple(v))


def loop_around_exceptional(arr: Arrangement, point: str) -> GaloisElt:
    out = identity(arr)
    for line in sorted(arr.point_lines(point)):
        out = out + alpha(arr, line)
    return out


@dataclass(frozen=True)
class GaloisSubgroup:
    n: int
    k: int
    basis: tuple

    @classmethod
    def from_vectors(cls, n: int, k: int, vectors: Iterable[Sequence[int]]) -> "GaloisSubgroup":
        rows = [tuple(v) for v in vectors] + [(1,) * k]
        return cls(n, k, rref_mod(rows, n, k))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __str__(self):
        return "<" + ", ".join("(" + ",".join(map(str, r)) + ")" for r in self.basis) + ">"


def _check(*groups):
    keys = {(g.n, g.k) for g in groups}
    if len(keys) != 1:
        raise MixedArrangements("subgroups of different groups")


def span(elts: Sequence[GaloisElt], arr: Arrangement) -> GaloisSubgroup:
    for e in elts:
        if e.n != arr.n or len(e.vec) != arr.k:
            raise MixedArrangements("element does not belong to this arrangement's group")
    return GaloisSubgroup.from_vectors(arr.n, arr.k, [e.vec for e in elts])


def join(H: GaloisSubgroup, K: GaloisSubgroup) -> GaloisSubgroup:
    _check(H, K)
    return GaloisSubgroup.from_vectors(H.n, H.k, H.basis + K.basis)


def intersect(H: GaloisSubgroup, K: GaloisSubgroup) -> GaloisSubgroup:
    _check(H, K)
    ann = nullspace_mod(H.basis, H.n, H.k) + nullspace_mod(K.basis, K.n, K.k)
    if not ann:
        return H
    return GaloisSubgroup.from_vectors(H.n, H.k, nullspace_mod(ann, H.n, H.k))


def order(H: GaloisSubgroup) -> int:
    return H.n ** (H.dim - 1)


def full_group(arr: Arrangement) -> GaloisSubgroup:
    return GaloisSubgroup.from_vectors(arr.n, arr.k, [alpha(arr, l).vec for l in arr.lines])


def group_order(arr: Arrangement) -> int:
    return order(full_group(arr))


def index_in_full(H: GaloisSubgroup) -> int:
    return H.n ** (H.k - 1) // order(H)


def contains(H: GaloisSubgroup, g: GaloisElt) -> bool:
    if g.n != H.n or len(g.vec) != H.k:
        raise MixedArrangements("element and subgroup from different groups")
    return GaloisSubgroup.from_vectors(H.n, H.k, H.basis + (g.vec,)).dim == H.dim


def quotient_order(H: GaloisSubgroup, K: GaloisSubgroup) -> int:
    """|H / K| for K inside H."""
    _check(H, K)
    if join(H, K).dim != H.dim:
        raise ValueError("K is not contained in H")
    return order(H) // order(K)


def stabilizer(arr: Arrangement, point: str) -> GaloisSubgroup:
    return span([alpha(arr, l) for l in sorted(arr.point_lines(point))], arr)


# -- curves, Euler characteristics and components ------------------------------------

def fiber_cardinality(arr: Arrangement, m: int) -> int:
    if not 0 <= m <= arr.k:
        raise ValueError("m must lie between 0 and k")
    return arr.n ** (arr.k - 1 - m)


def branched_euler(d: int, e0: int, r: int, n: int) -> int:
    """Euler characteristic of a degree-d cover of a base with Euler number e0,
    branched with index n over r points."""
    if d % n:
        raise ValueError(f"ramification index {n} does not divide degree {d}")
    return d * (e0 - r) + r * (d // n)


def genus_from_euler(e: int) -> int:
    if (2 - e) % 2:
        raise ValueError(f"Euler characteristic {e} gives a non-integer genus")
    return (2 - e) // 2


GENERIC = "generic"


def component_group(arr: Arrangement, curve: str) -> GaloisSubgroup:
    """Subgroup preserving one component of the preimage of ``curve``.

    ``curve`` is ``"generic"`` (a smooth conic of the pencil through the
    triple points) or a line label.
    """
    if curve == GENERIC:
        gens = [loop_around_exceptional(arr, p) for p in arr.triple_points()]
    else:
        gens = [alpha(arr, curve)] + [loop_around_exceptional(arr, p)
                                      for p in arr.points_on(curve)
                                      if len(arr.point_lines(p)) >= 3]
    return span(gens, arr)


def component_count(arr: Arrangement, curve: str) -> int:
    return index_in_full(component_group(arr, curve))


@dataclass(frozen=True)
class CurveStats:
    curve: str
    degree: int
    branch_points: int
    total_euler: int
    components: int
    component_euler: int
    component_genus: int

    def to_json(self) -> dict:
        return dict(self.__dict__)


def curve_stats(arr: Arrangement, curve: str) -> CurveStats:
    """Riemann-Hurwitz data of the preimage of a P^1 in the cover."""
    full = arr.n ** (arr.k - 1)
    if curve == GENERIC:
        degree = full
        branch = len(arr.triple_points())
    else:
        degree = full // arr.n      # alpha_D fixes the preimage of D pointwise
        branch = len([p for p in arr.points_on(curve) if len(arr.point_lines(p)) >= 3]) + \
            len([p for p in arr.points_on(curve) if len(arr.point_lines(p)) == 2])
    total = branched_euler(degree, 2, branch, arr.n)
    comps = component_count(arr, curve)
    per = branched_euler(degree // comps, 2, branch, arr.n)
    if per * comps != total:
        raise ArithmeticError("Riemann-Hurwitz totals disagree")
    return CurveStats(curve, degree, branch, total, comps, per, genus_from_euler(per))


@dataclass(frozen=True)
class SingularFiberReport:
    singular_values: int
    stein_degree: int
    singular_fiber_count: int
    components_per_fiber: int
    component_genus: int
    nodes_per_fiber: int
    points_per_I_set: int
    smoothed_genus: int
    generic_genus: int

    @property
    def consistent(self) -> bool:
        return self.smoothed_genus == self.generic_genus

    def to_json(self) -> dict:
        d = dict(self.__dict__)
        d["consistent"] = self.consistent
        return d


def singular_fiber_report(arr: Optional[Arrangement] = None) -> SingularFiberReport:
    arr = arr or complete_quadrilateral()
    generic = curve_stats(arr, GENERIC)
    doubles = arr.double_points()
    # each singular conic is the pair of lines through a double point
    pair = sorted(arr.point_lines(doubles[0]))
    line_stats = [curve_stats(arr, l) for l in pair]
    # C -> P^1 has degree = number of generic components; it is branched with
    # index n over each singular value, so n-fold fewer fibers lie over it
    stein_degree = generic.components
    fibers_per_value = stein_degree // arr.n
    count = len(doubles) * fibers_per_value
    comps = sum(s.components for s in line_stats) // fibers_per_value
    nodes = fiber_cardinality(arr, 2) // fibers_per_value
    genus = line_stats[0].component_genus
    if any(s.component_genus != genus for s in line_stats):
        raise ArithmeticError("singular fiber components of different genus")
    smoothed = comps * genus + nodes - comps + 1
    return SingularFiberReport(
        singular_values=len(doubles), stein_degree=stein_degree,
        singular_fiber_count=count, components_per_fiber=comps, component_genus=genus,
        nodes_per_fiber=nodes, points_per_I_set=line_stats[1].components // fibers_per_value,
        smoothed_genus=smoothed, generic_genus=generic.component_genus)


# -- local charts at a triple point ---------------------------------------------------

def _solve3(cols, rhs):
    """Solve a 3x3 rational system given by columns."""
    M = [[Fraction(cols[j][i]) for j in range(3)] + [Fraction(rhs[i])] for i in range(3)]
    for c in range(3):
        piv = next(r for r in range(c, 3) if M[r][c] != 0)
        M[c], M[piv] = M[piv], M[c]
        M[c] = [x / M[c][c] for x in M[c]]
        for r in range(3):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return tuple(M[i][3] for i in range(3))


@dataclass(frozen=True)
class LocalChart:
    """Chart data at a multiple point: lines ordered through-p first, l_k last."""
    point: str
    order: tuple          # line labels l_1 .. l_k
    m: int
    abc: tuple            # (alpha_s, beta_s, gamma_s) for s = 1 .. k-1


def local_chart(arr: Arrangement, point: str) -> LocalChart:
    if arr.forms is None:
        raise ArrangementError("arrangement carries no linear forms")
    through = sorted(arr.point_lines(point))
    others = [l for l in arr.lines if l not in through]
    order = tuple(through + others)
    f = arr.forms
    l1, l2, lk = f[order[0]], f[order[1]], f[order[-1]]
    abc = []
    for s in order[:-1]:
        abc.append(_solve3((l1, l2, lk), f[s]))
    return LocalChart(point, order, len(through), tuple(abc))


@dataclass(frozen=True)
class Root:
    """An n-th root known through its n-th power."""
    power: Fraction

    def __mul__(self, other: "Root") -> "Root":
        return Root(self.power * other.power)


def chart_roundtrip_check(samples: int = 100, seed: int = 0,
                          arr: Optional[Arrangement] = None) -> dict:
    """Exact check of chi o rho = tau o sigma on random points of the Y-chart."""
    arr = arr or complete_quadrilateral()
    n = arr.n
    rng = random.Random(seed)
    charts = [local_chart(arr, p) for p in arr.triple_points()]

    def rnd():
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    def run(chart, v1, v21):
        k, m = len(chart.order), chart.m
        al = [a for a, _, _ in chart.abc]
        be = [b for _, b, _ in chart.abc]
        ga = [c for _, _, c in chart.abc]
        w1 = v1 ** n
        w21 = v21 ** n
        # Y-chart point: (w1, w21, v1, v_{s|1} for s <= m, v_s for s > m)
        vs1 = [Root(al[s] + be[s] * w21) for s in range(1, m)]
        vs = [Root(al[s] * w1 + be[s] * w1 * w21 + ga[s]) for s in range(m, k - 1)]
        y_ok = (Root(v1 ** n).power == w1 and vs1[0].power == w21)
        # rho into the X-chart
        rv1 = Root(v1 ** n)
        xw1, xw2 = w1, w21 * w1
        xv = [rv1] + [r * rv1 for r in vs1] + vs
        x_ok = xv[0].power == xw1 and xv[1].power == xw2 and all(
            xv[s].power == al[s] * xw1 + be[s] * xw2 + ga[s] for s in range(2, k - 1))
        chi_rho = (xw1, xw2)
        sig = (w1, w21)
        tau_sigma = (sig[0], sig[1] * sig[0])
        return y_ok and x_ok and chi_rho == tau_sigma

    passed = failed = 0
    boundary = [(Fraction(0), Fraction(3, 2)), (Fraction(0), Fraction(0))]
    cases = [(charts[i % len(charts)], rnd(), rnd()) for i in range(samples)]
    extra = [(c, a, b) for c in charts for a, b in boundary]
    for chart, v1, v21 in cases:
        if run(chart, v1, v21):
            passed += 1
        else:
            failed += 1
    boundary_ok = all(run(c, a, b) for c, a, b in extra)
    return {"samples": samples, "seed": seed, "passed": passed, "failed": failed,
            "boundary_cases_passed": boundary_ok}


def monodromy_lift(arr: Arrangement, point: Optional[str] = None,
                   line: Optional[str] = None) -> GaloisElt:
    """Deck transformation of the lift of a small loop.

    With ``point`` the loop goes once around the exceptional curve over it
    (w1 -> e^{it} w1 at fixed generic w_{2|1}); with ``line`` around that
    line at a generic point; with neither it is the constant loop.  The
    exponent of v_s is the winding number of l_s / l_k along the loop.
    """
    if point is not None and line is not None:
        raise ValueError("give a point or a line, not both")
    vec = [0] * arr.k
    if point is not None:
        chart = local_chart(arr, point)
        w21 = Fraction(1, 7)
        for s, (a, b, c) in enumerate(chart.abc):
            # l_s / l_k = (a + b w21) w1 + c along the loop: winds once iff c = 0
            if c == 0 and a + b * w21 != 0:
                vec[arr.index(chart.order[s])] = 1
    elif line is not None:
        vec[arr.index(line)] = 1
    return GaloisElt(arr.n, tuple(vec))
