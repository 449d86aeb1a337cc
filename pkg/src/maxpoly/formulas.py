"""Closed-form volumes of unit-diameter polytopes and the counting formulas.

V(n, k) denotes the largest volume of an n-dimensional polytope with k
vertices and diameter 1. Volumes are carried in log space so that large n
(the limit ratios are evaluated at n = 10**6) does not underflow; while the
plain float is representable it is kept too, since exp(log) loses a few
digits once the logs are large.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .pentagon.area import area_A, best_area, x0_of_r

EXACT_FACTORIAL_MAX = 20
DIRECT_MAX = 150  # 2**n and n! still fit a double
R_LIMIT = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class VolumeResult:
    n: int
    k: int
    log_volume: float
    provenance: str
    direct: float | None = None

    @property
    def volume(self) -> float:
        if self.direct:
            return self.direct
        return math.exp(self.log_volume)

    def as_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "volume": self.volume, "logVolume": self.log_volume,
                "provenance": self.provenance}


@dataclass(frozen=True)
class CountResult:
    parameter: int
    value: Fraction

    @property
    def is_integer(self) -> bool:
        return self.value.denominator == 1

    def as_dict(self) -> dict:
        return {"parameter": self.parameter, "numerator": self.value.numerator,
                "denominator": self.value.denominator, "isInteger": self.is_integer,
                "value": float(self.value)}


def _int(n, name: str, lo: int) -> int:
    if isinstance(n, bool) or int(n) != n:
        raise DomainError(f"{name} must be an integer")
    n = int(n)
    if n < lo:
        raise DomainError(f"{name} must be >= {lo}, got {n}")
    return n


def log_factorial(n: int) -> float:
    if n <= EXACT_FACTORIAL_MAX:
        return math.log(math.factorial(n))
    return math.lgamma(n + 1)


def v_simplex(n: int) -> VolumeResult:
    """V(n, n+1): the regular n-simplex of unit edge, sqrt((n+1)/2^n)/n!."""
    n = _int(n, "n", 1)
    logv = 0.5 * (math.log(n + 1) - n * math.log(2.0)) - log_factorial(n)
    direct = math.sqrt((n + 1) / 2.0**n) / math.factorial(n) if n <= DIRECT_MAX else None
    return VolumeResult(n, n + 1, logv, "regular simplex", direct)


def v_n_plus_2(n: int) -> VolumeResult:
    """V(n, n+2) = sqrt(n/2^(n-1))/n!, the double pyramid over V(n-1, n)."""
    n = _int(n, "n", 2)
    logv = 0.5 * (math.log(n) - (n - 1) * math.log(2.0)) - log_factorial(n)
    direct = math.sqrt(n / 2.0 ** (n - 1)) / math.factorial(n) if n <= DIRECT_MAX else None
    return VolumeResult(n, n + 2, logv, "double pyramid", direct)


def v_n_plus_2_recursive(n: int) -> VolumeResult:
    n = _int(n, "n", 2)
    base = v_simplex(n - 1)
    direct = base.direct / n if base.direct else None
    return VolumeResult(n, n + 2, base.log_volume - math.log(n), "double pyramid (recursion)", direct)


def v2k_odd(k: int) -> VolumeResult:
    """V(2, k) for odd k: the regular k-gon of unit diameter."""
    k = _int(k, "k", 3)
    if k % 2 == 0:
        raise DomainError("the regular-polygon formula holds for odd k only")
    v = 0.5 * k * math.cos(math.pi / k) * math.tan(math.pi / (2 * k))
    return VolumeResult(2, k, math.log(v), "regular odd polygon", v)


def circumradius(n: int) -> float:
    """Circumradius of the unit-edge simplex P1..P(n-1), written as in the n-dim argument."""
    n = _int(n, "n", 3)
    return (n - 2) / (n - 1) * math.sqrt((n - 1) / (2 * (n - 2)))


def r_of_n(n) -> float:
    """Apex cap of the planar pentagon problem in dimension n; n may be math.inf."""
    if n == math.inf:
        return R_LIMIT
    n = _int(n, "n", 3)
    return math.sqrt(1.0 - (n - 2) / (2 * (n - 1)))


def v_n_plus_3(n: int) -> VolumeResult:
    """V(n, n+3) = A(r, x0(r)) / n * V(n-2, n-1) with r = r_of_n(n)."""
    n = _int(n, "n", 3)
    area = best_area(r_of_n(n)).area
    base = v_simplex(n - 2)
    direct = area / n * base.direct if base.direct else None
    return VolumeResult(n, n + 3, math.log(area) - math.log(n) + base.log_volume, "pyramidal pentagon", direct)


def octahedral_bound(n: int) -> float:
    """Upper bound (1/n) V(2,4) V(n-2, n-1) for the octahedral combinatorial type."""
    n = _int(n, "n", 3)
    base = v_simplex(n - 2)
    if base.direct:
        return 0.5 / n * base.direct
    return math.exp(math.log(0.5) - math.log(n) + base.log_volume)


def volume(n: int, k: int) -> VolumeResult:
    """Dispatch V(n, k) to whichever closed form covers it."""
    n = _int(n, "n", 2)
    k = _int(k, "k", n + 1)
    if k == n + 1:
        return v_simplex(n)
    if k == n + 2:
        return v_n_plus_2(n)
    # the n+3 formula needs n >= 3; in the plane k = 5 is the regular pentagon
    if n == 2 and k % 2 == 1:
        return v2k_odd(k)
    if k == n + 3:
        return v_n_plus_3(n)
    raise DomainError(f"V({n},{k}) is not known in closed form")


# -- height sweep for n = 3 ------------------------------------------------


def pyramid_volume_at_height(h: float) -> float:
    """(1/3) h A(r, x0(r)) with r = sqrt(1 - h^2/4): best pyramidal volume at apex distance h."""
    if not 0.0 <= h <= 1.0:
        raise DomainError("h must lie in [0, 1]")
    if h == 0.0:
        return 0.0
    r = math.sqrt(1.0 - h * h / 4.0)
    return h / 3.0 * area_A(r, x0_of_r(r))


@dataclass(frozen=True)
class HeightSweep:
    argmax: float
    maximum: float
    profile: list[tuple[float, float]]

    def as_dict(self) -> dict:
        return {"argmax": self.argmax, "maximum": self.maximum,
                "profile": [{"h": h, "volume": v} for h, v in self.profile]}


def _golden_max(f, a: float, b: float, tol: float = 1e-12) -> tuple[float, float]:
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    c, d = b - inv * (b - a), a + inv * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - inv * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv * (b - a)
            fd = f(d)
    cands = [(f(x), x) for x in (a, b, 0.5 * (a + b))]
    fx, x = max(cands)
    return x, fx


def v36_h_sweep(grid_size: int = 101) -> HeightSweep:
    grid_size = _int(grid_size, "grid_size", 2)
    hs = [i / (grid_size - 1) for i in range(grid_size)]
    profile = [(h, pyramid_volume_at_height(h)) for h in hs]
    i = max(range(grid_size), key=lambda t: (profile[t][1], -t))
    lo, hi = hs[max(i - 1, 0)], hs[min(i + 1, grid_size - 1)]
    h_best, v_best = _golden_max(pyramid_volume_at_height, lo, hi)
    if profile[i][1] > v_best:
        h_best, v_best = profile[i]
    return HeightSweep(h_best, v_best, profile)


# -- limit ratios ------------------------------------------------------------


def limit_ratios(n: int) -> tuple[float, float]:
    """n V(n,n+2)/V(n-1,n) and n V(n,n+3)/V(n-2,n-1), computed in log space."""
    n = _int(n, "n", 3)
    pairs = ((v_n_plus_2(n), v_simplex(n - 1)), (v_n_plus_3(n), v_simplex(n - 2)))
    out = []
    for top, base in pairs:
        if top.direct and base.direct:
            out.append(n * top.direct / base.direct)
        else:
            out.append(math.exp(math.log(n) + top.log_volume - base.log_volume))
    return out[0], out[1]


# -- counting formulas -------------------------------------------------------


def totient(n: int) -> int:
    n = _int(n, "n", 1)
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def trackleation_count(m: int) -> CountResult:
    """Linear thrackleations of the 2m-gon.

    (1/8m) sum_{d | m, d odd} phi(d) 4^(m/d) + 4^(m-2) + 2^(m-1) - 1, in exact
    rationals. m = 1 gives 3/4, so the formula is presumably meant for m >= 2.
    """
    m = _int(m, "m", 1)
    s = sum(totient(d) * 4 ** (m // d) for d in range(1, m + 1, 2) if m % d == 0)
    value = Fraction(s, 8 * m) + Fraction(4) ** (m - 2) + 2 ** (m - 1) - 1
    return CountResult(m, value)


def bender_wormald(k: int) -> CountResult:
    """C(4k-10, k+2) / (972 (k-1)(2k-5)(3k-6)): approximate count of 3D combinatorial types."""
    k = _int(k, "k", 4)
    return CountResult(k, Fraction(math.comb(4 * k - 10, k + 2), 972 * (k - 1) * (2 * k - 5) * (3 * k - 6)))


def non_integer_trackleation_counts(ms) -> list[CountResult]:
    return [c for c in map(trackleation_count, ms) if not c.is_integer]
