"""Exact p-adic calculus for rank-one differential operators d/dx - g.

Coefficients live in Q(pi) with pi^(p-1) = -p (a totally ramified degree
p-1 extension), so every norm in sight is p^(rational) and can be tracked
as an exact rational valuation: v(p) = 1, v(pi) = 1/(p-1), and the Gauss
valuation at weight lambda (rho = p^(-lambda)) of sum a_i x^i is
min_i (v(a_i) + i*lambda).

The radius-of-convergence exponent r(lambda) = -log_p R is estimated from
the growth of the symbols b_s of D^s (b_0 = 1, b_(s+1) = b_s' + g b_s):
the solution-side Taylor coefficients are b_s / s!, so

    r(lambda) = max(lambda, limsup_s (v(s!) - v(b_s)_lambda) / s),

with v(s!) = (s - digitsum_p(s)) / (p-1).  Two structural detectors make
the limsup exact at finite s_max (see radius_profile); profiles that fit
neither pattern are flagged rather than guessed at.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import _exactpoly

INF = float("inf")


class NonStabilizedError(RuntimeError):
    """Radius estimate did not stabilize; refusing to certify slopes."""


def _vp_int(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _vp(q: Fraction, p: int):
    if q == 0:
        return INF
    return _vp_int(q.numerator, p) - _vp_int(q.denominator, p)


def digit_sum(s: int, p: int) -> int:
    total = 0
    while s:
        total += s % p
        s //= p
    return total


def factorial_valuation(s: int, p: int) -> Fraction:
    """v_p(s!) = (s - digitsum_p(s)) / (p - 1), normalized so v(p) = 1."""
    if s < 0:
        raise ValueError("s must be >= 0")
    return Fraction(s - digit_sum(s, p), p - 1)


class PiNumber:
    """Element of Q[pi]/(pi^(p-1) + p), coordinates for 1, pi, ..., pi^(p-2).

    For p = 2 this is just Q with pi = -2."""

    __slots__ = ("p", "coords")

    def __init__(self, p: int, coords: Sequence):
        if len(coords) != p - 1:
            raise ValueError(f"need {p - 1} coordinates for p = {p}")
        self.p = p
        self.coords = tuple(Fraction(c) for c in coords)

    @classmethod
    def _raw(cls, p: int, coords: tuple) -> "PiNumber":
        """Internal: coords already a tuple of Fractions (skips rewrapping,
        which dominates the symbol recurrence otherwise)."""
        self = object.__new__(cls)
        self.p = p
        self.coords = coords
        return self

    @classmethod
    def zero(cls, p: int) -> "PiNumber":
        return cls(p, [0] * (p - 1))

    @classmethod
    def one(cls, p: int) -> "PiNumber":
        return cls(p, [1] + [0] * (p - 2))

    @classmethod
    def rational(cls, p: int, a) -> "PiNumber":
        return cls(p, [Fraction(a)] + [0] * (p - 2))

    @classmethod
    def pi(cls, p: int) -> "PiNumber":
        if p == 2:
            return cls(2, [-2])
        return cls(p, [0, 1] + [0] * (p - 3))

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return PiNumber.rational(self.p, other)
        if isinstance(other, PiNumber):
            if other.p != self.p:
                raise ValueError("mixed pi-adic levels")
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PiNumber._raw(self.p, tuple(
            a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return PiNumber._raw(self.p, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PiNumber._raw(self.p, tuple(
            a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = Fraction(other)
        if isinstance(other, Fraction):
            return PiNumber._raw(self.p, tuple(a * other for a in self.coords))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.p
        deg = p - 1
        conv = [Fraction(0)] * (2 * deg - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(o.coords):
                    conv[i + j] += a * b
        out = conv[:deg]
        for k in range(deg, len(conv)):  # pi^(p-1) = -p
            if conv[k]:
                out[k - deg] += -p * conv[k]
        return PiNumber._raw(p, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "PiNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(pi)")
        modulus = [Fraction(self.p)] + [Fraction(0)] * (self.p - 2) + [Fraction(1)]
        inv = _exactpoly.invmod(list(self.coords), modulus)
        inv = inv + [Fraction(0)] * (self.p - 1 - len(inv))
        return PiNumber(self.p, inv[: self.p - 1])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def valuation(self):
        """v(sum a_i pi^i) = min_i (v_p(a_i) + i/(p-1)); INF for zero.
        Exact because the extension is totally ramified (the candidate
        valuations fall in distinct classes mod 1)."""
        vals = [_vp(a, self.p) + Fraction(i, self.p - 1)
                for i, a in enumerate(self.coords) if a != 0]
        return min(vals) if vals else INF

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coords == o.coords

    def __hash__(self):
        return hash((self.p, self.coords))

    def __repr__(self):
        return f"Pi({self.p}){[str(c) for c in self.coords]}"


# -- polynomials over PiNumber (little-endian lists) ---------------------------

def _pp_trim(a):
    a = list(a)
    while a and a[-1].is_zero():
        a.pop()
    return a


def _pp_add(a, b, p):
    out = [PiNumber.zero(p)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] = out[i] + x
    for i, x in enumerate(b):
        out[i] = out[i] + x
    return _pp_trim(out)


def _pp_mul(a, b, p):
    if not a or not b:
        return []
    out = [PiNumber.zero(p)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _pp_trim(out)


def _pp_scale(a, s):
    return [x * s for x in a]


def _pp_derivative(a):
    return _pp_trim([a[i] * i for i in range(1, len(a))])


def _pp_divmod(a, b, p):
    b = _pp_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [PiNumber.zero(p)] * max(0, len(a) - len(b) + 1)
    inv_lead = b[-1].inverse()
    while len(_pp_trim(a)) >= len(b):
        a = _pp_trim(a)
        shift = len(a) - len(b)
        coef = a[-1] * inv_lead
        q[shift] = coef
        for i, y in enumerate(b):
            a[i + shift] = a[i + shift] - coef * y
    return _pp_trim(q), _pp_trim(a)


def _pp_gcd(a, b, p):
    a, b = _pp_trim(a), _pp_trim(b)
    while b:
        _, r = _pp_divmod(a, b, p)
        a, b = b, r
    if a:
        inv = a[-1].inverse()
        a = [x * inv for x in a]
    return a


def _pp_valuation(a, lam: Fraction):
    """Gauss valuation at weight lam, plus the number of minimizing terms."""
    best = INF
    count = 0
    for j, coef in enumerate(a):
        v = coef.valuation()
        if v is INF:
            continue
        v = v + j * lam
        if v < best:
            best, count = v, 1
        elif v == best:
            count += 1
    return best, count


class RationalFunctionPi:
    """Quotient of polynomials in x over Q(pi); reduced on demand."""

    __slots__ = ("p", "num", "den")

    def __init__(self, p: int, num, den):
        num = _pp_trim([c if isinstance(c, PiNumber) else PiNumber.rational(p, c)
                        for c in num])
        den = _pp_trim([c if isinstance(c, PiNumber) else PiNumber.rational(p, c)
                        for c in den])
        if not den:
            raise ZeroDivisionError("zero denominator")
        self.p = p
        self.num = num
        self.den = den

    @classmethod
    def zero(cls, p: int) -> "RationalFunctionPi":
        return cls(p, [], [PiNumber.one(p)])

    @classmethod
    def constant(cls, p: int, c) -> "RationalFunctionPi":
        return cls(p, [c], [PiNumber.one(p)])

    @classmethod
    def monomial_ratio(cls, p: int, coef, pole_order: int) -> "RationalFunctionPi":
        """coef / x^pole_order (pole_order >= 0)."""
        den = [PiNumber.zero(p)] * pole_order + [PiNumber.one(p)]
        return cls(p, [coef], den)

    def is_zero(self) -> bool:
        return not self.num

    def reduce(self) -> "RationalFunctionPi":
        g = _pp_gcd(self.num, self.den, self.p)
        if len(g) > 1:
            num, _ = _pp_divmod(self.num, g, self.p)
            den, _ = _pp_divmod(self.den, g, self.p)
            return RationalFunctionPi(self.p, num, den)
        return self

    def __add__(self, other):
        if isinstance(other, (int, Fraction, PiNumber)):
            other = RationalFunctionPi.constant(self.p, other)
        if not isinstance(other, RationalFunctionPi):
            return NotImplemented
        if other.p != self.p:
            raise ValueError("mixed pi-adic levels")
        num = _pp_add(_pp_mul(self.num, other.den, self.p),
                      _pp_mul(other.num, self.den, self.p), self.p)
        den = _pp_mul(self.den, other.den, self.p)
        return RationalFunctionPi(self.p, num, den).reduce()

    __radd__ = __add__

    def __neg__(self):
        return RationalFunctionPi(self.p, [-c for c in self.num], self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PiNumber)):
            return RationalFunctionPi(self.p, _pp_scale(self.num, other), self.den)
        if not isinstance(other, RationalFunctionPi):
            return NotImplemented
        return RationalFunctionPi(self.p, _pp_mul(self.num, other.num, self.p),
                                  _pp_mul(self.den, other.den, self.p)).reduce()

    __rmul__ = __mul__

    def derivative(self) -> "RationalFunctionPi":
        p = self.p
        num = _pp_add(_pp_mul(_pp_derivative(self.num), self.den, p),
                      [-c for c in _pp_mul(self.num, _pp_derivative(self.den), p)],
                      p)
        den = _pp_mul(self.den, self.den, p)
        return RationalFunctionPi(p, num, den)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, PiNumber)):
            other = RationalFunctionPi.constant(self.p, other)
        if not isinstance(other, RationalFunctionPi):
            return NotImplemented
        lhs = _pp_mul(self.num, other.den, self.p)
        rhs = _pp_mul(other.num, self.den, self.p)
        return lhs == rhs

    def __repr__(self):
        return f"RatPi({self.p}; num={self.num}, den={self.den})"


@dataclass(frozen=True)
class GaussWeight:
    """Weight lambda meaning rho = p^(-lambda); lambda > 0 is rho < 1."""

    lam: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))


def gauss_valuation(f: RationalFunctionPi, w: GaussWeight):
    """Gauss valuation of f at weight w: for polynomials min_i(v(a_i)+i*lam),
    extended multiplicatively to quotients.  INF for the zero function."""
    if f.is_zero():
        return INF
    v_num, _ = _pp_valuation(f.num, w.lam)
    v_den, _ = _pp_valuation(f.den, w.lam)
    return v_num - v_den


# -- symbols of D^s -------------------------------------------------------------

def _acc_product(buf, a, b, p):
    """buf[i+j] += a_i * b_j with the pi^(p-1) = -p reduction, accumulating
    raw Fraction coordinates (hot path of the symbol recurrence)."""
    deg = p - 1
    for i, x in enumerate(a):
        xc = x.coords
        for ii in range(deg):
            xa = xc[ii]
            if not xa:
                continue
            for j, y in enumerate(b):
                tgt = buf[i + j]
                yc = y.coords
                for jj in range(deg):
                    yb = yc[jj]
                    if yb:
                        k = ii + jj
                        if k < deg:
                            tgt[k] += xa * yb
                        else:
                            tgt[k - deg] -= p * (xa * yb)


def _symbol_numerators(g: RationalFunctionPi, s_max: int):
    """n_0..n_(s_max) with b_s = n_s / w^s for w = den(g):
    n_(s+1) = n_s' w - s n_s w' + u n_s   (u = num(g)).

    This closed polynomial recurrence avoids quotient-rule denominator
    blowup; b_(s+1) = b_s' + g b_s holds identically."""
    p = g.p
    deg = p - 1
    u, w = g.num, g.den
    wprime = _pp_derivative(w)
    ns = [[PiNumber.one(p)]]
    cur = ns[0]
    for s in range(s_max):
        dcur = _pp_derivative(cur)
        size = 0
        for x, y in ((dcur, w), (cur, wprime), (u, cur)):
            if x and y:
                size = max(size, len(x) + len(y) - 1)
        buf = [[Fraction(0)] * deg for _ in range(size)]
        if dcur and w:
            _acc_product(buf, dcur, w, p)
        if cur and wprime:
            _acc_product(buf, _pp_scale(wprime, -s), cur, p)
        if u and cur:
            _acc_product(buf, u, cur, p)
        nxt = _pp_trim([PiNumber._raw(p, tuple(c)) for c in buf])
        ns.append(nxt)
        cur = nxt
    return ns


def symbol_sequence(g: RationalFunctionPi, s_max: int):
    """b_0..b_(s_max) with b_0 = 1 and b_(s+1) = b_s' + g b_s, so that
    D^s e = b_s e for the rank-one operator d/dx - g on a cyclic vector e."""
    if s_max < 0:
        raise ValueError("s_max must be >= 0")
    p = g.p
    ns = _symbol_numerators(g, s_max)
    out = []
    wpow = [PiNumber.one(p)]
    for s, n in enumerate(ns):
        if not n:
            out.append(RationalFunctionPi.zero(p))
        else:
            out.append(RationalFunctionPi(p, n, wpow))
        if s < len(ns) - 1:
            wpow = _pp_mul(wpow, g.den, p)
    return out


# -- radius profiles -------------------------------------------------------------

@dataclass(frozen=True)
class RadiusSample:
    """One grid point of the profile: r = -log_p R at weight lam."""

    lam: Fraction
    r: Fraction
    stabilized: bool
    method: str              # "robba-clamp" | "power-subsequence" | "unstabilized"
    den_tie: bool = False    # Gauss minimum of den attained by several terms
    raw_estimate: Optional[Fraction] = None   # clamped running max at s_max
    oscillation: Optional[Fraction] = None    # est spread over the last window


@dataclass(frozen=True)
class RadiusProfile:
    """Sampled map lambda -> r(lambda) with endpoint slopes dr/dlambda.

    endpoint_slopes = (slope at the largest rho end, slope at the smallest
    rho end); rho = p^(-lambda), so the largest-rho end is the first
    (smallest-lambda) pair of samples."""

    p: int
    samples: tuple
    endpoint_slopes: tuple

    def points(self):
        return [(s.lam, s.r) for s in self.samples]


DEFAULT_GRID = (Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(3, 2),
                Fraction(2))
DEFAULT_S_MAX = 200


def _estimate_radius(p: int, lam: Fraction, v_b, s_max: int):
    """Exact-structure estimate of r(lam) from the symbol valuations v_b[s]
    (1-based list; INF where b_s = 0).

    (a) If every (v(s!) - v(b_s))/s is <= lam, the max(lam, .) clamp in the
        radius definition is exact: r = lam (maximal-convergence case).
    (b) Else, if the normalization-free estimates 1/(p-1) - v(b_s)/s agree
        at every s = p^k in the tail of the power subsequence, that common
        value is the limsup: along p-power indices the factorial correction
        digitsum/(s(p-1)) is 1/s and the minimal term of the solution's
        coefficient is unique.  The first power may be dropped as a
        transient (the pure-binomial term of a twist can dominate at
        s = p when lam < 1/(p(p-1))) provided at least two later powers,
        spanning a factor p^2 of depths, still agree.
    (c) Otherwise the point is flagged and the clamped running maximum is
        reported."""
    ests = []
    for s in range(1, s_max + 1):
        vb = v_b[s]
        if vb is INF:
            ests.append(None)
        else:
            ests.append((factorial_valuation(s, p) - vb) / s)

    if all(e is None or e <= lam for e in ests):
        return lam, True, "robba-clamp", lam, None

    finite = [e for e in ests if e is not None]
    raw = max([lam] + finite)

    powers = []
    pk = p
    while pk <= s_max:
        powers.append(pk)
        pk *= p
    window = powers[1:] if len(powers) >= 3 else powers
    if len(window) >= 2 and all(v_b[s] is not INF for s in window):
        cands = {Fraction(1, p - 1) - Fraction(v_b[s]) / s for s in window}
        if len(cands) == 1:
            r = max(lam, cands.pop())
            return r, True, "power-subsequence", raw, None

    window = ests[-max(1, -(-s_max // 4)):]
    fin = [e for e in window if e is not None]
    osc = (max(fin) - min(fin)) if fin else None
    return raw, False, "unstabilized", raw, osc


def radius_profile(g: RationalFunctionPi, lam_grid=DEFAULT_GRID,
                   s_max: int = DEFAULT_S_MAX) -> RadiusProfile:
    """Profile of r(lambda) = -log_p R over the weight grid for the rank-one
    operator d/dx - g, with endpoint slopes from exact sample pairs.

    Detection of the limit requires s_max >= p^2 (at least two p-power
    indices); small weights need correspondingly large s_max to resolve
    divergence slower than p^(-1/(lambda(p-1)))."""
    p = g.p
    grid = sorted(Fraction(x) for x in lam_grid)
    if len(grid) < 2:
        raise ValueError("need at least two weights for slopes")
    if any(x <= 0 for x in grid):
        raise ValueError("weights must be positive (rho < 1)")
    ns = _symbol_numerators(g, s_max)
    profiles = [[(j, c.valuation()) for j, c in enumerate(n)
                 if not c.is_zero()] for n in ns]
    den_profile = [(j, c.valuation()) for j, c in enumerate(g.den)
                   if not c.is_zero()]

    samples = []
    for lam in grid:
        den_vals = [v + j * lam for j, v in den_profile]
        v_w = min(den_vals)
        den_tie = den_vals.count(v_w) > 1
        v_b = [None] * (s_max + 1)
        for s in range(1, s_max + 1):
            prof = profiles[s]
            if not prof:
                v_b[s] = INF
            else:
                v_b[s] = min(v + j * lam for j, v in prof) - s * v_w
        r, stab, method, raw, osc = _estimate_radius(p, lam, v_b, s_max)
        samples.append(RadiusSample(lam, r, stab, method, den_tie, raw, osc))

    outer = ((samples[1].r - samples[0].r)
             / (samples[1].lam - samples[0].lam))
    inner = ((samples[-1].r - samples[-2].r)
             / (samples[-1].lam - samples[-2].lam))
    return RadiusProfile(p, tuple(samples), (outer, inner))


def taylor_norm_check(lam: Fraction, r_weight: Fraction, p: int,
                      truncation: int = 8) -> Fraction:
    """Gauss valuation in y of sum_(nu>=1) y^nu / t^(nu+1) with |t| = p^(-lam)
    and y-weight r_weight > lam: the minimum is at nu = 1 with value
    r_weight - 2 lam (the valuation of r/rho^2).  Exercises gauss_valuation
    on the coefficient field; raises if the truncation misses the minimum."""
    lam, r_weight = Fraction(lam), Fraction(r_weight)
    if not r_weight > lam:
        raise ValueError("need r_weight > lam (inner radius strictly smaller)")
    if truncation < 1:
        raise ValueError("truncation too short to attain the minimum")
    w = GaussWeight(lam)
    vals = []
    for nu in range(1, truncation + 1):
        coef = RationalFunctionPi.monomial_ratio(p, 1, nu + 1)  # 1/t^(nu+1)
        vals.append(gauss_valuation(coef, w) + nu * r_weight)
    best = min(vals)
    if vals[0] != best:
        raise ValueError("minimum not attained at nu = 1; truncation invalid")
    assert best == r_weight - 2 * lam
    return best


def robba_index(profile: RadiusProfile) -> int:
    """Index (Euler characteristic) of the operator on a closed annulus:
    d log R / d log rho at the inner radius minus the same at the outer
    radius.  Requires the profile to be stabilized at both ends."""
    s = profile.samples
    if len(s) < 2:
        raise ValueError("profile too short for slopes")
    for sample in (s[0], s[1], s[-2], s[-1]):
        if not sample.stabilized:
            raise NonStabilizedError(
                f"sample at lambda = {sample.lam} is not stabilized")
    slope_outer, slope_inner = profile.endpoint_slopes
    chi = slope_inner - slope_outer
    if chi.denominator != 1:
        raise ValueError(f"non-integral slope difference {chi}")
    return int(chi)


def dwork_twist(g: RationalFunctionPi) -> RationalFunctionPi:
    """Tensor with the rank-one system d/dx - pi/x^2 (the local shape of the
    exponential structure at infinity): defining functions add."""
    p = g.p
    return g + RationalFunctionPi.monomial_ratio(p, PiNumber.pi(p), 2)
