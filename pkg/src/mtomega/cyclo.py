"""Exact arithmetic in cyclotomic fields and q-series evaluation.

Elements of Q(zeta_n) are stored as an integer coefficient vector of length
phi(n) (a polynomial in zeta reduced mod the n-th cyclotomic polynomial) over
a single positive integer denominator, kept in lowest terms.  This keeps the
hot loops in plain integer arithmetic; the `coeffs` property exposes the
rational vector.

The evaluators here are the exact counterparts of the finite-side sums:
omega_at_root sums over compositions of n, z_at_root over strictly decreasing
tuples below n, both with the q-power weights F_k(m) = q^((k-1)m)/[m]^k and
F_1hat(m) = q^m/[m], and hbar specializing to 1 - zeta_n.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction

from . import words
from .errors import (
    LengthError,
    NotIntegralError,
    PoleError,
    RangeError,
)
from .words import HAT1, HbarSum


@functools.lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Integer coefficients (ascending) of the n-th cyclotomic polynomial,
    computed by dividing x^n - 1 by the cyclotomic polynomials of the proper
    divisors of n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return (-1, 1)
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divide_exact(num, cyclotomic_poly(d))
    return tuple(num)


def _poly_divide_exact(num, den):
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c % den[-1]:
            raise ArithmeticError("non-exact polynomial division")
        q = c // den[-1]
        out[i - dd] = q
        if q:
            for j, dj in enumerate(den):
                num[i - dd + j] -= q * dj
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return out


class CycloCtx:
    """Shared immutable data for Q(zeta_n): the modulus and small caches."""

    _instances: dict = {}

    def __new__(cls, n: int):
        if n in cls._instances:
            return cls._instances[n]
        if n < 2:
            raise ValueError("need n >= 2")
        self = super().__new__(cls)
        self.n = n
        self.phi_n = cyclotomic_poly(n)
        self.degree = len(self.phi_n) - 1
        self._f_cache = {}
        self._qint_inv = {}
        self._one_minus_zeta_pows = None
        cls._instances[n] = self
        return self

    def __repr__(self):
        return f"CycloCtx({self.n})"

    def _reduce(self, coeffs: list) -> tuple:
        """Reduce an integer polynomial mod the (monic) cyclotomic modulus."""
        deg = self.degree
        phi = self.phi_n
        c = list(coeffs)
        for i in range(len(c) - 1, deg - 1, -1):
            q = c[i]
            if q:
                for j in range(deg + 1):
                    c[i - deg + j] -= q * phi[j]
        c = c[:deg]
        c.extend([0] * (deg - len(c)))
        return tuple(c)


class CycloElem:
    """Element of Q(zeta_n): integer vector over a positive denominator."""

    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx: CycloCtx, num, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        num = list(num)
        if len(num) > ctx.degree:
            num = list(ctx._reduce(num))
        else:
            num.extend([0] * (ctx.degree - len(num)))
        if den < 0:
            num = [-c for c in num]
            den = -den
        g = math.gcd(den, *num) if any(num) else den
        if g > 1:
            num = [c // g for c in num]
            den //= g
        if not any(num):
            den = 1
        self.ctx = ctx
        self.num = tuple(num)
        self.den = den

    # -- constructors ------------------------------------------------------
    @classmethod
    def from_rational(cls, ctx, value) -> "CycloElem":
        value = Fraction(value)
        return cls(ctx, [value.numerator], value.denominator)

    @classmethod
    def zero(cls, ctx) -> "CycloElem":
        return cls(ctx, [])

    @classmethod
    def one(cls, ctx) -> "CycloElem":
        return cls(ctx, [1])

    @classmethod
    def zeta_pow(cls, ctx, j: int) -> "CycloElem":
        j %= ctx.n
        return cls(ctx, [0] * j + [1])

    @classmethod
    def from_coeffs(cls, ctx, coeffs) -> "CycloElem":
        coeffs = [Fraction(c) for c in coeffs]
        den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        return cls(ctx, [int(c * den) for c in coeffs], den)

    # -- views -------------------------------------------------------------
    @property
    def coeffs(self) -> tuple:
        return tuple(Fraction(c, self.den) for c in self.num)

    def __bool__(self):
        return any(self.num)

    def __eq__(self, other):
        if not isinstance(other, CycloElem):
            return NotImplemented
        return self.ctx.n == other.ctx.n and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.ctx.n, self.num, self.den))

    def __repr__(self):
        return f"CycloElem(n={self.ctx.n}, {list(self.coeffs)})"

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other):
        if self.ctx is not other.ctx:
            raise ValueError("mixed cyclotomic contexts")

    def __add__(self, other):
        self._check(other)
        d1, d2 = self.den, other.den
        g = math.gcd(d1, d2)
        m1, m2 = d2 // g, d1 // g
        return CycloElem(
            self.ctx,
            [a * m1 + b * m2 for a, b in zip(self.num, other.num)],
            d1 * m1,
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        e = CycloElem.__new__(CycloElem)
        e.ctx, e.num, e.den = self.ctx, tuple(-c for c in self.num), self.den
        return e

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloElem.from_rational(self.ctx, other)
        self._check(other)
        n1, n2 = self.num, other.num
        conv = [0] * (len(n1) + len(n2) - 1)
        for i, a in enumerate(n1):
            if a:
                for j, b in enumerate(n2):
                    if b:
                        conv[i + j] += a * b
        return CycloElem(self.ctx, conv, self.den * other.den)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = CycloElem.one(self.ctx)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "CycloElem":
        return cyclo_inv(self)

    def to_json(self) -> dict:
        return {"n": self.ctx.n, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "CycloElem":
        ctx = CycloCtx(int(data["n"]))
        return cls.from_coeffs(ctx, [Fraction(c) for c in data["coeffs"]])


def cyclo_inv(x: CycloElem) -> CycloElem:
    """Field inverse via the extended Euclidean algorithm against the modulus."""
    if not x:
        raise ZeroDivisionError("inverse of zero in Q(zeta_n)")
    ctx = x.ctx
    # work over Q[x]: r0 = modulus, r1 = x; keep only the x-cofactor
    r0 = [Fraction(c) for c in ctx.phi_n]
    r1 = [Fraction(c, x.den) for c in x.num]
    t0 = [Fraction(0)]
    t1 = [Fraction(1)]

    def deg(p):
        d = len(p) - 1
        while d >= 0 and not p[d]:
            d -= 1
        return d

    while True:
        d1 = deg(r1)
        if d1 < 0:
            raise ZeroDivisionError("not invertible (should not happen mod Phi_n)")
        if d1 == 0:
            c = r1[0]
            return CycloElem.from_coeffs(ctx, [t / c for t in t1])
        d0 = deg(r0)
        q = [Fraction(0)] * (d0 - d1 + 1)
        r = list(r0)
        for i in range(d0, d1 - 1, -1):
            f = r[i] / r1[d1]
            q[i - d1] = f
            if f:
                for j in range(d1 + 1):
                    r[i - d1 + j] -= f * r1[j]
        # t_next = t0 - q * t1
        tn = [Fraction(0)] * max(len(t0), len(q) + len(t1) - 1)
        for i, c in enumerate(t0):
            tn[i] += c
        for i, a in enumerate(q):
            if a:
                for j, b in enumerate(t1):
                    tn[i + j] -= a * b
        r0, r1 = r1, r
        t0, t1 = t1, tn


def q_int(ctx: CycloCtx, m: int) -> CycloElem:
    """The q-integer [m] = 1 + zeta + ... + zeta^(m-1) at q = zeta_n."""
    if m < 0:
        raise ValueError("m must be >= 0")
    return CycloElem(ctx, [1] * m)


def one_minus_zeta(ctx: CycloCtx) -> CycloElem:
    return CycloElem(ctx, [1, -1])


@functools.lru_cache(maxsize=None)
def _one_minus_zeta_pow(n: int, m: int) -> CycloElem:
    ctx = CycloCtx(n)
    return one_minus_zeta(ctx) ** m


def _qint_inverse(ctx: CycloCtx, m: int) -> CycloElem:
    inv = ctx._qint_inv.get(m)
    if inv is not None:
        return inv
    n = ctx.n
    if math.gcd(m, n) == 1:
        # cyclotomic unit: 1/[m] = (1-zeta)/(1-zeta^m) = sum_{i<m'} zeta^(m i)
        # with m m' = 1 mod n, avoiding the polynomial Euclid entirely
        mi = pow(m, -1, n)
        coeffs = [0] * n
        for i in range(mi):
            coeffs[(m * i) % n] += 1
        inv = CycloElem(ctx, coeffs)
    else:
        qm = q_int(ctx, m)
        if not qm:
            raise PoleError(f"[{m}] = 0 at a primitive {ctx.n}-th root of unity")
        inv = cyclo_inv(qm)
    ctx._qint_inv[m] = inv
    return inv


def _f_weight(ctx: CycloCtx, m: int, k) -> CycloElem:
    """F_k(m) at q = zeta_n: q^((k-1)m)/[m]^k, or q^m/[m] for the hat letter."""
    key = (m, k)
    cached = ctx._f_cache.get(key)
    if cached is not None:
        return cached
    inv = _qint_inverse(ctx, m)
    if k == HAT1:
        val = CycloElem.zeta_pow(ctx, m) * inv
    else:
        val = CycloElem.zeta_pow(ctx, (k - 1) * m) * inv**k
    ctx._f_cache[key] = val
    return val


@functools.lru_cache(maxsize=None)
def _omega_at_root_sorted(index, n: int) -> CycloElem:
    ctx = CycloCtx(n)
    cur = [None] * (n + 1)
    for m in range(1, n):
        cur[m] = _f_weight(ctx, m, index[0])
    for ka in index[1:-1]:
        new = [None] * (n + 1)
        for s in range(2, n):  # partial sums above n - 1 can never complete
            acc = None
            for m in range(1, s):
                prev = cur[s - m]
                if prev is None:
                    continue
                term = prev * _f_weight(ctx, m, ka)
                acc = term if acc is None else acc + term
            new[s] = acc
        cur = new
    if len(index) == 1:
        return cur[n] if cur[n] is not None else CycloElem.zero(ctx)
    # last factor: only the coefficient of the full sum n is needed
    acc = CycloElem.zero(ctx)
    for m in range(1, n):
        prev = cur[n - m]
        if prev is not None:
            acc = acc + prev * _f_weight(ctx, m, index[-1])
    return acc


def omega_at_root(index, n: int) -> CycloElem:
    """omega_n(index; zeta_n) in Q(zeta_n), exactly.

    Sum over compositions m_1 + ... + m_r = n of the product of the F-weights;
    empty when n < r.  Needs r >= 2 (the r = 1 value would involve 1/[n] = 0).
    """
    index = words.check_index(index)
    if len(index) < 2:
        raise LengthError(f"omega_at_root needs length >= 2, got {index}")
    if n < len(index):
        return CycloElem.zero(CycloCtx(n))
    # symmetric in the index
    return _omega_at_root_sorted(tuple(sorted(index, reverse=True)), n)


@functools.lru_cache(maxsize=None)
def _z_at_root_eword(eword, n: int) -> CycloElem:
    ctx = CycloCtx(n)
    if not eword:
        return CycloElem.one(ctx)
    if n <= len(eword):
        return CycloElem.zero(ctx)
    level = [None] * n
    for m in range(1, n):
        level[m] = _f_weight(ctx, m, eword[-1])
    for ka in reversed(eword[:-1]):
        prefix = CycloElem.zero(ctx)
        new = [None] * n
        for m in range(1, n):
            new[m] = _f_weight(ctx, m, ka) * prefix
            if level[m] is not None:
                prefix = prefix + level[m]
        level = new
    total = CycloElem.zero(ctx)
    for m in range(1, n):
        if level[m] is not None:
            total = total + level[m]
    return total


def z_at_root(u, n: int) -> CycloElem:
    """z_n(u) at q = zeta_n for an HbarSum, an extended index, or an index.

    Sum over n > m_1 > ... > m_r > 0 of the product of F-weights; the central
    variable hbar specializes to 1 - zeta_n.
    """
    ctx = CycloCtx(n)
    if not isinstance(u, HbarSum):
        ew = tuple(u)
        for l in ew:
            if l != HAT1 and not (isinstance(l, int) and l >= 1):
                raise ValueError(f"bad letter {l!r}")
        return _z_at_root_eword(ew, n)
    total = CycloElem.zero(ctx)
    for (h, ew), c in u.items():
        term = _z_at_root_eword(ew, n)
        if h:
            term = term * _one_minus_zeta_pow(n, h)
        total = total + term * c
    return total


def reduce_at_one(x: CycloElem, p: int) -> int:
    """Image of x under Z[zeta_p] -> Z[zeta_p]/(1 - zeta_p) = F_p.

    The residue of an integral element is its coefficient sum mod p.  A
    denominator divisible by p is cleared by exact division by 1 - zeta_p,
    using (1-zeta_p)^(p-1) = p * u with u = 1/([1][2]...[p-1]) of residue -1
    (Wilson); non-integral inputs raise NotIntegralError.
    """
    from .modular import is_prime

    if x.ctx.n != p or not is_prime(p):
        raise RangeError(f"reduce_at_one needs a prime context matching p={p}")
    s = 0
    d = x.den
    while d % p == 0:
        d //= p
        s += 1
    if s == 0:
        return sum(x.num) * pow(d % p, p - 2, p) % p if d % p else 0
    ctx = x.ctx
    # c = prod_{j=2}^{p-1} (1 - zeta^j); then (1 - zeta) * c = p up to nothing:
    # dividing by 1 - zeta is multiplying by c and dividing by p.
    c = CycloElem.one(ctx)
    for j in range(2, p):
        c = c * CycloElem(ctx, [1] + [0] * (j - 1) + [-1])
    num = list(x.num)
    for _ in range(s * (p - 1)):
        conv = [0] * (len(num) + ctx.degree)
        for i, a in enumerate(num):
            if a:
                for j, b in enumerate(c.num):
                    if b:
                        conv[i + j] += a * b
        num = list(ctx._reduce(conv))
        if any(v % p for v in num):
            raise NotIntegralError(
                "element is not integral at (1 - zeta_p) after clearing units"
            )
        num = [v // p for v in num]
    res = sum(num) * pow(d % p, p - 2, p) % p
    return (-res) % p if s % 2 else res


def l_series_rational(u, q, order: int) -> list:
    """Truncated q-polylogarithm coefficients u_1..u_order at exact rational q.

    Works for an HbarSum or a plain (extended) index; hbar acts as 1 - q.
    Raises PoleError when some q-integer [m] vanishes for m <= order.
    """
    q = Fraction(q)
    if q == 1:
        raise PoleError("q = 1 is outside the domain")
    qpow = [Fraction(1)]
    for _ in range(order):
        qpow.append(qpow[-1] * q)
    qint = [None] * (order + 1)
    for m in range(1, order + 1):
        val = (1 - qpow[m]) / (1 - q)
        if val == 0:
            raise PoleError(f"[{m}] vanishes at q = {q}")
        qint[m] = val

    def f(m, k):
        if k == HAT1:
            return qpow[m] / qint[m]
        return qpow[m] ** (k - 1) / qint[m] ** k

    def coeffs_for(ew):
        if not ew:
            return [Fraction(0)] * order  # L(1) = 1 has no positive coefficients
        level = [Fraction(0)] * (order + 1)
        for m in range(1, order + 1):
            level[m] = f(m, ew[-1])
        for ka in reversed(ew[:-1]):
            prefix = Fraction(0)
            new = [Fraction(0)] * (order + 1)
            for m in range(1, order + 1):
                new[m] = f(m, ka) * prefix
                prefix += level[m]
            level = new
        return level[1:]

    if not isinstance(u, HbarSum):
        ew = tuple(u)
        return coeffs_for(ew)
    out = [Fraction(0)] * order
    for (h, ew), c in u.items():
        scale = c * (1 - q) ** h
        for i, v in enumerate(coeffs_for(ew)):
            out[i] += scale * v
    return out


def check_q_kamano(index, n: int) -> bool:
    """Exact check of the q-lift of Kamano's theorem:

    omega_n(k; zeta_n) = (-1)^{k_r} sum_j C(k_r-1, j-1) (1-zeta)^{k_r-j}
                         z_n(a^j (e_{k_1} sh_hbar ... sh_hbar e_{k_{r-1}})).
    """
    index = words.check_index(index)
    if len(index) < 2:
        raise LengthError(f"check_q_kamano needs length >= 2, got {index}")
    lhs = omega_at_root(index, n)
    kr = index[-1]
    base = words.shuffle_hbar_many([words.e(k) for k in index[:-1]])
    ctx = CycloCtx(n)
    rhs = CycloElem.zero(ctx)
    for j in range(1, kr + 1):
        coeff = math.comb(kr - 1, j - 1)
        term = z_at_root(words.a_mult(j, base), n)
        if kr - j:
            term = term * _one_minus_zeta_pow(n, kr - j)
        rhs = rhs + coeff * term
    if kr % 2:
        rhs = -rhs
    return lhs == rhs


def check_sym_sum(index, n: int) -> bool:
    """Exact check of the binomial-weighted vanishing sum for all parts >= 2:

    sum_j sum_l {prod_{p<j} C(k_p-2, l_p-2)} C(k_j-2, l_j-1)
                {prod_{p>j} C(k_p-1, l_p-1)}
                (1-zeta)^(sum(k_p-l_p)-1) omega_n(l; zeta_n) = 0.
    """
    index = words.check_index(index)
    r = len(index)
    if r < 2 or any(k < 2 for k in index):
        raise RangeError(f"need r >= 2 and all parts >= 2, got {index}")
    ctx = CycloCtx(n)
    total = CycloElem.zero(ctx)
    import itertools

    for j in range(r):
        ranges = []
        for p, kp in enumerate(index):
            if p < j:
                ranges.append(range(2, kp + 1))
            elif p == j:
                ranges.append(range(1, kp))
            else:
                ranges.append(range(1, kp + 1))
        for ls in itertools.product(*ranges):
            coeff = 1
            for p, (kp, lp) in enumerate(zip(index, ls)):
                if p < j:
                    coeff *= math.comb(kp - 2, lp - 2)
                elif p == j:
                    coeff *= math.comb(kp - 2, lp - 1)
                else:
                    coeff *= math.comb(kp - 1, lp - 1)
            if not coeff:
                continue
            m = sum(index) - sum(ls) - 1
            term = coeff * omega_at_root(ls, n)
            if m:
                term = term * _one_minus_zeta_pow(n, m)
            total = total + term
    return not total
