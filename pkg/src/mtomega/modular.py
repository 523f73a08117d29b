"""Finite-side arithmetic: harmonic and omega sums mod p, Bernoulli numbers.

Residues are plain ints in [0, p); the prime is always explicit in the call
or carried by the surrounding table.  Batch results are assembled into
ResidueTable objects, rows indexed by generators and columns by an increasing
list of primes (a truncation of an element of the ring that identifies
families agreeing at all but finitely many primes).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import words
from .errors import DenominatorError, LengthError, RangeError

#: A residue is an int reduced into [0, p).
Residue = int


def primes_upto(n: int) -> list[int]:
    """All primes <= n by sieve."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, v in enumerate(sieve) if v]


def primes_in(lo: int, hi: int) -> list[int]:
    """Primes p with lo < p < hi."""
    return [p for p in primes_upto(hi - 1) if p > lo]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, int(n**0.5) + 1):
        if n % d == 0:
            return False
    return True


@functools.lru_cache(maxsize=256)
def _inverses(p: int) -> tuple:
    """Inverse table mod p: inv[m] for 1 <= m < p (inv[0] unused)."""
    inv = [0] * p
    if p > 1:
        inv[1] = 1
    for m in range(2, p):
        inv[m] = (-(p // m) * inv[p % m]) % p
    return tuple(inv)


def hsum_mod(index, p: int) -> Residue:
    """Multiple harmonic sum H_p(index) mod p.

    Nested sum over p > m_1 > ... > m_r > 0 of the product of m_a^(-k_a),
    computed by one prefix-sum pass per index entry.
    """
    index = words.check_index(index)
    if not index:
        return 1 % p
    inv = _inverses(p)
    level = [0] * p  # level[m] = sum over chains starting at m_a = m
    for m in range(1, p):
        level[m] = pow(inv[m], index[-1], p)
    for ka in reversed(index[:-1]):
        prefix = 0
        new = [0] * p
        for m in range(1, p):
            new[m] = pow(inv[m], ka, p) * prefix % p
            prefix = (prefix + level[m]) % p
        level = new
    return sum(level) % p


@functools.lru_cache(maxsize=None)
def _power_array(p: int, k: int) -> np.ndarray:
    inv = _inverses(p)
    arr = np.zeros(p, dtype=np.int64)
    for m in range(1, p):
        arr[m] = pow(inv[m], k, p)
    return arr


@functools.lru_cache(maxsize=None)
def _omega_mod_sorted(index, p: int) -> Residue:
    c = _power_array(p, index[0])
    for ka in index[1:]:
        c = np.convolve(c, _power_array(p, ka))[: p + 1] % p
    return int(c[p]) if len(c) > p else 0


def omega_mod(index, p: int) -> Residue:
    """omega_p(index) mod p: sum over compositions m_1+...+m_r = p of the
    product m_a^(-k_a), via convolution of power arrays.  Needs r >= 2."""
    index = words.check_index(index)
    if len(index) < 2:
        raise LengthError(f"omega_mod needs length >= 2, got {index}")
    if p < len(index):
        return 0
    # symmetric in the index, so cache on the sorted tuple
    return _omega_mod_sorted(tuple(sorted(index, reverse=True)), p)


def zeta_word_mod(u: words.WordSum, p: int) -> Residue:
    """Linear extension of w -> hsum_mod(index_of_word(w), p)."""
    total = 0
    for w, c in u.items():
        if c.denominator % p == 0:
            raise DenominatorError(f"coefficient {c} has denominator divisible by {p}")
        cm = c.numerator * pow(c.denominator, p - 2, p) % p
        total = (total + cm * hsum_mod(words.index_of_word(w), p)) % p
    return total


@functools.lru_cache(maxsize=256)
def _bernoulli_mod(p: int) -> tuple:
    """B_0..B_{p-3} mod p via the binomial recurrence (B_1 = -1/2)."""
    n = p - 3
    inv = _inverses(p)
    bern = [0] * (n + 1)
    bern[0] = 1
    # Pascal row C(m+1, j) built incrementally
    for m in range(1, n + 1):
        row = [1]
        for j in range(1, m + 2):
            row.append(row[-1] * (m + 2 - j) % p * inv[j] % p)
        s = 0
        for j in range(m):
            s = (s + row[j] * bern[j]) % p
        bern[m] = -s * inv[m + 1] % p
    return tuple(bern)


def bern_div_mod(k: int, p: int) -> Residue:
    """B_{p-k}/k mod p; defined for 2 <= k <= p-2.

    For k even (p-k odd >= 3) the Bernoulli number vanishes outright; for k
    odd the index p-k is even and at most p-3, inside the p-integral range of
    the recurrence table.
    """
    if not 2 <= k <= p - 2:
        raise RangeError(f"need 2 <= k <= p-2, got k={k}, p={p}")
    idx = p - k
    if idx % 2 == 1 and idx >= 3:
        return 0
    return _bernoulli_mod(p)[idx] * _inverses(p)[k % p] % p


@dataclass(frozen=True)
class ResidueTable:
    """Residues of a list of generators over an increasing list of primes."""

    labels: tuple
    primes: tuple
    rows: tuple  # rows[i][j] = residue of generator i at primes[j]
    dropped: tuple  # primes removed because some cell hit a DenominatorError

    def to_csv(self) -> str:
        lines = ["index," + ",".join(str(p) for p in self.primes)]
        for label, row in zip(self.labels, self.rows):
            lines.append(label + "," + ",".join(str(v) for v in row))
        return "\n".join(lines) + "\n"


def format_index(index) -> str:
    return ".".join(str(k) for k in index)


def parse_index(s: str):
    try:
        parts = tuple(int(x) for x in s.split("."))
    except ValueError:
        raise ValueError(f"bad index syntax (want k1.k2.k3): {s!r}") from None
    return words.check_index(parts)


def residue_table(generators, primes) -> ResidueTable:
    """Evaluate omega_mod (for indices) or zeta_word_mod (for word sums) on a
    grid of primes.  Primes where any cell raises DenominatorError are dropped
    from every row and reported in the result."""
    generators = list(generators)
    primes = sorted(primes)
    labels = []
    for i, g in enumerate(generators):
        labels.append(format_index(g) if isinstance(g, tuple) else f"w{i}")
    cols = {}
    dropped = []
    for p in primes:
        col = []
        try:
            for g in generators:
                if isinstance(g, tuple):
                    col.append(omega_mod(g, p))
                else:
                    col.append(zeta_word_mod(g, p))
        except DenominatorError:
            dropped.append(p)
            continue
        cols[p] = col
    kept = [p for p in primes if p in cols]
    rows = tuple(tuple(cols[p][i] for p in kept) for i in range(len(generators)))
    return ResidueTable(tuple(labels), tuple(kept), rows, tuple(dropped))
