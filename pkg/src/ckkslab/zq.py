"""Scalar and vectorized arithmetic mod word-sized NTT primes.

Scalar helpers use Python integers (exact at any width) and exist mostly
as references and for precomputation. The hot paths are the numpy
routines, which stay exact for moduli below 2^60: the float80 quotient
estimate is off by at most 1, which the correction step absorbs.
"""

from __future__ import annotations

import numpy as np
import sympy

from .counters import count_adds, count_mults

U64 = np.uint64
_F80 = np.longdouble  # 64-bit mantissa on x86; required for the mulmod trick


# ---------------------------------------------------------------- primes

def gen_ntt_prime(bits: int, n: int, exclude: tuple[int, ...] = ()) -> int:
    """Smallest `bits`-bit prime p with p = 1 (mod 2n), skipping `exclude`.

    p = 1 (mod 2n) guarantees a 2n-th root of unity, which the negacyclic
    NTT of size n needs. Deterministic so parameter sets are reproducible.
    """
    step = 2 * n
    p = (1 << (bits - 1)) + 1
    p += (-(p - 1)) % step  # align to 1 mod 2n
    while p < (1 << bits):
        if p not in exclude and sympy.isprime(p):
            return p
        p += step
    raise ValueError(f"no {bits}-bit prime = 1 mod {step}")


def gen_ntt_prime_near(bits: int, n: int, exclude: tuple[int, ...] = ()) -> int:
    """Prime p = 1 (mod 2n) closest to 2^bits, skipping `exclude`.

    Rescale moduli must track the scale tightly: a prime off by a
    factor drifts every rescaled scale by that factor, and sums of
    values that went through different rescale chains stop aligning.
    Searching both sides of 2^bits keeps |p/2^bits - 1| ~ 2^-30.
    """
    step = 2 * n
    target = 1 << bits
    base = target + 1 - ((target) % step)  # = 1 mod 2n, just below target
    for k in range(1_000_000):
        for p in (base + k * step, base - k * step):
            if p > 2 and p not in exclude and sympy.isprime(p):
                return p
    raise ValueError(f"no prime = 1 mod {step} near 2^{bits}")


def gen_prime_chain(n: int, q0_bits: int, scale_bits: int, levels: int,
                    special_bits: int, special_count: int) -> tuple[list[int], list[int]]:
    """Build (chain, special) moduli for a CKKS instance.

    chain[0] is the base prime near 2^q0_bits, followed by `levels`
    rescale primes near 2^scale_bits. The special primes back the
    raised basis used during key switching.
    """
    used: list[int] = []
    chain = [gen_ntt_prime_near(q0_bits, n, tuple(used))]
    used += chain
    for _ in range(levels):
        p = gen_ntt_prime_near(scale_bits, n, tuple(used))
        chain.append(p)
        used.append(p)
    special = []
    for _ in range(special_count):
        p = gen_ntt_prime_near(special_bits, n, tuple(used))
        special.append(p)
        used.append(p)
    return chain, special


def primitive_root_2n(q: int, n: int) -> int:
    """A primitive 2n-th root of unity mod q (q prime, q = 1 mod 2n)."""
    g = sympy.primitive_root(q)
    psi = pow(g, (q - 1) // (2 * n), q)
    assert pow(psi, n, q) == q - 1  # psi^n = -1: negacyclic order is exact
    return psi


# ---------------------------------------------------------------- scalar

def mod_add(a: int, b: int, q: int) -> int:
    c = a + b
    return c - q if c >= q else c


def mod_sub(a: int, b: int, q: int) -> int:
    c = a - b
    return c + q if c < 0 else c


def mul_mod(a: int, b: int, q: int) -> int:
    """Barrett-flavored reference; Python ints make it exact outright."""
    return a * b % q


def pow_mod(a: int, e: int, q: int) -> int:
    return pow(a, e, q)


def inv_mod(a: int, q: int) -> int:
    return pow(a, -1, q)


def shoup_precompute(y: int, q: int) -> int:
    """Precomputed companion word floor(y * 2^64 / q) for shoup_mul."""
    return (y << 64) // q


def shoup_mul(x: int, y: int, y_shoup: int, q: int) -> int:
    """Multiply by the constant y using its precomputed companion.

    One high multiply replaces the generic reduction; classic trick for
    twiddle factors where y is fixed across many x.
    """
    qhat = (x * y_shoup) >> 64
    r = (x * y - qhat * q) & ((1 << 64) - 1)
    return r - q if r >= q else r


def lazy_sum(values: list[int], q: int) -> int:
    """Accumulate without per-term reduction, reducing only on overflow risk.

    Terms are assumed < q < 2^60; a 64-bit accumulator fits 16 terms
    between reductions. Returns the fully reduced sum.
    """
    acc = 0
    budget = (1 << 64) - 1
    for v in values:
        acc += v
        if acc > budget - (q - 1):
            acc %= q
    return acc % q


# ------------------------------------------------------------- vectorized

def vec_addmod(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    count_adds(max(a.size, np.size(b)))
    c = a + b  # q < 2^63 so uint64 cannot wrap on one add
    return np.where(c >= U64(q), c - U64(q), c)


def vec_submod(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    count_adds(max(a.size, np.size(b)))
    c = a - b
    return np.where(a < b, c + U64(q), c)


def vec_negmod(a: np.ndarray, q: int) -> np.ndarray:
    return np.where(a == 0, a, U64(q) - a)


def vec_mulmod(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    """Elementwise a*b mod q, exact for q < 2^60.

    Estimate the quotient in float80, take the residual in wrapping
    uint64 arithmetic, then fix the off-by-one the estimate can carry.
    """
    count_mults(max(a.size, np.size(b)))
    qq = U64(q)
    af = a.astype(_F80)
    bf = b.astype(_F80)
    quo = (af * bf / _F80(q)).astype(U64)
    with np.errstate(over="ignore"):
        r = a * b - quo * qq  # exact mod 2^64
    # |true - est| <= 1, so r is in (-q, 2q) viewed as signed
    r = np.where(r.astype(np.int64) < 0, r + qq, r)
    r = np.where(r >= qq, r - qq, r)
    return r


def vec_mulmod_scalar(a: np.ndarray, y: int, q: int) -> np.ndarray:
    return vec_mulmod(a, U64(y), q)  # broadcasts; avoids materializing y


def lazy_accumulate(acc: np.ndarray, term: np.ndarray) -> np.ndarray:
    """acc += term without reduction; counted as adds. Caller guards overflow."""
    count_adds(term.size)
    acc += term
    return acc


def vec_reduce(acc: np.ndarray, q: int) -> np.ndarray:
    """Reduce a lazily accumulated vector; costed as one mult per element."""
    count_mults(acc.size)
    return acc % U64(q)
