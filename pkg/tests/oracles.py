"""Independent reference implementations used to pin test expectations.

Everything here is written against the mathematical definitions with
Python big integers, dense matrices, or plain float arithmetic; nothing
imports the package's fast paths. Deliberately slow and obvious.
"""

from __future__ import annotations

import math

import numpy as np

# ------------------------------------------------------------ arithmetic

def oracle_mulmod(a: int, b: int, q: int) -> int:
    return (a * b) % q


_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def oracle_is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond 2^64."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def oracle_ntt_prime(bits: int, n: int, exclude: tuple[int, ...] = ()) -> int:
    """Smallest bits-wide prime = 1 mod 2n, by direct scan."""
    step = 2 * n
    p = (1 << (bits - 1)) + 1
    p += (-(p - 1)) % step
    while p < (1 << bits):
        if p not in exclude and oracle_is_prime(p):
            return p
        p += step
    raise ValueError("exhausted range")


# ------------------------------------------------------ ring arithmetic

def oracle_negacyclic(a: list[int], b: list[int], q: int) -> list[int]:
    """Schoolbook product in Z_q[X]/(X^n + 1)."""
    n = len(a)
    out = [0] * n
    for i in range(n):
        for j in range(n):
            k = i + j
            if k < n:
                out[k] = (out[k] + a[i] * b[j]) % q
            else:
                out[k - n] = (out[k - n] - a[i] * b[j]) % q
    return out


def oracle_automorph_coeff(a: list[int], t: int, q: int) -> list[int]:
    """x(X) -> x(X^t) on coefficients, schoolbook."""
    n = len(a)
    out = [0] * n
    for i in range(n):
        k = i * t % (2 * n)
        if k < n:
            out[k] = (out[k] + a[i]) % q
        else:
            out[k - n] = (out[k - n] - a[i]) % q
    return out


# ------------------------------------------------------------ RNS / CRT

def oracle_crt_lift(residues: list[int], moduli: list[int]) -> int:
    """The unique representative in [0, Q) via the CRT formula."""
    big_q = math.prod(moduli)
    acc = 0
    for r, q in zip(residues, moduli):
        hat = big_q // q
        acc += r * hat * pow(hat, -1, q)
    return acc % big_q


def oracle_fast_bc(residues: list[int], src: list[int], dst: list[int]) -> list[int]:
    """Expected output of the approximate basis conversion.

    Mirrors the definition: X = sum_i [x_i * (Q/q_i)^-1]_{q_i} * (Q/q_i)
    as an exact integer (which equals x + u*Q for small u), reduced into
    each destination modulus.
    """
    big_q = math.prod(src)
    x_tilde = 0
    for r, q in zip(residues, src):
        hat = big_q // q
        x_tilde += (r * pow(hat, -1, q) % q) * hat
    return [x_tilde % p for p in dst]


def oracle_centered_bc(residues: list[int], src: list[int], dst: list[int]) -> list[int]:
    """Expected output of the centered basis conversion.

    Exact rational arithmetic for the wrap count: with v_i the reduced
    products of oracle_fast_bc, k = round(sum v_i / q_i), and the result
    is X - k*Q (the representative of x in [-Q/2, Q/2)) mod each p.
    """
    big_q = math.prod(src)
    x_tilde = 0
    num = 0  # numerator of sum(v_i / q_i) over common denominator Q
    for r, q in zip(residues, src):
        hat = big_q // q
        v = r * pow(hat, -1, q) % q
        x_tilde += v * hat
        num += v * hat  # v/q == v*hat/Q
    k = (2 * num + big_q) // (2 * big_q)
    centered = x_tilde - k * big_q
    return [centered % p for p in dst]


def oracle_moddown(full: list[int], moduli: list[int], keep: int) -> list[int]:
    """Expected limb values of (x - BC_centered([x]_P)) * P^-1 over the kept basis."""
    drop_mods = moduli[keep:]
    tail = oracle_centered_bc(full[keep:], drop_mods, moduli[:keep])
    big_p = math.prod(drop_mods)
    out = []
    for j in range(keep):
        q = moduli[j]
        out.append((full[j] - tail[j]) * pow(big_p, -1, q) % q)
    return out


def oracle_moddown_value(x: int, moduli: list[int], keep: int) -> int:
    """Integer the mod-down result equals: x / P rounded to nearest."""
    big_p = math.prod(moduli[keep:])
    return (2 * x + big_p) // (2 * big_p)


# ----------------------------------------------------------- encoding

def oracle_embedding_roots(n_ring: int) -> np.ndarray:
    """The n_ring/2 evaluation points zeta^{5^j} used by the slot map."""
    two_n = 2 * n_ring
    slots = n_ring // 2
    zeta = np.exp(1j * np.pi / n_ring)
    e = 1
    roots = np.empty(slots, dtype=complex)
    for j in range(slots):
        roots[j] = zeta ** e
        e = e * 5 % two_n
    return roots


def oracle_decode_matrix(n_ring: int) -> np.ndarray:
    """Dense (n_ring/2) x n_ring matrix U with z = U m for real m."""
    slots = n_ring // 2
    roots = oracle_embedding_roots(n_ring)
    k = np.arange(n_ring)
    return roots[:, None] ** k[None, :]


def oracle_encode(z: np.ndarray, n_ring: int, delta: float) -> np.ndarray:
    """Integer coefficient vector via the dense conjugate-embedding inverse."""
    u = oracle_decode_matrix(n_ring)
    m = (np.conj(u).T @ z + u.T @ np.conj(z)) / n_ring
    assert np.max(np.abs(m.imag)) < 1e-6 * max(1.0, np.max(np.abs(m.real)))
    return np.round(delta * m.real).astype(np.int64)


def oracle_decode(m: np.ndarray, n_ring: int, delta: float) -> np.ndarray:
    u = oracle_decode_matrix(n_ring)
    return u @ (np.asarray(m, dtype=float) / delta)


def oracle_slot_dft_matrix(n_ring: int) -> np.ndarray:
    """Dense V with slots = V (m_lo + i m_hi); the map the DFT plans factor."""
    slots = n_ring // 2
    return oracle_decode_matrix(n_ring)[:, :slots]


# ------------------------------------------------- logistic regression

def oracle_poly_sigmoid(coeffs: np.ndarray, x: np.ndarray) -> np.ndarray:
    return np.polyval(coeffs[::-1], x)


def oracle_lr_train(xs: np.ndarray, ys: np.ndarray, iters: int, lr: float,
                    sig_coeffs: np.ndarray) -> tuple[np.ndarray, list[float]]:
    """Plaintext trainer using the same polynomial sigmoid surrogate.

    Follows w <- w + (lr/n) * sum_i sigma(z_i . w) z_i with the label
    folded into z_i = y_i * x_i, the usual reformulation.
    """
    n, _ = xs.shape
    z = xs * ys[:, None]
    w = np.zeros(xs.shape[1])
    losses = []
    for _ in range(iters):
        margin = z @ w
        sig = oracle_poly_sigmoid(sig_coeffs, -margin)
        w = w + (lr / n) * (sig @ z)
        losses.append(float(np.mean(np.log1p(np.exp(-np.clip(z @ w, -30, 30))))))
    return w, losses
