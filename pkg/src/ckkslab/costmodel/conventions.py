"""Modular-operation counts per slot for the accounting model.

Everything here is symbolic: counts are derived from loop structure, not
measured. All figures are per slot of the ring (multiply by N for totals)
so they stay independent of the ring degree until a report is assembled.

The number-theoretic transform is charged (log2 N)/2 multiplies and
log2 N adds per limb-slot (radix-2 butterflies); a basis conversion
charges the inverse-hat scaling once per source limb, then per output
limb the s source products, the two-op centering correction (skipped
for single-limb sources where the estimate is exact), and the s-term
accumulation.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class OpCount:
    mults: float = 0.0
    adds: float = 0.0

    def __add__(self, other: "OpCount") -> "OpCount":
        return OpCount(self.mults + other.mults, self.adds + other.adds)

    def __mul__(self, k: float) -> "OpCount":
        return OpCount(self.mults * k, self.adds * k)

    __rmul__ = __mul__

    @property
    def total(self) -> float:
        return self.mults + self.adds


@dataclass(frozen=True)
class RnsShape:
    """Limb bookkeeping at one level: alpha-limb digits, fixed specials."""
    alpha: int
    k_sp: int

    def beta(self, ell: int) -> int:
        return -(-ell // self.alpha)

    def raised(self, ell: int) -> int:
        return ell + self.k_sp

    def digit_sizes(self, ell: int) -> list[int]:
        full, rem = divmod(ell, self.alpha)
        return [self.alpha] * full + ([rem] if rem else [])


class PaperOps:
    """Operation counts as the accounting tables define them."""

    def __init__(self, logn2: int):
        self.logn2 = logn2  # log2 of the ring degree

    def ntt(self, limbs: float) -> OpCount:
        return OpCount(limbs * self.logn2 / 2, limbs * self.logn2)

    intt = ntt

    def prescale(self, src: int) -> OpCount:
        return OpCount(src, 0)

    def bc_out(self, src: int, targets: int) -> OpCount:
        m = src + (2 if src > 1 else 0)
        a = src if src > 1 else 0
        return OpCount(m * targets, a * targets)

    def combine(self, limbs: int) -> OpCount:
        return OpCount(limbs, limbs)

    def modup(self, src: int, targets: int) -> OpCount:
        return (self.intt(src) + self.prescale(src)
                + self.bc_out(src, targets) + self.ntt(targets))

    def moddown(self, keep: int, drop: int) -> OpCount:
        return (self.intt(drop) + self.prescale(drop)
                + self.bc_out(drop, keep) + self.ntt(keep)
                + self.combine(keep) + OpCount(2, 0))

    def rescale(self, ell: int) -> OpCount:
        return (self.intt(1) + self.prescale(1)
                + self.bc_out(1, ell - 1) + self.ntt(ell - 1)
                + self.combine(ell - 1))

    def kskip(self, beta: int, raised: int) -> OpCount:
        return OpCount(2 * beta * raised, 2 * (beta - 1) * raised)

    def decomp(self, ell: int) -> OpCount:
        return OpCount(2 * ell, 0)

    def tensor(self, ell: int) -> OpCount:
        return OpCount(4 * ell, 4 * ell)

    def ptct(self, npoly: int, ell: int) -> OpCount:
        return OpCount(1.5 * npoly * ell, 0)

    def add(self, npoly: int, ell: int) -> OpCount:
        return OpCount(0, npoly * ell)

    def automorph(self, npoly: int, ell: int) -> OpCount:
        return OpCount(0, 0)

    def pmodup(self, ell: int) -> OpCount:
        # plaintext raise: scaling pass only, transforms reused
        return OpCount(ell, 0)
