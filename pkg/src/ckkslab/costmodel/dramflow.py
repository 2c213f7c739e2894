"""DRAM traffic accounting in limb units (one unit = N * 8 bytes).

Kernels are modeled as streaming passes over whole limbs. A limb-local
transform (NTT) holds one limb in cache; a slot-ordered basis conversion
streams its source block column-wise and emits target limbs one at a
time. Fusion keeps a single producer-consumer chain on-chip when it only
needs a constant number of limbs resident; the transposition between
slot-ordered and limb-ordered passes always forces a round trip at the
base tier.

Cache tiers widen what stays resident:
  - digit tier (beta_caching): decomposed digits are read from DRAM once
    per hoisted rotation group instead of once per rotation.
  - digit-width tier (alpha_caching): a digit's source block and the limb
    under construction fit on-chip, so basis-conversion intermediates
    (coefficient copies and pre-transform outputs) never round-trip.
  - accumulator tier (accumulator_caching): key-switch accumulators stay
    resident between the inner product and the modulus switch, removing
    the parking writes and their re-reads.
  - limb_reordering: conversion outputs are emitted in the order the
    key-switch inner product consumes them, so the new limbs stream
    straight in instead of round-tripping through DRAM.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .conventions import RnsShape


@dataclass(frozen=True)
class Traffic:
    reads: float = 0.0
    writes: float = 0.0
    keys: float = 0.0

    def __add__(self, other: "Traffic") -> "Traffic":
        return Traffic(self.reads + other.reads, self.writes + other.writes,
                       self.keys + other.keys)

    def __mul__(self, k: float) -> "Traffic":
        return Traffic(self.reads * k, self.writes * k, self.keys * k)

    __rmul__ = __mul__

    @property
    def total(self) -> float:
        return self.reads + self.writes + self.keys


@dataclass(frozen=True)
class OptimizationSet:
    fusion_o1: bool = True
    address_mapping: bool = True
    beta_caching: bool = False
    alpha_caching: bool = False
    accumulator_caching: bool = False
    limb_reordering: bool = False
    merged_moddown_rescale: bool = False
    hoisted_moddown_matvec: bool = False
    key_compression: bool = False

    def __post_init__(self):
        if self.beta_caching and not self.fusion_o1:
            raise ValueError("beta_caching builds on fusion_o1")
        if self.alpha_caching and not self.beta_caching:
            raise ValueError("alpha_caching builds on beta_caching")

    def with_flags(self, **kw) -> "OptimizationSet":
        return replace(self, **kw)

    @classmethod
    def none(cls) -> "OptimizationSet":
        return cls(fusion_o1=False, address_mapping=False)

    @classmethod
    def all_on(cls) -> "OptimizationSet":
        return cls(beta_caching=True, alpha_caching=True,
                   accumulator_caching=True, limb_reordering=True,
                   merged_moddown_rescale=True, hoisted_moddown_matvec=True,
                   key_compression=True)


BASELINE = OptimizationSet()

# Without producer-consumer fusion every kernel boundary in a conversion
# pipeline round-trips; the inflation below adds those extra limb trips.
UNFUSED_NTT_TRIPS = 2.0   # separate transform pass: own read + write


def key_factor(f: OptimizationSet) -> float:
    return 0.5 if f.key_compression else 1.0


def modups(shape: RnsShape, ell: int, f: OptimizationSet,
           hoisted: bool = False) -> Traffic:
    """Raise all digits of one operand to the full basis.

    The operand read (for the fused scaling + inverse transform) is
    charged here unless the structure is hoisted, where the decomposition
    streams out of the producing pass. Coefficient copies and conversion
    outputs round-trip at digit granularity (padded width).
    """
    a, k = shape.alpha, shape.k_sp
    beta, t = shape.beta(ell), shape.raised(ell) - shape.alpha
    r = 0.0 if hoisted else float(ell)
    w = 0.0
    if f.alpha_caching:
        w += beta * t                      # final limbs only
    else:
        r += beta * a + beta * t           # conversion in + transform in
        w += beta * a + 2 * beta * t       # coeff copy, conv out, final
    if f.limb_reordering:
        w -= beta * t                      # streamed into the consumer
    if not f.fusion_o1:
        r += beta * (a + t) * (UNFUSED_NTT_TRIPS - 1)
        w += beta * (a + t) * (UNFUSED_NTT_TRIPS - 1)
    return Traffic(r, w, 0.0)


def kskip(shape: RnsShape, ell: int, f: OptimizationSet, *,
          rotations: int = 1, park_polys: int = 2) -> Traffic:
    """Inner product against the switching key for a hoisted group.

    Digits are re-read per rotation at the base tier; the digit tier
    amortizes them to one pass per group. Accumulators park to DRAM for
    the later modulus switch unless the accumulator tier holds them.
    """
    beta, K = shape.beta(ell), shape.raised(ell)
    digit_passes = 1 if f.beta_caching else rotations
    r = beta * K * digit_passes
    if f.limb_reordering:
        r -= beta * (K - shape.alpha)      # first pass streams new limbs
    w = 0.0 if f.accumulator_caching else float(park_polys * K * rotations)
    keys = 2 * beta * K * rotations * key_factor(f)
    return Traffic(r, w, keys)


def moddown(shape: RnsShape, ell: int, f: OptimizationSet, *,
            addend: int = 0, merged_rescale: bool = False) -> Traffic:
    """Switch one accumulator back down, optionally folding the rescale.

    Reads the parked accumulator (specials then chain part), round-trips
    the conversion intermediates, and writes the final limbs; a fused
    addend streams in during the combine.
    """
    k = shape.k_sp + (1 if merged_rescale else 0)
    keep = ell - (1 if merged_rescale else 0)
    r = float(addend)
    if not f.accumulator_caching:
        r += k if not merged_rescale else shape.k_sp + 1  # parked specials
        r += keep if not merged_rescale else ell - 1      # parked chain
    if not f.alpha_caching:
        r += k                                            # coeff round trip
        r += keep                                         # conv out re-read
    w = float(keep)
    if not f.alpha_caching:
        w += k + keep
    if not f.fusion_o1:
        r += (k + keep) * (UNFUSED_NTT_TRIPS - 1)
        w += (k + keep) * (UNFUSED_NTT_TRIPS - 1)
    return Traffic(r, w, 0.0)


def rescale(ell: int, f: OptimizationSet, *, addend: int = 0) -> Traffic:
    """Drop the last limb; the single-limb conversion chain is resident."""
    t = Traffic(float(ell + addend), float(ell - 1), 0.0)
    if not f.fusion_o1:
        t = t + Traffic(ell - 1, ell - 1, 0.0)
    return t


def plain_pass(reads: float, writes: float) -> Traffic:
    return Traffic(reads, writes, 0.0)
