"""Global operation counters for the functional arithmetic paths.

Disabled by default so setup work (key generation, plan building,
encoding) is not measured; wrap the region of interest in `measuring()`.
Counts are absolute element operations: a modular multiply over an
n-vector adds n to mults.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field


@dataclass
class OpCounters:
    enabled: bool = False
    mults: int = 0
    adds: int = 0
    limb_reads: int = 0
    limb_writes: int = 0
    key_reads: int = 0

    def reset(self) -> None:
        self.mults = 0
        self.adds = 0
        self.limb_reads = 0
        self.limb_writes = 0
        self.key_reads = 0

    @property
    def total_ops(self) -> int:
        return self.mults + self.adds


COUNTERS = OpCounters()


def count_mults(n: int) -> None:
    if COUNTERS.enabled:
        COUNTERS.mults += n


def count_adds(n: int) -> None:
    if COUNTERS.enabled:
        COUNTERS.adds += n


@contextmanager
def measuring():
    COUNTERS.reset()
    COUNTERS.enabled = True
    try:
        yield COUNTERS
    finally:
        COUNTERS.enabled = False
