"""CKKS laboratory: a toy-scale functional FHE stack plus the
architectural cost/DRAM models that reproduce its hardware profile."""

__version__ = "0.1.0"
