"""Architectural cost model: operation counts, DRAM traffic, throughput."""
