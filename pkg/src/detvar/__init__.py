"""Topological invariants of generic determinantal varieties and EIDS, in exact arithmetic."""
