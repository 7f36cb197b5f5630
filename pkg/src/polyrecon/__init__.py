"""Reconstruct polytope face lattices from their graphs."""
