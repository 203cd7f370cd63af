"""Intersection homology of filtered simplicial complexes, with products and duality."""
