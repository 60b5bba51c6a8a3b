"""Exact lattice, positivity and Seshadri computations on blow-ups of Hirzebruch surfaces."""
