"""Riemann-Hilbert evaluation of solutions of Delta u + (alpha/x) u_x = 0 in the disk D(a, 1)."""
__version__ = "0.1.0"
