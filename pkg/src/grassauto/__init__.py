"""Frobenius and cyclic-shift automorphisms for parallelisms in PG(n,p) and S_2[2,3,n] searches."""

__version__ = "0.1.0"
