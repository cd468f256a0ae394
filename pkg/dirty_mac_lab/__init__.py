"""
Dirty MAC Lab.

Capacity-region bounds for the two-user doubly-dirty Gaussian MAC with
transmitter cooperation, numerical verification of their constant gap, and a
sample-level simulator of the layered modulo-lattice scheme behind the inner
bounds.
"""
__version__ = "0.1.0"
