"""ffiwa: exact invariants of elliptic curves over rational function fields.

Local-cohomology bound calculators at supersingular places, unit-filtration
oracles for truncated local fields, Artin-Schreier conductor calculus,
exact Hasse-Weil L-functions over GF(q)(t), and mu-invariant bookkeeping,
exposed as a library, an HTTP service and a thin CLI.
"""

__version__ = "0.1.0"
