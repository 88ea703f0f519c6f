"""Exact higher-genus complete weight enumerators of self-dual codes.

Computes cwe_g(C) for self-dual codes over prime fields, the finite
Clifford-Weil groups acting on them, Siegel Phi-operators and cusp spaces,
Eisenstein series by coset averaging and by mass-formula sums over
classified codes, and verifies the doubling identity
<D(E_2g), f>_g = c * N! * conj(f) with its closed-form constants.

Everything is exact: rationals and cyclotomic integers only, no floats.
"""

__version__ = "0.1.0"
