"""Exact computations around Brauer loop polynomials.

Submodules: ``polyring`` (polynomials over Z), ``linkpat`` (involutions and the
Brauer algebra action), ``qkz`` (the Psi table), ``joseph`` (Joseph-Melnikov
polynomials), ``orbit_poset``, ``affine_sym``, ``brauer_scheme`` and ``cli``.
"""

__version__ = "0.1.0"
