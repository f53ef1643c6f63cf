"""Integrability of abelian transitive Lie algebroids, decided exactly.

The package works with algebroids reduced to their period data over a
cellular or simplicial model of the base, decides discreteness of the
monodromy group, and builds the Almeida-Molino and de Rham integrable
lifts together with checks that the lift maps are algebroid morphisms.
"""

__version__ = "0.1.0"
