"""Exact re-verification toolkit for the invariant theory and blow-up charts of C^4/G5.

Modules
-------
exactfield   arithmetic in Q(zeta_24)
polyring     multivariate polynomials over that field
groebner     Buchberger engine and ideal-theoretic operations
reflgroup    the group G5, its cotangent action and Molien series
paperdata    the polynomial corpus and its consistency checks
charts       blow-up chart identities
tangentcone  tangent-cone computations
coulomb      abelian Coulomb-branch presentations
arrangement  hyperplane-arrangement combinatorics
cli          command-line front end
"""

__version__ = "0.1.0"
