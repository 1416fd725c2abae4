"""Exact computational models of three families of double affine Hecke-type
algebras attached to the classical Weyl groups, together with the spin group
algebras, Clifford algebras and skew polynomial rings they are built from.

Subpackage map:

* ``scalars``  -- the coefficient ring Q(i, r2)[t, u, v]
* ``weyl``     -- signed permutation models of the Weyl groups A/B/D
* ``clifford`` -- Clifford algebras and their smash products with W
* ``spinweyl`` -- the spin (double cover) group algebras and their 2-cocycle
* ``skewpoly`` -- anticommuting-variable polynomials and odd derivations
* ``pbw``      -- the three algebra families and PBW normal forms
* ``iso``      -- the isomorphisms and Morita-type equivalences between them
* ``dunkl``    -- Dunkl operator representations on polynomial modules
* ``cli``      -- command line interface (normal forms, products, check suites)
"""

__version__ = "0.1.0"
