"""braidforge: exact finite invariants of braided fusion data.

Subpackages cover finite abelian groups (``abelian``), exact cyclotomic
arithmetic (``cyclotomic``), quadratic forms on finite abelian groups
(``qform``), their Gauss sums and Witt classes (``witt``), fusion rings
(``fusion``), pre-modular data with S-matrices and centralizer theory
(``premodular``), and a JSON-speaking CLI (``cli``).
"""

__version__ = "0.1.0"
