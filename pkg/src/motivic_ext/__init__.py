"""Ext of finite trigraded Hopf algebras over F2.

Subpackages: gf2lin (linear algebra substrate), hopf (presentations),
cobar (reference Ext engine), resolution (minimal-resolution engine),
bockstein (tau long exact sequence), may (May spectral sequence),
adams (trigraded page engine), deduce (homotopy-level chart deduction),
report (naming, reference-table verification, SVG charts), cli.
"""

__version__ = "0.1.0"
