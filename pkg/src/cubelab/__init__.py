"""cubelab: executable combinatorics of CAT(0) cube complexes.

Modules
-------
median      finite median graphs, hyperplanes, convexity, projections
cubulation  wallspaces and their cubulation
lazy        infinite complexes generated on demand, windows, isometries
isometry    classification, axes, Min / SMin windows, product splitting
rankone     skewer certificates, half-flats, the trichotomy classifier
raag        right-angled Artin groups: normal forms and centralizers
cli         command line front end
"""

__version__ = "0.1.0"
