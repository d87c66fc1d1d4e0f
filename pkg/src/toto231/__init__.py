"""Limiting probabilities of first-order properties of random
231-avoiding permutations.

The package is organised bottom-up:

- :mod:`toto231.perms`: permutations as tuples, Catalan numbers,
  enumeration and exact uniform sampling of 231-avoiders
- :mod:`toto231.formulas`: first-order sentences over the two linear
  orders (position and value), parsing, evaluation, compilation
- :mod:`toto231.efgame` / :mod:`toto231.fingerprint`: quantifier-depth-k
  equivalence, by game search and by canonical fingerprint
- :mod:`toto231.typesystem`: the finite type algebra at depth k and its
  composition table
- :mod:`toto231.series`: exact counting series per type, the transfer
  matrix, and the analytic checks at the singularity
- :mod:`toto231.inference`: limiting probabilities of sentences and
  Monte-Carlo cross-checks
- :mod:`toto231.kakeya`: greedy subset-sum construction of sentences
  with prescribed limiting probability
"""

from __future__ import annotations
