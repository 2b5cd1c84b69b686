"""Exact Hecke-algebra and quantum-matrix-algebra engine over Q(q).

Subpackages by area:

- ``scalars``: the ground field Q(q) with unique canonical forms,
- ``permutations``: symmetric-group words, reduced words, standardization,
- ``linalg``: exact sparse RREF, kernels, canonical subspace comparison,
- ``hecke``: the algebras H_r(q), idempotents, the double-coset projection,
- ``rmatrix``: the Drinfeld-Jimbo braid matrix and the representation on V^(x)r,
- ``qma``: FRT quantum matrix algebra degree components by weight blocks,
- ``pplactic``: pseudo-plactic relations, ideals, and the conjecture verdict,
- ``checks`` / ``cli``: the verification suite behind the ``qdiag`` command.
"""

__version__ = "0.1.0"
