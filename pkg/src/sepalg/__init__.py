"""Separable commutative algebras, splitting towers and permutation-group machinery."""
