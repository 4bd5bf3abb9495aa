"""Surfaces with p_g = q = 1 isogenous to an unmixed product: generating
vectors, Hurwitz moves and the classification pipelines."""

__version__ = "0.1.0"
