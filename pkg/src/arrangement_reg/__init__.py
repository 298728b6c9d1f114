"""Regularity and Cohen-Macaulayness of complete-bipartite plane arrangements, computed exactly over F_p."""

__version__ = "0.1.0"
