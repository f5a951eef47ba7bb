"""tsmin: similarity-based black-box test suite minimization."""

__version__ = "0.1.0"
