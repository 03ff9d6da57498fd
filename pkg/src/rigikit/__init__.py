"""Generic rigidity-matroid toolkit: ranks, constructions and exhaustive degree-condition checks."""

__version__ = "0.1.0"
