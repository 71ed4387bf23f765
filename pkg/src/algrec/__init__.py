"""Random walks on finitely generated groups and semigroup-closure experiments."""

__version__ = "0.1.0"
