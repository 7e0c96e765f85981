"""metorb: exact metaplectic orbital sums over rational function fields."""

__version__ = "0.1.0"
