"""KF: a small programming language with an acceptable numbering, and
executable fixed-point constructions built on it."""

__version__ = "0.1.0"
