"""ntpg: exact finite models of multi-principal group, groupoid and
graded-bundle structures, verified by exhaustive enumeration and
polynomial-identity checking."""

__version__ = "0.1.0"
