"""Scalar arithmetic in the three-element field.

Scalars are plain ints restricted to the residues {0, 1, 2}; there is no
wrapper class.  ``normalize`` maps any integer to its residue, so a
coefficient written as -1 becomes 2.
"""


def normalize(n: int) -> int:
    return n % 3


def add(a: int, b: int) -> int:
    return (a + b) % 3


def neg(a: int) -> int:
    return (-a) % 3


def mul(a: int, b: int) -> int:
    return (a * b) % 3
