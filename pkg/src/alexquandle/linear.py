"""Closed-form criteria for linear quandles: Z_n with x ^ y = ax + (1-a)y.

Everything here is plain modular arithmetic; the table-level machinery in
quandle.py serves as the independent oracle for these shortcuts. All
operations require gcd(n, a) = 1 and raise ValueError otherwise.
"""

from __future__ import annotations

import math


def _check(n: int, a: int) -> int:
    if n < 2:
        raise ValueError(f"order {n} must be >= 2")
    a %= n
    if math.gcd(n, a) != 1:
        raise ValueError(f"gcd({n}, {a}) != 1; not a linear quandle parameter")
    return a


def n_cap(n: int, a: int) -> int:
    """n / gcd(n, 1 - a): the order of the image of 1 - t.

    >>> n_cap(9, 4)
    3
    >>> n_cap(8, 3)
    4
    >>> n_cap(12, 1)
    1
    """
    a = _check(n, a)
    return n // math.gcd(n, 1 - a)


def linear_iso(n: int, a: int, b: int) -> bool:
    """Are the order-n linear quandles with parameters a and b isomorphic?

    True exactly when n_cap(n, a) == n_cap(n, b) and a == b modulo that
    common value.
    """
    a, b = _check(n, a), _check(n, b)
    cap = n_cap(n, a)
    return cap == n_cap(n, b) and (a - b) % cap == 0


def linear_connected(n: int, a: int) -> bool:
    """Connected exactly when 1 - a is also a unit, i.e. n_cap(n, a) == n."""
    a = _check(n, a)
    return math.gcd(n, 1 - a) == 1


def linear_dual(n: int, a: int, b: int) -> bool:
    """Is the dual of the (n, a) linear quandle isomorphic to (n, b)?

    The dual is the (n, a^-1) linear quandle, so this reduces to
    linear_iso with the inverse parameter.
    """
    a, b = _check(n, a), _check(n, b)
    return linear_iso(n, pow(a, -1, n), b)


def linear_self_dual(n: int, a: int) -> bool:
    """Is the (n, a) linear quandle isomorphic to its own dual?"""
    a = _check(n, a)
    return linear_dual(n, a, a)
