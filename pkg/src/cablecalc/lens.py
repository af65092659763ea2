"""d-invariants of lens spaces and their spin-c conjugation combinatorics.

L(p, q) carries p spin-c structures labeled 0..p-1.  d(L(p, q), i) is the
classical recursive correction term; the recursion swaps (p, q) -> (q, p mod q)
and terminates at d(L(1, 0), 0) = 0, so every value is an exact rational.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from math import gcd

__all__ = ["lens_d", "lens_d_vector", "conj_spinc", "selfconj_spinc"]


def _check_pq(p: int, q: int) -> None:
    if p < 1 or q < 1:
        raise ValueError(f"need p, q >= 1, got ({p}, {q})")
    if gcd(p, q) != 1:
        raise ValueError(f"p and q must be coprime, got ({p}, {q})")


@functools.lru_cache(maxsize=None)
def _lens_d(p: int, q: int, i: int) -> Fraction:
    if p == 1:
        return Fraction(0)
    q = q % p
    num = Fraction((2 * i + 1 - p - q) ** 2 - p * q, 4 * p * q)
    return num - _lens_d(q, p % q, i % q)


def lens_d(p: int, q: int, i: int) -> Fraction:
    """d(L(p, q), i) for 0 <= i < p; q >= p is reduced mod p (label kept)."""
    _check_pq(p, q)
    if not 0 <= i < p:
        raise ValueError(f"spin-c label {i} out of range 0..{p - 1}")
    return _lens_d(p, q, i)


def lens_d_vector(p: int, q: int) -> list[Fraction]:
    """All p correction terms of L(p, q), indexed by spin-c label."""
    return [lens_d(p, q, i) for i in range(p)]


def conj_spinc(p: int, q: int, i: int) -> int:
    """Label of the conjugate spin-c structure: (p + q - 1 - i) mod p."""
    _check_pq(p, q)
    if not 0 <= i < p:
        raise ValueError(f"spin-c label {i} out of range 0..{p - 1}")
    return (p + q - 1 - i) % p


def selfconj_spinc(p: int, q: int) -> list[int]:
    """Self-conjugate spin-c labels of L(p, q), sorted.

    Both odd: one label (q-1)/2.  One of p, q even: the even/odd split gives
    (q-1)/2 and/or (p+q-1)/2, all taken mod p.
    """
    _check_pq(p, q)
    if p % 2 == 1 and q % 2 == 1:
        labels = {((q - 1) // 2) % p}
    elif p % 2 == 0:
        labels = {((q - 1) // 2) % p, ((p + q - 1) // 2) % p}
    else:
        labels = {((p + q - 1) // 2) % p}
    return sorted(labels)
