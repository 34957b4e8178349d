"""Shared helpers for the test suite: deterministic RNGs and random ring
elements.  Property-style tests draw from seeded generators so failures
reproduce exactly.
"""

from __future__ import annotations

import random
import zlib

from hermitia.field import FieldSpec, QuadElem, QuadInt


def seeded(name: str) -> random.Random:
    """A Random whose seed is derived stably from the test name."""
    return random.Random(zlib.crc32(name.encode()))


def rand_quadint(rng: random.Random, f: FieldSpec, span: int = 30) -> QuadInt:
    return QuadInt(f, rng.randint(-span, span), rng.randint(-span, span))


def rand_elem(
    rng: random.Random, f: FieldSpec, span: int = 30, max_den: int = 12
) -> QuadElem:
    return QuadElem.make(
        f, rng.randint(-span, span), rng.randint(-span, span), rng.randint(1, max_den)
    )


def rand_nonzero_elem(
    rng: random.Random, f: FieldSpec, span: int = 30, max_den: int = 12
) -> QuadElem:
    while True:
        z = rand_elem(rng, f, span, max_den)
        if not z.is_zero():
            return z
