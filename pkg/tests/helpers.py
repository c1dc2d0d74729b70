"""Shared test utilities: independent oracles and seeded generators."""

from __future__ import annotations

import random
from fractions import Fraction

from surgerycalc import (
    AmbientStatus,
    LegendrianKnotData,
    SurgeryComponent,
    SurgeryDiagram,
)


def cofactor_det(rows):
    """Independent determinant oracle: recursive Laplace expansion.

    Deliberately naive so that it shares no code path with the Bareiss
    implementation under test.
    """
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    for j in range(n):
        head = rows[0][j]
        if head == 0:
            continue
        minor = [list(row[:j]) + list(row[j + 1 :]) for row in rows[1:]]
        term = Fraction(head) * cofactor_det(minor)
        total += term if j % 2 == 0 else -term
    return total


def euclid_subtractive_steps(p: int, q: int) -> int:
    """Steps of the subtraction-based Euclidean algorithm on (p, q).

    Equals the sum of the division-algorithm quotients; bounds the
    length of the negative continued fraction of -p/q.
    """
    steps = 0
    a, b = p, q
    while b:
        steps += a // b
        a, b = b, a % b
    return steps


def random_rational(rng: random.Random, allow_zero: bool = False) -> Fraction:
    while True:
        value = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        if allow_zero or value != 0:
            return value


def random_diagram(rng: random.Random, max_components: int = 5) -> SurgeryDiagram:
    """A random structurally valid diagram (odd Euler characteristics)."""
    count = rng.randint(0, max_components)
    components = []
    for index in range(count):
        knot = LegendrianKnotData(
            id=f"C{index}",
            tb=rng.randint(-6, 6),
            rot=rng.randint(-4, 4),
            euler_char=rng.choice((1, -1, -3)),
        )
        coefficient = None if rng.random() < 0.4 else random_rational(rng)
        components.append(
            SurgeryComponent(knot=knot, contact_coefficient=coefficient)
        )
    linking = [[0] * count for _ in range(count)]
    for i in range(count):
        for j in range(i + 1, count):
            value = rng.randint(-3, 3)
            linking[i][j] = value
            linking[j][i] = value
    ambient = rng.choice(
        (AmbientStatus.TIGHT, AmbientStatus.OVERTWISTED, AmbientStatus.UNKNOWN)
    )
    return SurgeryDiagram(
        ambient=ambient,
        components=tuple(components),
        linking=tuple(tuple(row) for row in linking),
    )
