"""Arithmetic over the cyclic group Z_d and the phase character chi.

Basis ordering used throughout the package: the first listed vertex is the
most significant digit (mixed radix, C order).
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class ModulusError(ValueError):
    """Raised when values from different Z_d are combined."""


@dataclass(frozen=True)
class Digit:
    value: int
    d: int

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"modulus must be >= 2, got {self.d}")
        if not 0 <= self.value < self.d:
            raise ValueError(f"digit {self.value} out of range for d={self.d}")

    def __add__(self, other: "Digit") -> "Digit":
        return add_mod(self, other)

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True)
class MultiIndex:
    """A tuple of Z_d digits keyed by an ordered vertex list."""

    vertices: tuple[int, ...]
    digits: tuple[int, ...]
    d: int

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))
        object.__setattr__(self, "digits", tuple(int(g) for g in self.digits))
        if self.d < 2:
            raise ValueError(f"modulus must be >= 2, got {self.d}")
        if len(self.vertices) != len(self.digits):
            raise ValueError("digit tuple length must match the vertex list")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertex list contains duplicates")
        for g in self.digits:
            if not 0 <= g < self.d:
                raise ValueError(f"digit {g} out of range for d={self.d}")

    @classmethod
    def zero(cls, vertices: Sequence[int], d: int) -> "MultiIndex":
        return cls(tuple(vertices), (0,) * len(vertices), d)

    def __getitem__(self, vertex: int) -> int:
        return self.digits[self.vertices.index(vertex)]

    def __add__(self, other: "MultiIndex") -> "MultiIndex":
        _check_compatible(self, other)
        return MultiIndex(
            self.vertices,
            tuple((a + b) % self.d for a, b in zip(self.digits, other.digits)),
            self.d,
        )

    def __neg__(self) -> "MultiIndex":
        return MultiIndex(self.vertices, tuple((-g) % self.d for g in self.digits), self.d)

    def is_zero(self) -> bool:
        return not any(self.digits)


def _check_compatible(a: MultiIndex, b: MultiIndex) -> None:
    if a.d != b.d:
        raise ModulusError(f"modulus mismatch: {a.d} vs {b.d}")
    if a.vertices != b.vertices:
        raise KeyError(f"vertex lists differ: {a.vertices} vs {b.vertices}")


def add_mod(a: Digit, b: Digit) -> Digit:
    if a.d != b.d:
        raise ModulusError(f"modulus mismatch: {a.d} vs {b.d}")
    return Digit((a.value + b.value) % a.d, a.d)


def phase(exponent: int, d: int) -> complex:
    """exp(2 pi i exponent / d), with the exponent reduced mod d first."""
    return cmath.exp(2j * cmath.pi * (exponent % d) / d)


def chi(g: Digit, h: Digit) -> complex:
    """The bicharacter chi(g|h) = exp(2 pi i g h / d)."""
    if g.d != h.d:
        raise ModulusError(f"modulus mismatch: {g.d} vs {h.d}")
    return phase(g.value * h.value, g.d)


def chi_tuple(h: MultiIndex, h2: MultiIndex) -> complex:
    """Product of per-vertex chi phases."""
    _check_compatible(h, h2)
    return phase(sum(a * b for a, b in zip(h.digits, h2.digits)), h.d)


def enumerate_group(vertices: Sequence[int], d: int) -> list[MultiIndex]:
    """All d**len(vertices) configurations, first vertex most significant."""
    if d < 2:
        raise ValueError(f"modulus must be >= 2, got {d}")
    vertices = tuple(vertices)
    return [
        MultiIndex(vertices, digits, d)
        for digits in itertools.product(range(d), repeat=len(vertices))
    ]


def basis_digits(n: int, d: int) -> np.ndarray:
    """Digit table of shape (d**n, n) in enumerate_group order."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((d,) * n, dtype=np.int64)
    return grids.reshape(n, -1).T.copy()


def index_of(digits: Iterable[int], d: int) -> int:
    """Flat basis index of a digit tuple."""
    idx = 0
    for g in digits:
        idx = idx * d + int(g)
    return idx
