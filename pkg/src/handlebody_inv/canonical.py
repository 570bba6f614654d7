"""Canonical involutions I_g and L_g^{n,m}: builders and class lists."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from .model import AXIAL, INVERTED, Model, ModelBuilder

FREE = "free"
NONFREE = "nonfree"


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """``Free(n)`` is I_{2n+1}; ``NonFree(n, m, l)`` is L_{n+2m+2l-1}^{n,m}."""

    variant: str
    n: int
    m: int = 0
    l: int = 0

    def __post_init__(self):
        if self.variant not in (FREE, NONFREE):
            raise ValueError(f"unknown variant {self.variant!r}")
        if min(self.n, self.m, self.l) < 0:
            raise ValueError("parameters must be non-negative")
        if self.variant == FREE and (self.m or self.l):
            raise ValueError("free classes carry only n")
        if self.variant == NONFREE and self.n + 2 * self.m < 1:
            raise ValueError("non-free classes need n + 2m >= 1")

    @classmethod
    def free(cls, n: int) -> "CanonicalForm":
        return cls(FREE, n)

    @classmethod
    def nonfree(cls, n: int, m: int, l: int) -> "CanonicalForm":
        return cls(NONFREE, n, m, l)

    @property
    def is_free(self) -> bool:
        return self.variant == FREE

    @property
    def genus(self) -> int:
        if self.is_free:
            return 2 * self.n + 1
        return self.n + 2 * self.m + 2 * self.l - 1

    @property
    def display(self) -> str:
        if self.is_free:
            return f"I_{self.genus}"
        return f"L_{self.genus}^{{{self.n},{self.m}}}"

    def fixed_tuple(self) -> Tuple[bool, int, int]:
        """(free?, arcs, circles) of any involution in the class."""
        if self.is_free:
            return (True, 0, 0)
        return (False, self.n, self.m)

    def as_record(self) -> Dict[str, object]:
        return {
            "variant": self.variant,
            "g": self.genus,
            "n": self.n,
            "m": None if self.is_free else self.m,
            "l": None if self.is_free else self.l,
            "display": self.display,
        }

    def __str__(self) -> str:
        return self.display


def build_free(n: int) -> Model:
    """Spine of I_{2n+1}: two swapped vertices, a swapped parallel pair, n swapped loop pairs."""
    if n < 0:
        raise ValueError("n must be >= 0")
    b = ModelBuilder()
    b.vertex_pair("a", "b")
    b.moved_pair("a", "b", names=("c1", "c2"))
    for i in range(1, n + 1):
        b.moved_pair("a", "a", names=(f"x{i}", f"y{i}"))
    return b.build()


def build_nonfree(n: int, m: int, l: int) -> Model:
    """Spine of L^{n,m} with l extra swapped loop pairs.

    Fixed vertices u1..u_{n+m} in a chain of swapped parallel pairs, an axial
    loop on each of the last m vertices and l swapped loop pairs at u1.
    """
    if min(n, m, l) < 0:
        raise ValueError("parameters must be >= 0")
    if n + 2 * m < 1:
        raise ValueError("a non-free involution needs n + 2m >= 1")
    b = ModelBuilder()
    k = n + m
    for i in range(1, k + 1):
        b.fixed_vertex(f"u{i}")
    for i in range(1, k):
        b.moved_pair(f"u{i}", f"u{i + 1}", names=(f"p{i}", f"q{i}"))
    for j in range(1, m + 1):
        b.self_edge(f"u{n + j}", f"u{n + j}", AXIAL, name=f"z{j}")
    for i in range(1, l + 1):
        b.moved_pair("u1", "u1", names=(f"s{i}", f"t{i}"))
    return b.build()


def build_hyperelliptic_bouquet(g: int) -> Model:
    """Alternative spine of L_g^{g+1,0}: g inverted loops at one fixed vertex."""
    b = ModelBuilder()
    b.fixed_vertex("u1")
    for i in range(1, g + 1):
        b.self_edge("u1", "u1", INVERTED, name=f"r{i}")
    return b.build()


def build(form: CanonicalForm) -> Model:
    if form.is_free:
        return build_free(form.n)
    return build_nonfree(form.n, form.m, form.l)


def builder_edge_count(form: CanonicalForm) -> int:
    if form.is_free:
        return 2 + 2 * form.n
    return 2 * (form.n + form.m - 1) + form.m + 2 * form.l


def enumerate_classes(g: int) -> List[CanonicalForm]:
    if g < 0:
        raise ValueError("genus must be >= 0")
    classes = []
    if g % 2 == 1:
        classes.append(CanonicalForm.free((g - 1) // 2))
    for n in range(0, g + 2):
        if n % 2 != (g + 1) % 2:
            continue
        for m in range(0, (g + 1 - n) // 2 + 1):
            if n + 2 * m >= 1:
                classes.append(CanonicalForm.nonfree(n, m, (g + 1 - n - 2 * m) // 2))
    return sorted(classes)


def count_classes(g: int) -> int:
    """Closed form: with k = floor((g+1)/2) there are (k+1)(k+2)/2 classes."""
    if g < 0:
        raise ValueError("genus must be >= 0")
    k = (g + 1) // 2
    return (k + 1) * (k + 2) // 2


def boundary_collisions(g: int) -> List[Tuple[CanonicalForm, CanonicalForm]]:
    """Pairs of distinct classes whose boundary restrictions share both invariants."""
    from .invariants import quotient_genus_formula

    def boundary_key(c: CanonicalForm) -> Tuple[int, int]:
        n = 0 if c.is_free else c.n
        return (2 * n, quotient_genus_formula(c.genus, c.is_free, n))

    return [
        (a, b)
        for a, b in combinations(enumerate_classes(g), 2)
        if boundary_key(a) == boundary_key(b)
    ]
