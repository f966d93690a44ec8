"""Exact 2x2 integer arithmetic for torus-bundle monodromies.

The mapping class group of the torus is SL(2, Z), generated by the
right-handed Dehn twists `a` and `b` along two curves meeting once.
Monodromy words are plain strings over {a, b} (positive twists only);
they multiply out, left to right, to integer matrices of determinant 1.

Entries must stay inside the signed 64-bit range; any step that would
leave it raises instead of silently producing a huge number.
"""

from __future__ import annotations

from dataclasses import dataclass

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

GENERATOR_NAMES = ("a", "b")


@dataclass(frozen=True, slots=True)
class GroupElement:
    """An element of SL(2, Z) stored as the matrix [[m11, m12], [m21, m22]]."""

    m11: int
    m12: int
    m21: int
    m22: int

    def __post_init__(self) -> None:
        for entry in (self.m11, self.m12, self.m21, self.m22):
            if not INT64_MIN <= entry <= INT64_MAX:
                raise OverflowError(
                    f"matrix entry {entry} exceeds the signed 64-bit range"
                )
        det = self.m11 * self.m22 - self.m12 * self.m21
        if det != 1:
            raise ValueError(f"determinant must be 1, got {det}")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return compose(self, other)

    def to_lists(self) -> list[list[int]]:
        """JSON form: [[m11, m12], [m21, m22]]."""
        return [[self.m11, self.m12], [self.m21, self.m22]]

    @classmethod
    def from_lists(cls, rows) -> "GroupElement":
        (m11, m12), (m21, m22) = rows
        return cls(int(m11), int(m12), int(m21), int(m22))


IDENTITY = GroupElement(1, 0, 0, 1)

_GENERATORS = {
    "a": GroupElement(1, 1, 0, 1),
    "b": GroupElement(1, 0, -1, 1),
}


def generator(name: str) -> GroupElement:
    """The fixed twist matrix for generator 'a' or 'b' (case-insensitive)."""
    key = str(name).lower()
    if key not in _GENERATORS:
        raise ValueError(f"unknown generator {name!r}; expected 'a' or 'b'")
    return _GENERATORS[key]


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """Matrix product g*h; raises OverflowError if an entry leaves 64 bits."""
    return GroupElement(
        g.m11 * h.m11 + g.m12 * h.m21,
        g.m11 * h.m12 + g.m12 * h.m22,
        g.m21 * h.m11 + g.m22 * h.m21,
        g.m21 * h.m12 + g.m22 * h.m22,
    )


def normalize_word(word: str) -> str:
    """Lower-case a monodromy word, rejecting letters outside {a, b}."""
    text = str(word).lower()
    for ch in text:
        if ch not in GENERATOR_NAMES:
            raise ValueError(f"invalid letter {ch!r} in monodromy word")
    return text


def word_to_matrix(word: str) -> GroupElement:
    """Left-to-right product of generator matrices; the empty word is the identity."""
    result = IDENTITY
    for ch in normalize_word(word):
        result = compose(result, _GENERATORS[ch])
    return result


def is_identity(g: GroupElement) -> bool:
    return g == IDENTITY
