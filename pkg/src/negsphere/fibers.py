"""Catalog of the singular elliptic-fiber types used by the constructions.

Each catalog entry carries the fiber's monodromy word and Euler number,
plus either a plumbing fragment of embedded spheres (the normal-crossing
types E8t/E7t/E6t/I0star, trees of (-2)-spheres shaped like the affine
Dynkin diagrams) or a blow-up recipe resolving it into such a fragment
(the cuspidal/tangential types II_cusp, III, IV).  The nodal type
I1_nodal is tracked for monodromy accounting only: a nodal sphere is not
embedded, so it never contributes a fragment.
"""

from __future__ import annotations

from dataclasses import dataclass

from .sl2z import normalize_word

FRAGMENT_FIBERS = ("E8t", "E7t", "E6t", "I0star")
RESOLVABLE_FIBERS = ("II_cusp", "III", "IV")

#: Fiber names whose monodromy words are powers of (ab).  Products of such
#: words commute up to nothing at all: validity of a fibration built from
#: them is independent of fiber order.
AB_POWER_FIBERS = frozenset({"E8t", "E6t", "I0star", "IV", "II_cusp"})


@dataclass(frozen=True, slots=True)
class PlumbingFragment:
    """A connected tree of spheres, plus the vertex where a section attaches.

    Vertices are indexed 0..V-1; ``weights[i]`` is the self-intersection of
    sphere i and every genus is 0.  ``attachment`` designates the vertex a
    section of the ambient fibration meets (one transverse point).
    """

    weights: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    attachment: int
    labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        n = len(self.weights)
        if n == 0:
            raise ValueError("fragment must have at least one vertex")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"v{i}" for i in range(n)))
        if len(self.labels) != n:
            raise ValueError("labels and weights must have the same length")
        seen = set()
        adjacency: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            if u == v:
                raise ValueError("fragment has a self-loop")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            adjacency[u].append(v)
            adjacency[v].append(u)
        if len(self.edges) != n - 1:
            raise ValueError("fragment is not a tree (edge count != V - 1)")
        stack, reached = [0], {0}
        while stack:
            for w in adjacency[stack.pop()]:
                if w not in reached:
                    reached.add(w)
                    stack.append(w)
        if len(reached) != n:
            raise ValueError("fragment is not connected")
        if not 0 <= self.attachment < n:
            raise ValueError("attachment vertex out of range")

    @property
    def vertex_count(self) -> int:
        return len(self.weights)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def euler_characteristic(self) -> int:
        """Euler characteristic of the configuration: 2V - E.

        Each sphere contributes 2; each normal crossing identifies one
        point of two spheres and removes 1.
        """
        return 2 * self.vertex_count - self.edge_count

    def to_json_dict(self) -> dict:
        return {
            "vertices": [
                {"label": lab, "weight": w, "genus": 0}
                for lab, w in zip(self.labels, self.weights)
            ],
            "edges": [list(e) for e in self.edges],
            "attachment": self.attachment,
        }

    def to_dot(self, name: str = "fragment") -> str:
        lines = [f"graph {name} {{"]
        for i, w in enumerate(self.weights):
            lines.append(f'  v{i} [label="{w}"];')
        for u, v in self.edges:
            lines.append(f"  v{u} -- v{v};")
        lines.append("}")
        return "\n".join(lines)


@dataclass(frozen=True, slots=True)
class Resolution:
    """Blow-up recipe turning a non-normal-crossing fiber into a tree."""

    blowups: int
    fragment: PlumbingFragment


@dataclass(frozen=True, slots=True)
class FiberType:
    name: str
    word: str
    euler: int
    fragment: PlumbingFragment | None = None
    resolution: Resolution | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "word", normalize_word(self.word))
        if self.euler != len(self.word):
            raise ValueError(
                f"{self.name}: Euler number {self.euler} != word length {len(self.word)}"
            )


def _dynkin_affine_e8() -> PlumbingFragment:
    # trivalent center 0; arms of length 1 (v1), 2 (v2-v3), 5 (v4..v8)
    edges = ((0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6), (6, 7), (7, 8))
    return PlumbingFragment(weights=(-2,) * 9, edges=edges, attachment=8)


def _dynkin_affine_e7() -> PlumbingFragment:
    # center 0; short leaf v1; two arms of length 3 (v2..v4 and v5..v7)
    edges = ((0, 1), (0, 2), (2, 3), (3, 4), (0, 5), (5, 6), (6, 7))
    return PlumbingFragment(weights=(-2,) * 8, edges=edges, attachment=4)


def _dynkin_affine_e6() -> PlumbingFragment:
    # center 0; three arms of length 2
    edges = ((0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6))
    return PlumbingFragment(weights=(-2,) * 7, edges=edges, attachment=2)


def _dynkin_affine_d4() -> PlumbingFragment:
    # center 0 with four leaves
    edges = ((0, 1), (0, 2), (0, 3), (0, 4))
    return PlumbingFragment(weights=(-2,) * 5, edges=edges, attachment=1)


def _resolved_cusp() -> Resolution:
    # three blow-ups at the cusp point: the fiber becomes a (-6)-sphere
    # meeting a (-1)-sphere which also meets a (-2)- and a (-3)-sphere;
    # the section still meets the (-6) proper transform of the fiber
    fragment = PlumbingFragment(
        weights=(-6, -1, -2, -3),
        edges=((0, 1), (1, 2), (1, 3)),
        attachment=0,
        labels=("fiber", "e3", "e1", "e2"),
    )
    return Resolution(blowups=3, fragment=fragment)


def _resolved_iii() -> Resolution:
    # two blow-ups at the tangency: a central (-1)-sphere met by two
    # (-4)-spheres and a (-2)-sphere
    fragment = PlumbingFragment(
        weights=(-1, -4, -4, -2),
        edges=((0, 1), (0, 2), (0, 3)),
        attachment=1,
    )
    return Resolution(blowups=2, fragment=fragment)


def _resolved_iv() -> Resolution:
    # one blow-up at the triple point: a central (-1)-sphere met by three
    # (-3)-spheres
    fragment = PlumbingFragment(
        weights=(-1, -3, -3, -3),
        edges=((0, 1), (0, 2), (0, 3)),
        attachment=1,
    )
    return Resolution(blowups=1, fragment=fragment)


_CATALOG = (
    FiberType("E8t", "ab" * 5, 10, fragment=_dynkin_affine_e8()),
    FiberType("E7t", "ab" * 4 + "a", 9, fragment=_dynkin_affine_e7()),
    FiberType("E6t", "ab" * 4, 8, fragment=_dynkin_affine_e6()),
    FiberType("I0star", "ab" * 3, 6, fragment=_dynkin_affine_d4()),
    FiberType("IV", "ab" * 2, 4, resolution=_resolved_iv()),
    FiberType("III", "aba", 3, resolution=_resolved_iii()),
    FiberType("II_cusp", "ab", 2, resolution=_resolved_cusp()),
    FiberType("I1_nodal", "a", 1),
)

_BY_NAME = {entry.name: entry for entry in _CATALOG}

#: Canonical fiber order: strictly descending Euler number.
FIBER_ORDER = tuple(entry.name for entry in _CATALOG)
_ORDER_INDEX = {name: i for i, name in enumerate(FIBER_ORDER)}


def catalog() -> tuple[FiberType, ...]:
    """All eight fiber types, in canonical (descending Euler) order."""
    return _CATALOG


def fiber(name: str) -> FiberType:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise ValueError(
            f"unknown fiber type {name!r}; known: {', '.join(FIBER_ORDER)}"
        ) from None


def order_index(name: str) -> int:
    fiber(name)
    return _ORDER_INDEX[name]


def resolve(fiber_type: FiberType | str) -> tuple[PlumbingFragment, int]:
    """Resolved fragment and blow-up count for a II_cusp, III or IV fiber."""
    entry = fiber(fiber_type) if isinstance(fiber_type, str) else fiber_type
    if entry.resolution is None:
        raise ValueError(f"{entry.name} is not a resolvable singular type")
    return entry.resolution.fragment, entry.resolution.blowups


def cusp_replacement() -> tuple[PlumbingFragment, int]:
    """Swap a cusp fiber for the complement of a cuspidal cubic.

    Gluing the two cone-on-trefoil neighbourhoods with reversed orientation
    costs one blow-up and yields a single (-9)-sphere that still meets the
    rest of the configuration in one transverse point.
    """
    fragment = PlumbingFragment(weights=(-9,), edges=(), attachment=0)
    return fragment, 1


def catalog_json() -> list[dict]:
    """Catalog as JSON-ready dictionaries (words as plain strings)."""
    out = []
    for entry in _CATALOG:
        item: dict = {"name": entry.name, "word": entry.word, "euler": entry.euler}
        if entry.fragment is not None:
            item["fragment"] = entry.fragment.to_json_dict()
        if entry.resolution is not None:
            item["resolution"] = {
                "blowups": entry.resolution.blowups,
                "fragment": entry.resolution.fragment.to_json_dict(),
            }
        out.append(item)
    return out
