"""Rewrite engine for trees of embedded spheres.

A plumbing graph records spheres (vertices weighted by self-intersection)
meeting transversely in single points (edges).  Blow-ups rewrite the
graph; ``smooth`` computes the self-intersection of the single sphere
obtained by orienting the components via a two-coloring (so every
intersection is negative) and smoothing every crossing.

Graphs are values: rewrites return new graphs and never mutate their
input, so concurrent evaluation needs no coordination.  Cycles and
positive genus are rejected only when smoothing, not at construction
time, leaving intermediate experiments unrestricted.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class PlumbingError(ValueError):
    """A plumbing operation was applied outside its domain."""


def _edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u <= v else (v, u)


@dataclass(slots=True)
class PlumbingGraph:
    weights: list[int] = field(default_factory=list)
    labels: list[str] = field(default_factory=list)
    genera: list[int] = field(default_factory=list)
    exceptional: list[bool] = field(default_factory=list)
    edges: list[tuple[int, int]] = field(default_factory=list)
    trace: list[dict] = field(default_factory=list)

    # -- construction ------------------------------------------------------

    @classmethod
    def from_weights(
        cls,
        weights,
        edges=(),
        labels=None,
        genera=None,
    ) -> "PlumbingGraph":
        graph = cls()
        weights = list(weights)
        labels = list(labels) if labels is not None else [f"v{i}" for i in range(len(weights))]
        genera = list(genera) if genera is not None else [0] * len(weights)
        if not (len(labels) == len(weights) == len(genera)):
            raise PlumbingError("weights, labels and genera must align")
        for w, lab, g in zip(weights, labels, genera):
            graph.add_vertex(int(w), lab, genus=int(g))
        for u, v in edges:
            graph.add_edge(u, v)
        return graph

    def add_vertex(self, weight: int, label: str | None = None, genus: int = 0,
                   exceptional: bool = False) -> int:
        index = len(self.weights)
        self.weights.append(weight)
        self.labels.append(label if label is not None else f"v{index}")
        self.genera.append(genus)
        self.exceptional.append(exceptional)
        return index

    def add_edge(self, u: int, v: int) -> None:
        n = len(self.weights)
        if not (0 <= u < n and 0 <= v < n):
            raise PlumbingError(f"edge ({u}, {v}) references a missing vertex")
        if u == v:
            raise PlumbingError("self-loops are not allowed")
        key = _edge_key(u, v)
        if key in self.edges:
            raise PlumbingError(f"edge {key} already present (tangencies not modelled)")
        self.edges.append(key)

    def copy(self) -> "PlumbingGraph":
        dup = PlumbingGraph(
            weights=list(self.weights),
            labels=list(self.labels),
            genera=list(self.genera),
            exceptional=list(self.exceptional),
            edges=list(self.edges),
            trace=list(self.trace),
        )
        return dup

    # -- basic queries -----------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return len(self.weights)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(len(self.weights))]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def is_connected(self) -> bool:
        n = len(self.weights)
        if n == 0:
            return False
        adj = self.adjacency()
        seen = bytearray(n)
        seen[0] = 1
        stack = [0]
        count = 1
        while stack:
            for w in adj[stack.pop()]:
                if not seen[w]:
                    seen[w] = 1
                    count += 1
                    stack.append(w)
        return count == n

    def is_tree(self) -> bool:
        return len(self.edges) == len(self.weights) - 1 and self.is_connected()

    # -- rewrites ----------------------------------------------------------

    def blow_up_edge(self, edge: tuple[int, int]) -> "PlumbingGraph":
        """Blow up the intersection point the edge stands for.

        The two endpoint weights drop by 1 and the exceptional (-1)-sphere
        is inserted between them; smoothing afterwards loses exactly 5.
        """
        key = _edge_key(*edge)
        out = self.copy()
        try:
            out.edges.remove(key)
        except ValueError:
            raise PlumbingError(f"no edge {key} to blow up") from None
        u, v = key
        out.weights[u] -= 1
        out.weights[v] -= 1
        w = out.add_vertex(-1, label=f"e{len(out.weights)}", exceptional=True)
        out.edges.append(_edge_key(u, w))
        out.edges.append(_edge_key(v, w))
        out.trace.append({"op": "blow_up_edge", "edge": [u, v], "new_vertex": w})
        return out

    def blow_up_point_on_vertex(self, vertex: int) -> "PlumbingGraph":
        """Blow up a generic point of one sphere.

        The sphere's weight drops by 1 and the exceptional (-1)-sphere
        hangs off it as a new leaf; smoothing afterwards loses exactly 4
        (the tube-with-a-(-4)-sphere baseline).
        """
        if not 0 <= vertex < len(self.weights):
            raise PlumbingError(f"no vertex {vertex} to blow up")
        out = self.copy()
        out.weights[vertex] -= 1
        w = out.add_vertex(-1, label=f"e{len(out.weights)}", exceptional=True)
        out.edges.append(_edge_key(vertex, w))
        out.trace.append({"op": "blow_up_point", "vertex": vertex, "new_vertex": w})
        return out

    # -- smoothing ---------------------------------------------------------

    def two_coloring(self) -> tuple[int, ...]:
        """Proper +-1 coloring with the lowest-index vertex getting +1.

        Encodes the orientation choice making every intersection negative.
        Raises for odd cycles (not bipartite) and for disconnected input.
        """
        n = len(self.weights)
        if n == 0:
            raise PlumbingError("cannot color an empty graph")
        adj = self.adjacency()
        colors = [0] * n
        colors[0] = 1
        stack = [0]
        count = 1
        while stack:
            u = stack.pop()
            cu = colors[u]
            for w in adj[u]:
                if colors[w] == 0:
                    colors[w] = -cu
                    count += 1
                    stack.append(w)
                elif colors[w] == cu:
                    raise PlumbingError("not bipartite (odd cycle present)")
        if count != n:
            raise PlumbingError("graph is disconnected")
        return tuple(colors)

    def smooth(self) -> int:
        """Self-intersection of the sphere obtained by smoothing all crossings.

        Valid only for a connected tree of genus-0 vertices; the result is
        sum(weights) - 2 * edge_count, one -2 per smoothed negative crossing.
        """
        n = len(self.weights)
        if n == 0:
            raise PlumbingError("cannot smooth an empty graph")
        for i, g in enumerate(self.genera):
            if g != 0:
                raise PlumbingError(
                    f"vertex {i} has genus {g}; smoothing to a sphere needs genus 0"
                )
        if len(self.edges) >= n:
            raise PlumbingError("graph has a cycle; smoothing would not give a sphere")
        if not self.is_connected():
            raise PlumbingError("graph is disconnected; smoothing would not give a sphere")
        return sum(self.weights) - 2 * len(self.edges)

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "vertices": [
                {
                    "label": self.labels[i],
                    "weight": self.weights[i],
                    "genus": self.genera[i],
                    "exceptional": self.exceptional[i],
                }
                for i in range(len(self.weights))
            ],
            "edges": [list(e) for e in self.edges],
            "trace": list(self.trace),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "PlumbingGraph":
        graph = cls()
        for item in data.get("vertices", []):
            graph.add_vertex(
                int(item["weight"]),
                label=str(item.get("label", "")) or None,
                genus=int(item.get("genus", 0)),
                exceptional=bool(item.get("exceptional", False)),
            )
        for u, v in data.get("edges", []):
            graph.add_edge(int(u), int(v))
        graph.trace = [dict(rec) for rec in data.get("trace", [])]
        return graph

    def to_dot(self, name: str = "plumbing") -> str:
        """Graphviz text; vertex label = weight, blow-up vertices boxed."""
        lines = [f"graph {name} {{"]
        for i, w in enumerate(self.weights):
            marker = ", shape=box" if self.exceptional[i] else ""
            lines.append(f'  v{i} [label="{w}"{marker}];')
        for u, v in self.edges:
            lines.append(f"  v{u} -- v{v};")
        lines.append("}")
        return "\n".join(lines)


def oracle_square(graph: PlumbingGraph, coloring) -> int:
    """Homology square of the smoothed class, computed from the intersection form.

    With v the vector of coloring signs and Q the intersection matrix
    (diagonal = weights, one off-diagonal 1 per edge), returns v^T Q v.
    Independent of ``smooth``: no tree structure is assumed, only a valid
    proper coloring.
    """
    colors = tuple(coloring)
    n = graph.vertex_count
    if len(colors) != n:
        raise PlumbingError(f"coloring has {len(colors)} entries for {n} vertices")
    for i, c in enumerate(colors):
        if c not in (1, -1):
            raise PlumbingError(f"coloring entry {i} is {c}, expected +1 or -1")
    total = 0
    for i, w in enumerate(graph.weights):
        total += w * colors[i] * colors[i]
    for u, v in graph.edges:
        if colors[u] == colors[v]:
            raise PlumbingError(f"adjacent vertices {u}, {v} share a color")
        total += 2 * colors[u] * colors[v]
    return total
