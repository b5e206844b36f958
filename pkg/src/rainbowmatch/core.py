"""Graph and matching data model, validation, accessor context, greedy solver.

The universe every solver operates on is a bipartite multigraph whose colour
classes are matchings.  Vertices and colours are dense 0-based integer ids
(original labels, when any, live in side tables owned by the I/O layer).
Graphs and contexts are immutable after construction and safe to share
across concurrent workers; everything in this module is a pure function of
its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import (
    ContextInvalid,
    DuplicateEdgeAcrossColours,
    DuplicateEndpointInColourClass,
    IdOutOfRange,
    MultipleMissingColours,
)


class Edge(NamedTuple):
    x: int
    y: int
    c: int


class Verdict(NamedTuple):
    ok: bool
    reason: str | None

    def __bool__(self) -> bool:
        return self.ok


class ColouredBipartiteMultigraph:
    """Bipartite multigraph whose colour classes are matchings.

    Parallel edges of different colours are stored explicitly; nothing is
    deduplicated.  When ``edge_disjoint`` is set, construction additionally
    rejects any (x, y) pair carrying two colours.
    """

    __slots__ = (
        "left_size",
        "right_size",
        "colour_count",
        "edges",
        "edge_disjoint",
        "colour_classes",
        "x_incidence",
        "y_incidence",
        "_edge_set",
    )

    def __init__(
        self,
        left_size: int,
        right_size: int,
        colour_count: int,
        edges: Iterable[tuple[int, int, int]],
        edge_disjoint: bool = False,
    ):
        if left_size < 0 or right_size < 0 or colour_count < 0:
            raise IdOutOfRange("sizes must be non-negative")
        self.left_size = left_size
        self.right_size = right_size
        self.colour_count = colour_count
        self.edge_disjoint = edge_disjoint
        self.edges = tuple(
            e if type(e) is Edge else Edge(*e) for e in edges
        )

        classes: list[list[Edge]] = [[] for _ in range(colour_count)]
        x_inc: list[list[Edge]] = [[] for _ in range(left_size)]
        y_inc: list[list[Edge]] = [[] for _ in range(right_size)]
        x_seen: list[set[int]] = [set() for _ in range(colour_count)]
        y_seen: list[set[int]] = [set() for _ in range(colour_count)]
        pairs: dict[tuple[int, int], int] = {}

        for e in self.edges:
            x, y, c = e
            if not (0 <= x < left_size):
                raise IdOutOfRange(f"X-vertex {x} outside [0, {left_size})")
            if not (0 <= y < right_size):
                raise IdOutOfRange(f"Y-vertex {y} outside [0, {right_size})")
            if not (0 <= c < colour_count):
                raise IdOutOfRange(f"colour {c} outside [0, {colour_count})")
            xs = x_seen[c]
            ys = y_seen[c]
            if x in xs:
                raise DuplicateEndpointInColourClass(
                    f"colour {c} has two edges at X-vertex {x}"
                )
            if y in ys:
                raise DuplicateEndpointInColourClass(
                    f"colour {c} has two edges at Y-vertex {y}"
                )
            xs.add(x)
            ys.add(y)
            if edge_disjoint:
                prev = pairs.get((x, y))
                if prev is not None:
                    raise DuplicateEdgeAcrossColours(
                        f"pair ({x}, {y}) carries colours {prev} and {c}"
                    )
                pairs[(x, y)] = c
            classes[c].append(e)
            x_inc[x].append(e)
            y_inc[y].append(e)

        self.colour_classes = tuple(tuple(cl) for cl in classes)
        self.x_incidence = tuple(tuple(i) for i in x_inc)
        self.y_incidence = tuple(tuple(i) for i in y_inc)
        self._edge_set = frozenset(self.edges)

    def colour_class(self, c: int) -> tuple[Edge, ...]:
        return self.colour_classes[c]

    def has_edge(self, e: Edge) -> bool:
        return e in self._edge_set

    def class_sizes(self) -> tuple[int, ...]:
        return tuple(len(cl) for cl in self.colour_classes)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColouredBipartiteMultigraph):
            return NotImplemented
        return (
            self.left_size == other.left_size
            and self.right_size == other.right_size
            and self.colour_count == other.colour_count
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.left_size, self.right_size, self.colour_count, self.edges))

    def __repr__(self) -> str:
        return (
            f"ColouredBipartiteMultigraph(L={self.left_size}, R={self.right_size}, "
            f"C={self.colour_count}, |E|={len(self.edges)})"
        )


def build_graph(
    left_size: int,
    right_size: int,
    colour_count: int,
    edges: Iterable[tuple[int, int, int]],
    edge_disjoint: bool = False,
) -> ColouredBipartiteMultigraph:
    """Validate and index an edge list; rejects inputs violating invariants."""
    return ColouredBipartiteMultigraph(
        left_size, right_size, colour_count, edges, edge_disjoint
    )


@dataclass(frozen=True)
class RainbowMatching:
    """A matching whose edges all have distinct colours."""

    edges: tuple[Edge, ...] = ()

    @property
    def size(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def colours(self) -> frozenset[int]:
        return frozenset(e.c for e in self.edges)

    def x_cover(self) -> frozenset[int]:
        return frozenset(e.x for e in self.edges)

    def y_cover(self) -> frozenset[int]:
        return frozenset(e.y for e in self.edges)

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def sorted_by_colour(self) -> "RainbowMatching":
        return RainbowMatching(tuple(sorted(self.edges, key=lambda e: e.c)))


def verify_rainbow_matching(
    graph: ColouredBipartiteMultigraph, matching: RainbowMatching | Sequence[Edge]
) -> Verdict:
    """Check all rainbow-matching invariants against the host graph.

    Returns a verdict with the first violation found; never raises.
    """
    edges = tuple(matching)
    xs: set[int] = set()
    ys: set[int] = set()
    cs: set[int] = set()
    for e in edges:
        if not graph.has_edge(e):
            return Verdict(False, f"edge {tuple(e)} not in host graph")
        if e.x in xs:
            return Verdict(False, f"shared X-endpoint {e.x}")
        if e.y in ys:
            return Verdict(False, f"shared Y-endpoint {e.y}")
        if e.c in cs:
            return Verdict(False, f"repeated colour {e.c}")
        xs.add(e.x)
        ys.add(e.y)
        cs.add(e.c)
    return Verdict(True, None)


def greedy_rainbow_matching(graph: ColouredBipartiteMultigraph) -> RainbowMatching:
    """Greedy baseline: one disjoint edge per colour class when possible.

    Colours are processed in ascending id order; within a class the first
    disjoint edge in input order wins, so output is deterministic.  When
    every class has at least twice as many edges as there are colours, the
    result covers every colour.
    """
    used_x: set[int] = set()
    used_y: set[int] = set()
    chosen: list[Edge] = []
    for c in range(graph.colour_count):
        for e in graph.colour_classes[c]:
            if e.x not in used_x and e.y not in used_y:
                chosen.append(e)
                used_x.add(e.x)
                used_y.add(e.y)
                break
    return RainbowMatching(tuple(chosen))


class MatchingContext:
    """Accessor maps tying a rainbow matching to its host graph.

    Exposes the finite maps from vertices and colours to matching edges and
    their lifted set forms.  Accessors are undefined (return ``None`` /
    are skipped in set lifts) exactly on uncovered vertices and missing
    colours.
    """

    __slots__ = (
        "graph",
        "matching",
        "edge_of_x",
        "edge_of_y",
        "edge_of_colour",
        "x0",
        "y0",
        "missing_colours",
    )

    def __init__(self, graph: ColouredBipartiteMultigraph, matching: RainbowMatching):
        ok = verify_rainbow_matching(graph, matching)
        if not ok:
            raise ContextInvalid(f"matching invalid for context: {ok.reason}")
        self.graph = graph
        self.matching = matching
        self.edge_of_x = {e.x: e for e in matching}
        self.edge_of_y = {e.y: e for e in matching}
        self.edge_of_colour = {e.c: e for e in matching}
        self.x0 = tuple(x for x in range(graph.left_size) if x not in self.edge_of_x)
        self.y0 = tuple(y for y in range(graph.right_size) if y not in self.edge_of_y)
        self.missing_colours = tuple(
            c for c in range(graph.colour_count) if c not in self.edge_of_colour
        )

    @property
    def c_star(self) -> int:
        if len(self.missing_colours) != 1:
            raise MultipleMissingColours(
                f"{len(self.missing_colours)} colours missing, need exactly 1"
            )
        return self.missing_colours[0]

    # singular accessors; None on uncovered vertices / missing colours
    def colour_at_x(self, x: int) -> int | None:
        e = self.edge_of_x.get(x)
        return None if e is None else e.c

    def y_at_x(self, x: int) -> int | None:
        e = self.edge_of_x.get(x)
        return None if e is None else e.y

    def colour_at_y(self, y: int) -> int | None:
        e = self.edge_of_y.get(y)
        return None if e is None else e.c

    def x_at_y(self, y: int) -> int | None:
        e = self.edge_of_y.get(y)
        return None if e is None else e.x

    def x_of_colour(self, c: int) -> int | None:
        e = self.edge_of_colour.get(c)
        return None if e is None else e.x

    def y_of_colour(self, c: int) -> int | None:
        e = self.edge_of_colour.get(c)
        return None if e is None else e.y

    # set-lifted accessors; undefined elements are skipped
    def xs_of_edges(self, edges: Iterable[Edge]) -> frozenset[int]:
        return frozenset(e.x for e in edges)

    def ys_of_edges(self, edges: Iterable[Edge]) -> frozenset[int]:
        return frozenset(e.y for e in edges)

    def colours_of_edges(self, edges: Iterable[Edge]) -> frozenset[int]:
        return frozenset(e.c for e in edges)

    def colours_of_xs(self, xs: Iterable[int]) -> frozenset[int]:
        return frozenset(
            e.c for e in (self.edge_of_x.get(x) for x in xs) if e is not None
        )

    def colours_of_ys(self, ys: Iterable[int]) -> frozenset[int]:
        return frozenset(
            e.c for e in (self.edge_of_y.get(y) for y in ys) if e is not None
        )

    def edges_of_colours(self, cs: Iterable[int]) -> frozenset[Edge]:
        return frozenset(
            e for e in (self.edge_of_colour.get(c) for c in cs) if e is not None
        )

    def edges_of_xs(self, xs: Iterable[int]) -> frozenset[Edge]:
        return frozenset(
            e for e in (self.edge_of_x.get(x) for x in xs) if e is not None
        )


def make_context(
    graph: ColouredBipartiteMultigraph, matching: RainbowMatching
) -> MatchingContext:
    return MatchingContext(graph, matching)


def restrict(
    graph: ColouredBipartiteMultigraph,
    xs: Iterable[int] | None = None,
    ys: Iterable[int] | None = None,
    colours: Iterable[int] | None = None,
) -> tuple[ColouredBipartiteMultigraph, tuple[int, ...]]:
    """Subgraph keeping only the named vertices/colours.

    Vertex ids are preserved (vertices outside the slice just become
    isolated); colours are renumbered densely in ascending original order.
    Returns the subgraph plus the tuple mapping new colour id -> old id.
    """
    xset = None if xs is None else frozenset(xs)
    yset = None if ys is None else frozenset(ys)
    old_colours = (
        tuple(range(graph.colour_count)) if colours is None else tuple(sorted(set(colours)))
    )
    cmap = {old: new for new, old in enumerate(old_colours)}
    kept = [
        Edge(e.x, e.y, cmap[e.c])
        for e in graph.edges
        if e.c in cmap
        and (xset is None or e.x in xset)
        and (yset is None or e.y in yset)
    ]
    sub = ColouredBipartiteMultigraph(
        graph.left_size,
        graph.right_size,
        len(old_colours),
        kept,
        edge_disjoint=False,
    )
    return sub, old_colours


def relabel_matching(matching: RainbowMatching, colour_map: Sequence[int]) -> RainbowMatching:
    """Map a matching found in a restricted graph back to original colour ids."""
    return RainbowMatching(tuple(Edge(e.x, e.y, colour_map[e.c]) for e in matching))


def transposed(graph: ColouredBipartiteMultigraph) -> ColouredBipartiteMultigraph:
    """The same multigraph with the two sides swapped."""
    return ColouredBipartiteMultigraph(
        graph.right_size,
        graph.left_size,
        graph.colour_count,
        [(e.y, e.x, e.c) for e in graph.edges],
        edge_disjoint=graph.edge_disjoint,
    )


def transpose_matching(matching: RainbowMatching) -> RainbowMatching:
    return RainbowMatching(tuple(Edge(e.y, e.x, e.c) for e in matching))


# --- edge-list text format ---------------------------------------------------
# First line "L R C"; each subsequent non-comment line "x y c"; '#' comments.

def read_edge_list(text: str, edge_disjoint: bool = False) -> ColouredBipartiteMultigraph:
    lines = [
        ln for ln in (raw.split("#", 1)[0].strip() for raw in text.splitlines()) if ln
    ]
    if not lines:
        raise ValueError("empty edge-list input")
    header = lines[0].split()
    if len(header) != 3:
        raise ValueError(f"header must be 'L R C', got {lines[0]!r}")
    left, right, colours = (int(t) for t in header)
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise ValueError(f"edge line must be 'x y c', got {ln!r}")
        edges.append(tuple(int(t) for t in parts))
    return build_graph(left, right, colours, edges, edge_disjoint=edge_disjoint)


def write_edge_list(graph: ColouredBipartiteMultigraph) -> str:
    out = [f"{graph.left_size} {graph.right_size} {graph.colour_count}"]
    out.extend(f"{e.x} {e.y} {e.c}" for e in graph.edges)
    return "\n".join(out) + "\n"
