"""Switching calculus: the switch digraph, exchanges, and the augmentation
engine that grows rainbow matchings one colour at a time.

A switching is an alternating sequence of non-matching and matching edges of
pairwise equal colours; applying it rewrites the matching while preserving
its size and Y-cover and trading the missing colour for the sequence's end
colour.  The switch digraph encodes, per ordered colour pair, the single-
colour reroutes available through a chosen X-vertex set; its rainbow paths
are exactly the valid switchings.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .budget import BudgetMeter, SearchBudget
from .core import (
    ColouredBipartiteMultigraph,
    Edge,
    MatchingContext,
    RainbowMatching,
    Verdict,
    greedy_rainbow_matching,
    make_context,
    relabel_matching,
    restrict,
    transpose_matching,
    transposed,
    verify_rainbow_matching,
)
from .digraph import Arc, LabelledDigraph, is_rainbow_arc_path, iter_rainbow_paths
from .errors import (
    EmptyMatching,
    ExchangeNotApplicable,
    FloorNotCertified,
    MultipleMissingColours,
    PathNotInDigraph,
    PathNotRainbow,
    PreconditionViolated,
)

STAR = "*"  # vertex label of the missing colour in the switch digraph


@dataclass(frozen=True)
class Switching:
    """Alternating exchange sequence (e_0, m_1, e_1, ..., m_l).

    ``free_edges`` are the non-matching edges e_0..e_{l-1}; ``matched_edges``
    are the matching edges m_1..m_l.  Validity is decided by
    :func:`validate_switching`, clause by clause.
    """

    free_edges: tuple[Edge, ...]
    matched_edges: tuple[Edge, ...]

    @property
    def length(self) -> int:
        return len(self.matched_edges)

    @property
    def start_colour(self) -> int:
        return self.free_edges[0].c

    @property
    def end_colour(self) -> int:
        return self.matched_edges[-1].c

    def x_vertices(self) -> frozenset[int]:
        """X-endpoints of all edges of the switching."""
        return frozenset(e.x for e in self.free_edges) | frozenset(
            m.x for m in self.matched_edges
        )

    def is_empty(self) -> bool:
        return not self.free_edges and not self.matched_edges


EMPTY_SWITCHING = Switching((), ())


@dataclass(frozen=True)
class AugmentFailure:
    """Outcome of an exhausted augmentation search; not a fault."""

    depth_cap: int
    deepest_explored: int
    paths_explored: int
    frontier: tuple[int, ...]  # colours reachable by rainbow paths
    depth_cap_exhausted: bool


def build_switch_digraph(ctx: MatchingContext, x_prime: Iterable[int]) -> LabelledDigraph:
    """Digraph on colours whose arcs are single-colour reroutes through X'.

    Vertex labels are the matched X-endpoints of each colour, with the
    missing colour labelled "*"; an arc u -> v labelled x records a
    colour-u edge from x in X' to the Y-endpoint of v's matching edge.
    The missing colour has no Y-endpoint, hence no in-arcs.
    """
    if ctx.matching.size == 0:
        raise EmptyMatching("switch digraph needs a non-empty matching")
    if len(ctx.missing_colours) != 1:
        raise MultipleMissingColours(
            f"{len(ctx.missing_colours)} colours missing, need exactly 1"
        )
    xset = frozenset(x_prime)
    c_star = ctx.c_star
    graph = ctx.graph
    labels = tuple(
        STAR if c == c_star else ctx.x_of_colour(c) for c in range(graph.colour_count)
    )
    arcs: list[tuple[int, int, int]] = []
    for u in range(graph.colour_count):
        for e in graph.colour_classes[u]:
            if e.x not in xset:
                continue
            target = ctx.edge_of_y.get(e.y)
            if target is None or target.c == u:
                continue
            arcs.append((u, target.c, e.x))
    return LabelledDigraph(graph.colour_count, arcs, vertex_labels=labels)


def path_to_switching(
    ctx: MatchingContext,
    x_prime: Iterable[int],
    path: Sequence[int],
    digraph: LabelledDigraph | None = None,
) -> Switching:
    """Convert a rainbow colour path of the switch digraph into a switching.

    ``path`` is the vertex (colour) sequence.  The i-th free edge is the
    graph edge behind the i-th arc; the i-th matched edge is the matching
    edge of the i-th reached colour.
    """
    D = digraph if digraph is not None else build_switch_digraph(ctx, x_prime)
    verts = list(path)
    if len(verts) <= 1:
        return EMPTY_SWITCHING
    arcs: list[Arc] = []
    for a, b in zip(verts, verts[1:]):
        hits = [arc for arc in D.out_arcs(a) if arc.head == b]
        if not hits:
            raise PathNotInDigraph(f"no arc {a} -> {b} in the switch digraph")
        arcs.append(hits[0])  # label unique: colour classes are matchings
    if not is_rainbow_arc_path(D, tuple(arcs), edge_rainbow=True, vertex_scope="all"):
        raise PathNotRainbow(f"colour path {verts} is not rainbow")
    free: list[Edge] = []
    matched: list[Edge] = []
    for arc in arcs:
        head_edge = ctx.edge_of_colour[arc.head]
        free.append(Edge(arc.label, head_edge.y, arc.tail))
        matched.append(head_edge)
    return Switching(tuple(free), tuple(matched))


def validate_switching(
    ctx: MatchingContext, x_prime: Iterable[int], sigma: Switching
) -> Verdict:
    """Check the five defining clauses; report the first violated one.

    (i) matched edges belong to the matching, free edges do not;
    (ii) paired edges share their colour;
    (iii) consecutive free/matched edges meet exactly in the matched edge's
    Y-endpoint; (iv) all other intersections are empty and colours are
    pairwise distinct; (v) free edges start in X'.
    """
    xset = frozenset(x_prime)
    e, m = sigma.free_edges, sigma.matched_edges
    if len(e) != len(m):
        return Verdict(False, "(structure) needs equal counts of e- and m-edges")
    if sigma.is_empty():
        return Verdict(True, None)
    medges = ctx.matching.edge_set()
    for i, ei in enumerate(e):
        if ei in medges:
            return Verdict(False, f"(i) e_{i} is a matching edge")
        if not ctx.graph.has_edge(ei):
            return Verdict(False, f"(i) e_{i} is not a graph edge")
    for i, mi in enumerate(m, start=1):
        if mi not in medges:
            return Verdict(False, f"(i) m_{i} is not a matching edge")
    for i in range(1, len(e)):
        if e[i].c != m[i - 1].c:
            return Verdict(False, f"(ii) e_{i} and m_{i} differ in colour")
    for i in range(len(m)):
        if e[i].y != m[i].y or e[i].x == m[i].x:
            return Verdict(
                False, f"(iii) e_{i} and m_{i + 1} must share exactly the Y-endpoint"
            )
    colours = [e[0].c] + [mi.c for mi in m]
    if len(set(colours)) != len(colours):
        return Verdict(False, "(iv) colours are not pairwise distinct")
    for i in range(len(e)):
        for j in range(len(e)):
            if i != j and (e[i].x == e[j].x or e[i].y == e[j].y):
                return Verdict(False, f"(iv) e_{i} and e_{j} intersect")
    for i in range(len(e)):
        for j in range(len(m)):
            if i != j and (e[i].x == m[j].x or e[i].y == m[j].y):
                return Verdict(False, f"(iv) e_{i} and m_{j + 1} intersect")
    for i, ei in enumerate(e):
        if ei.x not in xset:
            return Verdict(False, f"(v) e_{i} starts outside X'")
    return Verdict(True, None)


def apply_switching(
    ctx: MatchingContext,
    sigma: Switching,
    pinned: Iterable[Edge] = (),
    avoid_x: Iterable[int] = (),
    base: RainbowMatching | None = None,
) -> RainbowMatching:
    """Exchange along a switching: drop its matched edges, add its free ones.

    Preserves size and Y-cover; the result misses the switching's end colour,
    agrees with the base matching on the pinned edges, and avoids both the
    freed X-vertices and ``avoid_x``.  Disjointness preconditions are named
    on failure.
    """
    base = base if base is not None else ctx.matching
    if sigma.is_empty():
        return base
    pinned = tuple(pinned)
    avoid = frozenset(avoid_x)
    sx = sigma.x_vertices()
    px = {p.x for p in pinned}
    if sx & px:
        raise PreconditionViolated("switching X-vertices intersect the pinned edges")
    if sx & avoid:
        raise PreconditionViolated("switching X-vertices intersect the avoid set")
    if px & avoid:
        raise PreconditionViolated("pinned edges intersect the avoid set")
    base_set = base.edge_set()
    m_set = frozenset(sigma.matched_edges)
    if not m_set <= base_set:
        raise ExchangeNotApplicable("switching matched edges not all in base matching")
    kept = base_set - m_set
    kept_x = {e.x for e in kept}
    kept_y = {e.y for e in kept}
    kept_c = {e.c for e in kept}
    if kept_x & avoid:
        raise ExchangeNotApplicable(
            "base matching touches the avoid set outside the exchanged edges"
        )
    for ei in sigma.free_edges:
        if ei.x in kept_x or ei.y in kept_y:
            raise ExchangeNotApplicable(
                f"free edge {tuple(ei)} collides with the kept matching"
            )
        if ei.c in kept_c:
            raise ExchangeNotApplicable(
                f"free-edge colour {ei.c} already present in the kept matching"
            )
    out = tuple(sorted(kept | set(sigma.free_edges), key=lambda e: (e.c, e.x, e.y)))
    return RainbowMatching(out)


def augment(
    ctx: MatchingContext,
    depth_cap: int | None = None,
    budget: SearchBudget | None = None,
) -> RainbowMatching | AugmentFailure:
    """Grow a one-colour-short matching by one edge, if a switching allows.

    Enumerates rainbow paths from the missing colour in the switch digraph
    over the uncovered X-vertices, by iterative deepening; for every reached
    colour it scans that colour's edges from the still-uncovered X-side to
    the uncovered Y-side.  A hit yields the exchanged matching plus the new
    edge.  Exhaustion returns a structured report (a legitimate outcome:
    the matching may simply be maximum).
    """
    graph = ctx.graph
    if len(ctx.missing_colours) != 1:
        raise MultipleMissingColours(
            f"{len(ctx.missing_colours)} colours missing, need exactly 1"
        )
    c_star = ctx.c_star
    x0 = frozenset(ctx.x0)
    y0 = frozenset(ctx.y0)
    cap = depth_cap if depth_cap is not None else graph.colour_count
    meter = BudgetMeter(budget)

    # depth 0: a missing-colour edge between uncovered sides extends directly
    for e in graph.colour_classes[c_star]:
        if e.x in x0 and e.y in y0:
            out = tuple(sorted(ctx.matching.edges + (e,), key=lambda t: (t.c, t.x, t.y)))
            return RainbowMatching(out)

    if ctx.matching.size == 0:
        return AugmentFailure(cap, 0, 0, (), False)

    D = build_switch_digraph(ctx, x0)
    paths_explored = 0
    deepest = 0
    frontier: set[int] = set()
    for depth in range(1, cap + 1):
        for path in iter_rainbow_paths(
            D,
            c_star,
            target=None,
            max_len=depth,
            edge_rainbow=True,
            vertex_scope="all",
            meter=meter,
        ):
            if len(path) != depth:
                continue  # shorter prefixes were handled at earlier depths
            paths_explored += 1
            deepest = max(deepest, depth)
            v = path[-1].head
            frontier.add(v)
            sigma = _arcs_to_switching(ctx, path)
            sx = sigma.x_vertices()
            for e in graph.colour_classes[v]:
                if e.x in x0 and e.x not in sx and e.y in y0:
                    exchanged = apply_switching(ctx, sigma)
                    out = tuple(
                        sorted(exchanged.edges + (e,), key=lambda t: (t.c, t.x, t.y))
                    )
                    return RainbowMatching(out)
    return AugmentFailure(cap, deepest, paths_explored, tuple(sorted(frontier)), True)


def _arcs_to_switching(ctx: MatchingContext, arcs: Sequence[Arc]) -> Switching:
    free: list[Edge] = []
    matched: list[Edge] = []
    for arc in arcs:
        head_edge = ctx.edge_of_colour[arc.head]
        free.append(Edge(arc.label, head_edge.y, arc.tail))
        matched.append(head_edge)
    return Switching(tuple(free), tuple(matched))


@dataclass
class EngineTrace:
    augmentations: list[tuple[int, int]] = field(default_factory=list)  # (c*, depth)
    rotations: int = 0
    failures: list[AugmentFailure] = field(default_factory=list)


def solve_switching_engine(
    graph: ColouredBipartiteMultigraph,
    depth_cap: int | None = None,
    budget: SearchBudget | None = None,
    rotation_limit: int = 20000,
) -> tuple[RainbowMatching, EngineTrace]:
    """Greedy start, then repeated switching augmentation.

    Each round restricts the instance to the covered colours plus one
    missing colour (the calculus needs exactly one missing colour) and asks
    :func:`augment` for a one-edge improvement.  Because X-side switchings
    preserve the Y-cover, every probe is repeated on the transposed
    bipartition, which moves the other side.  When no single switching
    augments, the engine explores matchings reachable by non-augmenting
    exchanges on either side (bounded breadth-first rotation) before giving
    up.  Output is always a valid rainbow matching; deterministic for fixed
    input order, depth cap, and limits.
    """
    matching = greedy_rainbow_matching(graph)
    trace = EngineTrace()
    while matching.size < graph.colour_count:
        improved = _improve_once(graph, matching, depth_cap, budget, trace, rotation_limit)
        if improved is None:
            break
        matching = improved
    ok = verify_rainbow_matching(graph, matching)
    if not ok:
        raise AssertionError(f"engine produced an invalid matching: {ok.reason}")
    return matching, trace


def _augment_oriented(
    graph: ColouredBipartiteMultigraph,
    matching: RainbowMatching,
    c_star: int,
    flip: bool,
    depth_cap: int | None,
    budget: SearchBudget | None,
) -> RainbowMatching | AugmentFailure:
    """Probe one missing colour on one orientation; answer in original ids."""
    host = transposed(graph) if flip else graph
    m = transpose_matching(matching) if flip else matching
    sub, cmap = restrict(host, colours=sorted(m.colours() | {c_star}))
    inv = {old: new for new, old in enumerate(cmap)}
    sub_m = RainbowMatching(tuple(Edge(e.x, e.y, inv[e.c]) for e in m.edges))
    ctx = make_context(sub, sub_m)
    result = augment(ctx, depth_cap, budget)
    if isinstance(result, AugmentFailure):
        return result
    out = relabel_matching(result, cmap)
    return transpose_matching(out) if flip else out


def _improve_once(
    graph: ColouredBipartiteMultigraph,
    matching: RainbowMatching,
    depth_cap: int | None,
    budget: SearchBudget | None,
    trace: EngineTrace,
    rotation_limit: int,
) -> RainbowMatching | None:
    missing = sorted(set(range(graph.colour_count)) - matching.colours())
    # Pass 1: direct augmentation per missing colour, either side.
    for flip in (False, True):
        for c_star in missing:
            result = _augment_oriented(graph, matching, c_star, flip, depth_cap, budget)
            if isinstance(result, RainbowMatching):
                trace.augmentations.append((c_star, result.size - matching.size))
                return result
            if not flip:
                trace.failures.append(result)
    # Pass 2: rotate through switch-reachable matchings of the same size.
    return _rotation_search(graph, matching, depth_cap, budget, trace, rotation_limit)


def _rotation_moves(
    graph: ColouredBipartiteMultigraph,
    current: RainbowMatching,
    c_star: int,
    flip: bool,
    depth_cap: int | None,
) -> list[RainbowMatching]:
    """All same-size matchings one switching away, in original orientation."""
    host = transposed(graph) if flip else graph
    m = transpose_matching(current) if flip else current
    if m.size == 0:
        return []
    sub, cmap = restrict(host, colours=sorted(m.colours() | {c_star}))
    inv = {old: new for new, old in enumerate(cmap)}
    sub_m = RainbowMatching(tuple(Edge(e.x, e.y, inv[e.c]) for e in m.edges))
    ctx = make_context(sub, sub_m)
    D = build_switch_digraph(ctx, frozenset(ctx.x0))
    cap = depth_cap if depth_cap is not None else sub.colour_count
    out = []
    for path in iter_rainbow_paths(
        D, ctx.c_star, target=None, max_len=cap, edge_rainbow=True, vertex_scope="all"
    ):
        if not path:
            continue
        sigma = _arcs_to_switching(ctx, path)
        rotated = relabel_matching(apply_switching(ctx, sigma), cmap)
        out.append(transpose_matching(rotated) if flip else rotated)
    return out


def _rotation_search(
    graph: ColouredBipartiteMultigraph,
    matching: RainbowMatching,
    depth_cap: int | None,
    budget: SearchBudget | None,
    trace: EngineTrace,
    rotation_limit: int,
) -> RainbowMatching | None:
    """Breadth-first search over same-size matchings reachable by exchanges.

    States are matchings; moves apply one switching (either orientation)
    drawn from a rainbow path of the state's switch digraph.  Each state is
    probed for a direct augmentation first, so the shallowest augmentable
    state wins.
    """
    if rotation_limit <= 0:
        return None
    seen: set[frozenset[Edge]] = {matching.edge_set()}
    queue: deque[RainbowMatching] = deque([matching])
    expanded = 0
    while queue:
        current = queue.popleft()
        missing = sorted(set(range(graph.colour_count)) - current.colours())
        for c_star in missing:
            expanded += 1
            if expanded > rotation_limit:
                return None
            for flip in (False, True):
                result = _augment_oriented(
                    graph, current, c_star, flip, depth_cap, budget
                )
                if isinstance(result, RainbowMatching):
                    trace.rotations = expanded
                    trace.augmentations.append((c_star, 0))
                    return result
            for flip in (False, True):
                for candidate in _rotation_moves(
                    graph, current, c_star, flip, depth_cap
                ):
                    key = candidate.edge_set()
                    if key not in seen:
                        seen.add(key)
                        queue.append(candidate)
    return None


def woolbright_floor(
    graph: ColouredBipartiteMultigraph,
    depth_cap: int | None = None,
    budget: SearchBudget | None = None,
) -> RainbowMatching:
    """Certified subroutine: a rainbow matching of size >= m - ceil(sqrt(m)).

    The guarantee applies when all m colour classes have at least m edges;
    otherwise the best engine/oracle matching is returned without a floor.
    The engine is tried first, the exact solver escalates, and a result
    below a guaranteed floor raises (that would be an engine bug or an
    undersized budget, never a true optimum).
    """
    from .oracle import exact_max_rainbow_matching

    m = graph.colour_count
    guaranteed = 0
    if m > 0 and all(len(cl) >= m for cl in graph.colour_classes):
        ceil_sqrt = math.isqrt(m - 1) + 1 if m > 1 else 1
        guaranteed = max(m - ceil_sqrt, 0)
    matching, _ = solve_switching_engine(graph, depth_cap, budget)
    if matching.size >= guaranteed:
        return matching
    result = exact_max_rainbow_matching(graph, budget=budget)
    if result.size >= guaranteed:
        return result.matching
    raise FloorNotCertified(
        f"best matching {result.size} below guaranteed floor {guaranteed}"
    )
