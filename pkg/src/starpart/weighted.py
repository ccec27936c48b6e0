"""Node-weighted variants: objectives, reductions, and approximations.

With node weights the indegree objective charges each node the weight sum
of its in-neighbors, and the star objective additionally charges a node
its own weight once it colors any edge.  Both decision problems are hard,
so this module provides exact brute force at desk scale, the two
hardness reductions (weighted indegree -> weighted star via a forcing
gadget, bin packing -> weighted indegree via a complete bipartite graph),
and LP-rounding approximations with factors 2 and 4.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .coloring import Orientation, PartialColoring, orientation_to_owner
from .errors import NoOutgoingEdge, NotPseudoforest, TooLarge, UnsupportedKind
from .graph import Graph, GraphKind, build_graph
from .lp import find_basic_feasible

_WEIGHTED_GUARD = 24


def _check_pairs(g: Graph) -> None:
    # distinct in-neighbors mean distinct stars only on simple graphs
    if g.kind is not GraphKind.SIMPLE or any(len(nodes) != 2 for nodes in g.edges):
        raise UnsupportedKind("weighted objectives are defined on simple graphs")


def weighted_indeg_value(g: Graph, weights, orientation: Orientation, v: int) -> int:
    """Weight sum of the nodes with an edge directed toward v."""
    total = 0
    for e in g.incidence[v]:
        if orientation.head[e] == v:
            nodes = g.edges[e]
            tail = nodes[0] if nodes[1] == v else nodes[1]
            total += weights[tail]
    return total


def weighted_star_value(g: Graph, weights, orientation: Orientation, v: int) -> int:
    """Weight sum of the stars containing v.

    Every in-edge contributes its tail's star; v's own star counts once
    iff v has an outgoing edge.
    """
    total = weighted_indeg_value(g, weights, orientation, v)
    if any(orientation.head[e] != v for e in g.incidence[v]):
        total += weights[v]
    return total


def brute_force_weighted(g: Graph, weights, objective: str) -> tuple[int, Orientation]:
    """Exact minimum of the chosen objective over all orientations.

    ``objective`` is "ind" or "star".  The weighted problems carry no
    capacities, so every orientation is admissible.
    """
    _check_pairs(g)
    if objective not in ("ind", "star"):
        raise ValueError(f"unknown objective {objective!r}")
    if g.m > _WEIGHTED_GUARD:
        raise TooLarge(f"{g.m} edges exceed the enumeration guard {_WEIGHTED_GUARD}")
    if g.m == 0:
        return 0, Orientation(())

    n, m = g.n, g.m
    w = np.asarray(weights, dtype=np.float64)
    t0w = np.zeros((m, n))
    t1w = np.zeros((m, n))
    t0c = np.zeros((m, n))
    t1c = np.zeros((m, n))
    for e, (lo, hi) in enumerate(g.edges):
        t0w[e, hi] = w[lo]  # bit 0: tail lo, head hi
        t1w[e, lo] = w[hi]
        t0c[e, hi] = 1.0
        t1c[e, lo] = 1.0
    deg = np.zeros(n)
    for e, nodes in enumerate(g.edges):
        for v in nodes:
            deg[v] += 1

    best_val, best_idx = None, None
    chunk = 1 << 16
    shifts = np.arange(m, dtype=np.uint32)
    for lo_i in range(0, 1 << m, chunk):
        hi_i = min(lo_i + chunk, 1 << m)
        idx = np.arange(lo_i, hi_i, dtype=np.uint32)
        bits = ((idx[:, None] >> shifts) & 1).astype(np.float64)
        in_w = bits @ t1w + (1.0 - bits) @ t0w
        if objective == "star":
            in_c = bits @ t1c + (1.0 - bits) @ t0c
            in_w = in_w + w * ((deg - in_c) > 0)
        values = in_w.max(axis=1)
        pos = int(np.argmin(values))
        val = float(values[pos])
        if best_val is None or val < best_val:
            best_val, best_idx = val, lo_i + pos
    heads = []
    for e, (lo, hi) in enumerate(g.edges):
        heads.append(lo if (best_idx >> e) & 1 else hi)
    return int(best_val), Orientation(tuple(heads))


# --- gadget reduction: weighted indegree -> weighted star ------------------

_GADGET_ROLES = 9  # four ring nodes plus five heavy pendant anchors


@dataclass(frozen=True)
class GadgetReduction:
    """Per-node forcing gadget attached to every original node.

    Each original node v gains nine companions: a 4-node ring v1..v4 and
    heavy anchor pendants on v and each ring node.  The anchors are so
    heavy that their edges must point at them, which in turn forces
    {v,v1} toward v in every partition within the threshold; v therefore
    pays exactly M for its gadget, leaving k for its original in-edges.
    """

    original: Graph
    weights: tuple[int, ...]
    bound: int
    big: int  # the constant M = bound + 2 * max weight
    reduced: Graph
    gadget_nodes: tuple[tuple[int, ...], ...]  # per node: v1..v4, anchors of v, v1..v4

    @property
    def threshold(self) -> int:
        return self.big + self.bound


def gadget_transform(g: Graph, weights, k: int) -> GadgetReduction:
    """Reduce the weighted indegree decision at bound k to weighted star.

    YES at bound k on the original is equivalent to YES at bound M + k on
    the reduced graph, with M = k + 2 max weight.
    """
    _check_pairs(g)
    if k < 1:
        raise ValueError("the bound k must be at least 1")
    weights = tuple(int(x) for x in weights)
    big = k + 2 * max(weights)
    n = g.n
    new_weights = list(weights)
    edges = list(g.edges)
    gadget_nodes = []
    next_id = n
    for v in range(n):
        v1, v2, v3, v4 = next_id, next_id + 1, next_id + 2, next_id + 3
        anchors = tuple(range(next_id + 4, next_id + 9))  # for v, v1, v2, v3, v4
        next_id += _GADGET_ROLES
        gadget_nodes.append((v1, v2, v3, v4) + anchors)
        new_weights += [
            big - weights[v],
            k + weights[v],
            k + weights[v],
            big - weights[v],
        ]
        new_weights += [big + k + 1] * 5
        ring = [v, v1, v2, v3, v4]
        edges += [(v, v1), (v1, v2), (v2, v3), (v2, v4), (v3, v4)]
        edges += [(ring[i], anchors[i]) for i in range(5)]
    reduced = build_graph(next_id, edges, GraphKind.SIMPLE, weights=new_weights)
    return GadgetReduction(
        original=g,
        weights=weights,
        bound=k,
        big=big,
        reduced=reduced,
        gadget_nodes=tuple(gadget_nodes),
    )


def gadget_orientation(red: GadgetReduction, orientation: Orientation) -> Orientation:
    """Extend an orientation of the original edges across every gadget.

    Uses the canonical gadget pattern, which achieves the threshold
    whenever the original orientation meets its bound.
    """
    g = red.original
    heads = list(orientation.head)
    for v in range(g.n):
        v1, v2, v3, v4, av, a1, a2, a3, a4 = red.gadget_nodes[v]
        # ring edges: v1->v, v2->v1, v2->v3, v4->v2, v3->v4; anchors absorb
        heads += [v, v1, v3, v2, v4]
        heads += [av, a1, a2, a3, a4]
    return Orientation(tuple(heads))


# --- bin packing -> weighted indegree ---------------------------------------


@dataclass(frozen=True)
class BinPackingInstance:
    sizes: tuple[int, ...]
    bins: int
    capacity: int

    def __post_init__(self):
        if self.bins < 2:
            raise ValueError("need at least two bins")
        if not self.sizes or any(s < 1 for s in self.sizes):
            raise ValueError("item sizes must be positive")
        if self.capacity < 1:
            raise ValueError("bin capacity must be positive")


def binpacking_to_wind(bp: BinPackingInstance) -> tuple[Graph, int]:
    """Complete bipartite weighted-indegree instance deciding the packing.

    All weights are scaled by (bins - 1) so the per-bin weight stays an
    integer: item i gets size * (bins - 1), every bin node gets the
    capacity, and the decision threshold is capacity * (bins - 1).
    """
    n, kbins, c = len(bp.sizes), bp.bins, bp.capacity
    scale = kbins - 1
    weights = [s * scale for s in bp.sizes] + [c] * kbins
    edges = [(j, n + l) for j in range(n) for l in range(kbins)]
    graph = build_graph(n + kbins, edges, GraphKind.SIMPLE, weights=weights)
    return graph, c * scale


def packing_to_orientation(bp: BinPackingInstance, assignment) -> Orientation:
    """Orient the reduced graph from a packing: each item points at its bin."""
    n, kbins = len(bp.sizes), bp.bins
    heads = []
    for j in range(n):
        for l in range(kbins):
            heads.append(n + l if assignment[j] == l else j)
    return Orientation(tuple(heads))


def extract_packing(bp: BinPackingInstance, orientation: Orientation) -> tuple[int, ...]:
    """Read a packing off a threshold-feasible orientation.

    Each item goes to the smallest-index bin its node points at; a
    threshold-feasible orientation always has such a bin because an item
    with only in-edges would already exceed the threshold.
    """
    n, kbins = len(bp.sizes), bp.bins
    assignment = []
    for j in range(n):
        for l in range(kbins):
            if orientation.head[j * kbins + l] == n + l:
                assignment.append(l)
                break
        else:
            raise NoOutgoingEdge(f"item node {j} keeps all its edges")
    return tuple(assignment)


# --- LP relaxation and rounding ---------------------------------------------


@dataclass(frozen=True)
class FractionalOrientation:
    """Per-edge assignment fractions, exact rationals summing to one.

    ``fractions[e][i]`` is the share of edge e assigned to its i-th
    endpoint (sorted order); assigning a share to an endpoint loads it
    with the other endpoint's weight.  ``limit`` is the load bound the LP
    was solved at.
    """

    graph: Graph
    weights: tuple[int, ...]
    limit: int
    fractions: tuple[tuple[Fraction, Fraction], ...]

    def load(self, v: int) -> Fraction:
        total = Fraction(0)
        for e in self.graph.incidence[v]:
            lo, hi = self.graph.edges[e]
            i, other = (0, hi) if v == lo else (1, lo)
            total += self.fractions[e][i] * self.weights[other]
        return total


def lp_feasible(g: Graph, weights, limit: int, rule: str = "bland") -> FractionalOrientation | None:
    """Basic feasible point of the load LP at the given limit, if any.

    Edge shares must be non-negative and sum to one per edge, a share is
    forbidden outright when its cost alone exceeds the limit, and every
    node's load stays within the limit.  The returned point is a vertex,
    so its strictly fractional edges form a pseudoforest.  ``rule`` picks
    the simplex pivot rule and thereby possibly a different vertex.
    """
    _check_pairs(g)
    weights = tuple(int(x) for x in weights)
    forced_load = [0] * g.n
    free_edges = []  # (edge id, var index of the lo share)
    var_count = 0
    for e, (lo, hi) in enumerate(g.edges):
        cost_lo, cost_hi = weights[hi], weights[lo]  # cost of assigning to lo / hi
        ok_lo, ok_hi = cost_lo <= limit, cost_hi <= limit
        if not ok_lo and not ok_hi:
            return None
        if ok_lo and ok_hi:
            free_edges.append((e, var_count))
            var_count += 2
        elif ok_lo:
            forced_load[lo] += cost_lo
        else:
            forced_load[hi] += cost_hi

    node_terms: dict[int, list[tuple[int, Fraction]]] = {}
    eq_rows = []
    for e, base in free_edges:
        lo, hi = g.edges[e]
        eq_rows.append(([(base, Fraction(1)), (base + 1, Fraction(1))], Fraction(1)))
        node_terms.setdefault(lo, []).append((base, Fraction(weights[hi])))
        node_terms.setdefault(hi, []).append((base + 1, Fraction(weights[lo])))
    ub_rows = []
    for v in range(g.n):
        slack = limit - forced_load[v]
        if slack < 0:
            return None
        if v in node_terms:
            ub_rows.append((node_terms[v], Fraction(slack)))

    solution = find_basic_feasible(var_count, eq_rows, ub_rows, rule=rule)
    if solution is None:
        return None
    return _assemble_fractional(g, weights, limit, free_edges, solution)


def _assemble_fractional(g, weights, limit, free_edges, solution) -> FractionalOrientation:
    one, zero = Fraction(1), Fraction(0)
    fractions: list[tuple[Fraction, Fraction]] = []
    by_edge = {e: base for e, base in free_edges}
    for e, (lo, hi) in enumerate(g.edges):
        if e in by_edge:
            base = by_edge[e]
            fractions.append((solution[base], solution[base + 1]))
        elif weights[hi] <= limit:
            fractions.append((one, zero))
        else:
            fractions.append((zero, one))
    return FractionalOrientation(g, tuple(weights), limit, tuple(fractions))


def round_fractional(frac: FractionalOrientation) -> Orientation:
    """Integral orientation from a basic fractional one.

    Strictly fractional edges form a pseudoforest; each tree component is
    rooted and its edges handed to the child side, each unicyclic
    component orients its cycle consistently, so every node picks up at
    most one rounded edge.
    """
    g = frac.graph
    heads: list[int | None] = [None] * g.m
    frac_adj: dict[int, list[tuple[int, int]]] = {}
    frac_edges = []
    for e, (lo, hi) in enumerate(g.edges):
        f_lo, f_hi = frac.fractions[e]
        if f_lo == 1:
            heads[e] = lo
        elif f_hi == 1:
            heads[e] = hi
        else:
            frac_edges.append(e)
            frac_adj.setdefault(lo, []).append((hi, e))
            frac_adj.setdefault(hi, []).append((lo, e))

    seen_nodes: set[int] = set()
    for start in sorted(frac_adj):
        if start in seen_nodes:
            continue
        comp_nodes, comp_edges = _component(frac_adj, start)
        seen_nodes |= comp_nodes
        if len(comp_edges) > len(comp_nodes):
            raise NotPseudoforest(
                f"fractional component at node {start} has {len(comp_edges)} edges "
                f"on {len(comp_nodes)} nodes"
            )
        if len(comp_edges) == len(comp_nodes):
            _orient_unicyclic(g, frac_adj, comp_nodes, heads)
        else:
            _orient_tree(g, frac_adj, min(comp_nodes), heads)
    return Orientation(tuple(heads))


def _component(adj, start):
    nodes = {start}
    edges = set()
    queue = [start]
    for v in queue:
        for w, e in adj[v]:
            edges.add(e)
            if w not in nodes:
                nodes.add(w)
                queue.append(w)
    return nodes, edges


def _orient_tree(g, adj, root, heads):
    queue = [root]
    seen = {root}
    for v in queue:
        for w, e in adj[v]:
            if w not in seen and heads[e] is None:
                heads[e] = w  # away from the root: the child receives it
                seen.add(w)
                queue.append(w)


def _orient_unicyclic(g, adj, comp_nodes, heads):
    deg = {v: len([1 for _, e in adj[v] if heads[e] is None]) for v in comp_nodes}
    removed: set[int] = set()
    queue = [v for v in comp_nodes if deg[v] == 1]
    for v in queue:
        for w, e in adj[v]:
            if e not in removed and heads[e] is None:
                removed.add(e)
                deg[v] -= 1
                deg[w] -= 1
                if deg[w] == 1:
                    queue.append(w)
    cycle_nodes = sorted(v for v in comp_nodes if deg[v] >= 2)
    # Walk the cycle from its smallest node toward its smaller neighbor.
    start = cycle_nodes[0]
    prev, cur = None, start
    while True:
        step = sorted(
            (w, e)
            for w, e in adj[cur]
            if e not in removed and heads[e] is None and w != prev
        )
        if not step:
            break
        w, e = step[0]
        heads[e] = w
        prev, cur = cur, w
        if cur == start:
            break
    # Close the loop on the final edge back to the start if still open.
    for w, e in adj[cur]:
        if e not in removed and heads[e] is None and w == start:
            heads[e] = w
    # Hang the stripped trees off the cycle, pointing away from it.
    seen = set(cycle_nodes)
    queue = list(cycle_nodes)
    for v in queue:
        for w, e in adj[v]:
            if heads[e] is None and w not in seen:
                heads[e] = w
                seen.add(w)
                queue.append(w)


# --- approximation algorithms ------------------------------------------------


def approx2_wind(g: Graph, weights=None) -> tuple[Orientation, int]:
    """2-approximation of the optimal weighted max indegree.

    Binary search for the smallest LP-feasible load limit, then round the
    basic solution; rounding adds at most one admissible edge per node,
    so the result stays within twice the limit and the limit never
    exceeds the optimum.
    """
    _check_pairs(g)
    w = tuple(weights) if weights is not None else g.weights
    if g.m == 0:
        return Orientation(()), 0
    lo = max(min(w[a], w[b]) for a, b in g.edges)
    hi = sum(w)
    frac = lp_feasible(g, w, hi)
    assert frac is not None, "the load LP is always feasible at the weight total"
    while lo < hi:
        mid = (lo + hi) // 2
        cand = lp_feasible(g, w, mid)
        if cand is None:
            lo = mid + 1
        else:
            hi, frac = mid, cand
    orientation = _round_with_retry(g, w, hi, frac)
    value = max(weighted_indeg_value(g, w, orientation, v) for v in range(g.n))
    return orientation, value


def _round_with_retry(g, w, limit, frac):
    try:
        return round_fractional(frac)
    except NotPseudoforest:
        # Retry from a different vertex; only a non-basic point can fail.
        retry = lp_feasible(g, w, limit, rule="dantzig")
        if retry is None:
            raise
        return round_fractional(retry)


def approx4_wstar(g: Graph, weights=None) -> tuple[PartialColoring, int]:
    """4-approximation of the optimal weighted star value.

    Reads the 2-approximate indegree orientation as a coloring: a node
    with any outgoing edge weighs no more than the heaviest load, so the
    star value is at most twice the indegree value pointwise.
    """
    w = tuple(weights) if weights is not None else g.weights
    orientation, _ = approx2_wind(g, w)
    if g.m == 0:
        return PartialColoring(()), 0
    coloring = orientation_to_owner(g, orientation)
    value = max(weighted_star_value(g, w, orientation, v) for v in range(g.n))
    return coloring, value
