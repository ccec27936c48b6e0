import itertools

import pytest

from starpart import Orientation, build_graph, generate, GeneratorSpec


def connected_edge_sets(n):
    """All labeled connected simple graphs on exactly n nodes."""
    if n == 1:
        yield ()
        return
    pairs = list(itertools.combinations(range(n), 2))
    p = len(pairs)
    for mask in range(1 << p):
        if bin(mask).count("1") < n - 1:
            continue
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        components = n
        edges = []
        for i in range(p):
            if mask >> i & 1:
                edges.append(pairs[i])
                ra, rb = find(pairs[i][0]), find(pairs[i][1])
                if ra != rb:
                    parent[ra] = rb
                    components -= 1
        if components == 1:
            yield tuple(edges)


@pytest.fixture
def triangle():
    return build_graph(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def fig2():
    return generate(GeneratorSpec("fig2"))


@pytest.fixture
def fig6a():
    """5-node probe graph plus a fixed starting orientation."""
    g = build_graph(5, [(0, 1), (0, 2), (0, 4), (2, 3), (1, 4), (2, 4), (3, 4)])
    start = Orientation((0, 2, 4, 2, 4, 4, 3))
    return g, start


@pytest.fixture
def fig6d():
    """7-node graph where target 2 is infeasible, plus a fixed starting orientation."""
    g = generate(GeneratorSpec("fig6d"))
    start = Orientation((2, 3, 0, 2, 3, 5, 6, 6, 1, 3))
    return g, start
