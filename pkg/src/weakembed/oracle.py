"""Ground-truth machinery: exhaustive checks and instance generators.

Everything here trades time for independence: the routines avoid the data
structures and algorithms of the fast path so they can serve as oracles in
the test and acceptance suites.
"""

from __future__ import annotations

import itertools

from .graph import Multigraph, PreconditionError


def _simple_skeleton(g, restrict=None):
    """Loop-free simple version of the induced subgraph: adjacency sets."""
    pool = set(restrict) if restrict is not None else set(g.adj)
    adj = {v: set() for v in pool}
    for e, (a, b) in g.edges.items():
        if a in pool and b in pool and a != b:
            adj[a].add(b)
            adj[b].add(a)
    return adj


def _count_faces(adj, rotations):
    """Number of faces of the rotation system (simple graph, sets -> order)."""
    succ = {}
    for v, order in rotations.items():
        n = len(order)
        for i, w in enumerate(order):
            succ[(v, w)] = order[(i + 1) % n]
    darts = {(v, w) for v in adj for w in adj[v]}
    seen = set()
    faces = 0
    for d in darts:
        if d in seen:
            continue
        faces += 1
        v, w = d
        while (v, w) not in seen:
            seen.add((v, w))
            v, w = w, succ[(w, v)]
    return faces


def brute_force_planar(g, restrict=None, cap=2_000_000):
    """Planarity by exhaustive rotation-system search (small graphs only).

    A connected graph is planar iff some rotation system satisfies Euler's
    formula n - m + f = 2. Components are tested independently. The simple
    density bound m <= 3n - 6 prunes hopeless components before enumeration.
    """
    adj = _simple_skeleton(g, restrict)
    seen = set()
    for s in adj:
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        n = len(comp)
        m = sum(len(adj[v]) for v in comp) // 2
        if n >= 3 and m > 3 * n - 6:
            return False
        if m <= n:   # at most one cycle: always planar
            continue
        total = 1
        for v in comp:
            d = len(adj[v])
            for k in range(2, d):
                total *= k
        if total > cap:
            raise PreconditionError("rotation enumeration too large")
        found = False
        vs = sorted(comp)
        pools = []
        for v in vs:
            nb = sorted(adj[v])
            if len(nb) <= 2:
                pools.append([nb])
            else:
                head, rest = nb[0], nb[1:]
                pools.append([[head] + list(p) for p in itertools.permutations(rest)])
        for choice in itertools.product(*pools):
            rots = dict(zip(vs, choice))
            f = _count_faces({v: adj[v] for v in comp}, rots)
            if n - m + f == 2:
                found = True
                break
        if not found:
            return False
    return True


def enumerate_two_cuts(g, restrict=None):
    """All separation pairs of the induced subgraph, by deletion testing.

    Exhaustive O(n^2 (n+m)); intended for graphs with m <= 12. A pair
    {u, v} counts when its removal disconnects the rest, or leaves a
    connected rest while some parallel bundle / subdivided route between u
    and v is split off, matching the classical split-pair definition:
    here we report exactly the pairs whose deletion disconnects the
    remaining vertex set (assuming the input is biconnected with >= 4
    vertices, this is the standard notion).
    """
    pool = sorted(set(restrict) if restrict is not None else set(g.adj))
    out = []
    for i in range(len(pool)):
        for j in range(i + 1, len(pool)):
            u, v = pool[i], pool[j]
            rest = [x for x in pool if x not in (u, v)]
            if not rest:
                continue
            parts = g.components(rest)
            if len(parts) >= 2:
                out.append((u, v))
    return out
