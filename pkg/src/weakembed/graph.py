"""Identifier-based mutable multigraphs and the local surgery primitives.

Vertices and edges are opaque integer identifiers, allocated once and never
reused for the lifetime of a graph object, so that logs and provenance maps
stay valid across arbitrary surgery.
"""

from __future__ import annotations


class StructuralError(Exception):
    """Raised when an operation references unknown identifiers."""


class PreconditionError(Exception):
    """Raised when an operation's precondition does not hold."""


class Multigraph:
    """Undirected multigraph with loops and parallel edges.

    adjacency lists hold edge identifiers; a loop appears twice in the
    adjacency of its vertex, so degree == len(adjacency).
    """

    __slots__ = ("adj", "edges", "_next_v", "_next_e")

    def __init__(self):
        self.adj = {}            # vertex -> list of edge ids
        self.edges = {}          # edge id -> (a, b)
        self._next_v = 0
        self._next_e = 0

    # -- basic surgery ----------------------------------------------------

    def add_vertex(self):
        v = self._next_v
        self._next_v += 1
        self.adj[v] = []
        return v

    def add_edge(self, a, b):
        if a not in self.adj or b not in self.adj:
            raise StructuralError(f"unknown endpoint in ({a}, {b})")
        e = self._next_e
        self._next_e += 1
        self.edges[e] = (a, b)
        self.adj[a].append(e)
        self.adj[b].append(e)
        return e

    def remove_edge(self, e):
        try:
            a, b = self.edges.pop(e)
        except KeyError:
            raise StructuralError(f"unknown edge {e}") from None
        self.adj[a].remove(e)
        if b != a:
            self.adj[b].remove(e)
        else:
            self.adj[a].remove(e)

    def remove_vertex(self, v):
        """Remove v and every incident edge."""
        if v not in self.adj:
            raise StructuralError(f"unknown vertex {v}")
        for e in list(self.adj[v]):
            if e in self.edges:
                self.remove_edge(e)
        del self.adj[v]

    def endpoints(self, e):
        try:
            return self.edges[e]
        except KeyError:
            raise StructuralError(f"unknown edge {e}") from None

    def other_end(self, e, v):
        a, b = self.edges[e]
        return b if a == v else a

    def degree(self, v):
        return len(self.adj[v])

    def is_loop(self, e):
        a, b = self.edges[e]
        return a == b

    def reattach(self, e, old, new):
        """Move the `old` end of edge e to vertex `new`."""
        a, b = self.edges[e]
        if a == old:
            self.edges[e] = (new, b)
        elif b == old:
            self.edges[e] = (a, new)
        else:
            raise StructuralError(f"edge {e} not incident to {old}")
        self.adj[old].remove(e)
        self.adj[new].append(e)

    # -- compound operations ----------------------------------------------

    def subdivide_edge(self, e, k=1):
        """Replace e by a path of k+1 fresh edges through k fresh vertices.

        Returns (new_vertices, new_edges) listed from the first endpoint of
        e toward the second.
        """
        if k < 1:
            raise PreconditionError("k must be >= 1")
        a, b = self.endpoints(e)
        self.remove_edge(e)
        vs = [self.add_vertex() for _ in range(k)]
        chain = [a] + vs + [b]
        es = [self.add_edge(chain[i], chain[i + 1]) for i in range(k + 1)]
        return vs, es

    def suppress_vertex(self, p):
        """Remove a degree-2 vertex, merging its two incident edges.

        Returns ("edge", new_edge) for a proper merge, ("loop", new_loop)
        when both neighbors coincide (caller decides whether to delete it),
        or ("dropped", None) when the two slots were one loop at p.
        """
        slots = self.adj.get(p)
        if slots is None:
            raise StructuralError(f"unknown vertex {p}")
        if len(slots) != 2:
            raise PreconditionError(f"vertex {p} has degree {len(slots)}, not 2")
        e1, e2 = slots
        if e1 == e2:
            # p carries a single loop; nothing to merge
            self.remove_edge(e1)
            del self.adj[p]
            return "dropped", None
        a = self.other_end(e1, p)
        b = self.other_end(e2, p)
        self.remove_edge(e1)
        self.remove_edge(e2)
        del self.adj[p]
        e = self.add_edge(a, b)
        return ("loop", e) if a == b else ("edge", e)

    def contract_edges(self, es):
        """Contract every edge in es.

        Each connected component of (V, es) collapses onto one surviving
        representative vertex. Returns (vertex_map, loops) where vertex_map
        sends every absorbed vertex to its representative and loops lists
        the non-contracted edges that became loops (left in place; the
        caller decides deletion).
        """
        parent = {}

        def find(x):
            r = x
            while parent.get(r, r) != r:
                r = parent[r]
            while parent.get(x, x) != x:
                parent[x], x = r, parent[x]
            return r

        for e in es:
            a, b = self.endpoints(e)
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
        for e in list(es):
            self.remove_edge(e)
        vmap = {}
        for v in list(self.adj):
            r = find(v)
            if r != v:
                vmap[v] = r
        loops = []
        for v, r in vmap.items():
            for e in list(self.adj[v]):
                self.reattach(e, v, r)
            del self.adj[v]
        for v in set(vmap.values()):
            for e in self.adj[v]:
                if self.is_loop(e) and e not in loops:
                    loops.append(e)
        return vmap, loops

    def components(self, restrict=None):
        """Connected components of the induced subgraph on `restrict`.

        Returns a list of (vertex_set, representative_edge_or_None).
        """
        if restrict is None:
            pool = set(self.adj)
        else:
            pool = set(restrict)
        seen = set()
        out = []
        for s in pool:
            if s in seen:
                continue
            seen.add(s)
            stack = [s]
            part = {s}
            rep = None
            while stack:
                v = stack.pop()
                for e in self.adj[v]:
                    w = self.other_end(e, v)
                    if w not in pool:
                        continue
                    if rep is None:
                        rep = e
                    if w not in seen:
                        seen.add(w)
                        part.add(w)
                        stack.append(w)
            out.append((part, rep))
        return out

    def clone(self):
        g = Multigraph()
        g.adj = {v: list(sl) for v, sl in self.adj.items()}
        g.edges = dict(self.edges)
        g._next_v = self._next_v
        g._next_e = self._next_e
        return g

    def validate(self):
        """Full O(m) cross-reference audit; raises on inconsistency."""
        count = {v: 0 for v in self.adj}
        for e, (a, b) in self.edges.items():
            if a not in self.adj or b not in self.adj:
                raise StructuralError(f"edge {e} has unknown endpoint")
            count[a] += 1
            count[b] += 1
        for v, slots in self.adj.items():
            if len(slots) != count[v]:
                raise StructuralError(f"adjacency of {v} out of sync")
            for e in slots:
                if e not in self.edges:
                    raise StructuralError(f"stale edge {e} at {v}")
                a, b = self.edges[e]
                if v != a and v != b:
                    raise StructuralError(f"edge {e} listed at non-endpoint {v}")
        for e, (a, b) in self.edges.items():
            want = 2 if a == b else 1
            if self.adj[a].count(e) != want:
                raise StructuralError(f"edge {e} multiplicity wrong at {a}")
            if a != b and self.adj[b].count(e) != 1:
                raise StructuralError(f"edge {e} multiplicity wrong at {b}")
        return True
