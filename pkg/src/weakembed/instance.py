"""Simplicial-map instances: an abstract multigraph over an embedded graph.

The instance owns the cross-reference layers the algorithm lives on: the
vertex-to-cluster map, the pipe-edge-to-pipe map, subdivision provenance, and
the registry of thick edges (triples of parallel pipe-edges that count as one
unit everywhere).
"""

from __future__ import annotations

from .graph import Multigraph, PreconditionError, StructuralError
from .embedded import EmbeddedGraph


class ThickRegistry:
    """Disjoint triples of pipe-edges flagged as thick edges."""

    def __init__(self):
        self.groups = {}      # gid -> [e1, e2, e3]
        self.of_edge = {}     # edge -> gid
        self.pipe_of = {}     # gid -> Pipe
        self._next = 0

    def make(self, edges, pipe):
        if len(edges) != 3:
            raise PreconditionError("a thick edge is exactly three pipe-edges")
        gid = self._next
        self._next += 1
        self.groups[gid] = list(edges)
        self.pipe_of[gid] = pipe
        for e in edges:
            if e in self.of_edge:
                raise PreconditionError(f"edge {e} already in a thick group")
            self.of_edge[e] = gid
        return gid

    def drop(self, gid):
        for e in self.groups.pop(gid):
            del self.of_edge[e]
        del self.pipe_of[gid]

    def replace_edge(self, old, new):
        gid = self.of_edge.pop(old, None)
        if gid is None:
            return
        grp = self.groups[gid]
        grp[grp.index(old)] = new
        self.of_edge[new] = gid

    def group_of(self, e):
        return self.of_edge.get(e)


class SimplicialMapInstance:
    """A simplicial map from a multigraph G into an embedded graph H."""

    def __init__(self, g=None, h=None):
        self.g = g if g is not None else Multigraph()
        self.h = h if h is not None else EmbeddedGraph()
        self.vmap = {}          # vertex -> Cluster (authoritative unless tracked)
        self.emap = {}          # pipe-edge -> Pipe
        self.pedges = {}        # Pipe -> set of pipe-edges
        self.thick = ThickRegistry()
        self.provenance = {}    # edge -> parent edge it was split from
        self.tracker = None     # engine-owned component tracker, if any

    # -- cluster/pipe membership --------------------------------------------

    def cluster_of(self, v):
        t = self.tracker
        if t is not None:
            comp = t.comp_of.get(v)
            if comp is not None:
                return comp.cluster
        return self.vmap[v]

    def set_cluster(self, v, c):
        old = self.vmap.get(v)
        if old is not None:
            old.gverts.discard(v)
        self.vmap[v] = c
        c.gverts.add(v)

    def drop_vertex_map(self, v):
        c = self.vmap.pop(v, None)
        if c is not None:
            c.gverts.discard(v)

    def pipe_of(self, e):
        return self.emap.get(e)

    def edges_in(self, pipe):
        return self.pedges.get(pipe, ())

    def sigma(self, pipe):
        """Pipe-edge count with each thick triple counted as one."""
        es = self.pedges.get(pipe)
        if not es:
            return 0
        gids = {self.thick.of_edge[e] for e in es if e in self.thick.of_edge}
        return len(es) - 2 * len(gids)

    def thick_groups_in(self, pipe):
        es = self.pedges.get(pipe, ())
        return {self.thick.of_edge[e] for e in es if e in self.thick.of_edge}

    # -- edge creation / deletion ---------------------------------------------

    def _bind(self, e, pipe):
        self.emap[e] = pipe
        self.pedges.setdefault(pipe, set()).add(e)

    def _unbind(self, e):
        pipe = self.emap.pop(e, None)
        if pipe is not None:
            s = self.pedges.get(pipe)
            s.discard(e)
            if not s:
                del self.pedges[pipe]
        return pipe

    def new_vertex(self, cluster):
        v = self.g.add_vertex()
        self.set_cluster(v, cluster)
        return v

    def new_cluster_edge(self, a, b):
        return self.g.add_edge(a, b)

    def new_pipe_edge(self, a, b, pipe):
        e = self.g.add_edge(a, b)
        self._bind(e, pipe)
        return e

    def delete_edge(self, e):
        if e in self.thick.of_edge:
            raise PreconditionError("degroup a thick edge before deleting it")
        self._unbind(e)
        self.g.remove_edge(e)

    def delete_vertex(self, v):
        for e in list(self.g.adj[v]):
            if e in self.g.edges:
                gid = self.thick.group_of(e)
                if gid is not None:
                    self.thick.drop(gid)
                self.delete_edge(e)
        self.g.remove_vertex(v)
        self.drop_vertex_map(v)

    def make_cluster_edge(self, e):
        """Reclassify a pipe-edge as a cluster-edge (after a contraction)."""
        gid = self.thick.group_of(e)
        if gid is not None:
            self.thick.drop(gid)
        self._unbind(e)

    def rebind_pipe(self, e, pipe):
        self._unbind(e)
        self._bind(e, pipe)

    # -- structured surgery ----------------------------------------------------

    def subdivide_pipe_edge(self, e, side):
        """Split pipe-edge e once at its `side`-cluster end.

        Returns (new_vertex, cluster_piece, pipe_piece). The new vertex joins
        `side`; the piece toward the far cluster inherits e's pipe binding,
        thick membership and provenance.
        """
        pipe = self.emap.get(e)
        if pipe is None:
            raise PreconditionError(f"edge {e} is not a pipe-edge")
        a, b = self.g.endpoints(e)
        if self.cluster_of(a) is side:
            near, far = a, b
        elif self.cluster_of(b) is side:
            near, far = b, a
        else:
            raise PreconditionError("side cluster not incident to the edge")
        self._unbind(e)
        vs, es = self.g.subdivide_edge(e, 1)
        x = vs[0]
        first, second = es
        # graph.subdivide orders pieces from endpoint a; orient to `near`
        if near is a:
            cpiece, ppiece = first, second
        else:
            cpiece, ppiece = second, first
        self.set_cluster(x, side)
        self._bind(ppiece, pipe)
        self.provenance[cpiece] = e
        self.provenance[ppiece] = e
        self.thick.replace_edge(e, ppiece)
        return x, cpiece, ppiece

    def suppress_vertex(self, p):
        """Suppress a degree-2 vertex whose two edges are cluster-edges.

        Returns the outcome of Multigraph.suppress_vertex; the merged edge
        inherits no pipe binding (both inputs were cluster-edges).
        """
        for e in self.g.adj[p]:
            if e in self.emap:
                raise PreconditionError("cannot suppress across a pipe-edge")
        kind, e = self.g.suppress_vertex(p)
        self.drop_vertex_map(p)
        return kind, e

    # -- component-local measurements -------------------------------------------

    def comp_units(self, vertices):
        """Per-pipe incidence of a component: pipe -> (edge_count, thick_gids)."""
        out = {}
        seen_g = set()
        for v in vertices:
            for e in self.g.adj[v]:
                pipe = self.emap.get(e)
                if pipe is None:
                    continue
                cnt, gids = out.setdefault(pipe, [0, set()])
                out[pipe][0] += 1
                gid = self.thick.group_of(e)
                if gid is not None and gid not in seen_g:
                    seen_g.add(gid)
                    out[pipe][1].add(gid)
        return {p: (c, g) for p, (c, g) in out.items()}

    def pipe_degree(self, vertices):
        pipes = set()
        for v in vertices:
            for e in self.g.adj[v]:
                pipe = self.emap.get(e)
                if pipe is not None:
                    pipes.add(pipe)
        return len(pipes)

    def terminals_of(self, vertices):
        out = []
        for v in vertices:
            if any(e in self.emap for e in self.g.adj[v]):
                out.append(v)
        return out

    # -- audits -------------------------------------------------------------------

    def validate(self):
        self.g.validate()
        self.h.validate()
        for v in self.g.adj:
            c = self.cluster_of(v)
            if not c.alive:
                raise StructuralError(f"vertex {v} mapped to dead cluster")
        for e, (a, b) in self.g.edges.items():
            ca, cb = self.cluster_of(a), self.cluster_of(b)
            pipe = self.emap.get(e)
            if pipe is None:
                if ca is not cb:
                    raise StructuralError(f"cluster-edge {e} spans two clusters")
            else:
                if not pipe.alive:
                    raise StructuralError(f"edge {e} bound to dead pipe")
                if {ca, cb} != {pipe.u, pipe.v}:
                    raise StructuralError(f"edge {e} endpoints disagree with its pipe")
                if e not in self.pedges.get(pipe, ()):
                    raise StructuralError(f"edge {e} missing from pipe edge set")
        for pipe, es in self.pedges.items():
            for e in es:
                if self.emap.get(e) is not pipe:
                    raise StructuralError(f"pipe edge set stale for {pipe}")
        for gid, edges in self.thick.groups.items():
            pipes = {self.emap.get(e) for e in edges}
            if len(pipes) != 1 or None in pipes:
                raise StructuralError(f"thick group {gid} spans pipes {pipes}")
        return True
