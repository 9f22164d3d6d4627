"""Normal form (P1-P2) and simplified form (P3-P4) for clusters.

normalize() makes every terminal a subdivision leaf and removes degree-2
vertices; simplify() trims everything a disk embedding cannot see (dangling
blocks, irrelevant split components) and forces every R-node core into wheel
shape. Both are local to one cluster and preserve weak embeddability.

The audits at the bottom are standalone checkers used as test assertions and
as optional runtime guards.
"""

from __future__ import annotations

from .graph import Multigraph, PreconditionError
from .planarity import (
    biconnected_components,
    contracted_rotation,
    is_planar,
    planar_embed,
)
from .spqr import build_spqr, core_of


class NotWeaklyEmbeddable(Exception):
    """Negative verdict raised by any stage; carries the failing witness."""

    def __init__(self, stage, detail=None):
        super().__init__(f"not a weak embedding ({stage})")
        self.stage = stage
        self.detail = detail


# ---------------------------------------------------------------------------
# normalize
# ---------------------------------------------------------------------------

def cluster_degree(inst, v):
    """Degree of v inside its cluster subgraph (cluster-edges only)."""
    return sum(1 for e in inst.g.adj[v] if e not in inst.emap)


def is_compliant_terminal(inst, v):
    slots = inst.g.adj[v]
    if len(slots) != 2:
        return False
    p = sum(1 for e in slots if e in inst.emap)
    return p == 1


def normalize(inst, u, verts=None):
    """Bring cluster u to normal form (P1-P2). Returns the final vertex set.

    Idempotent on already-compliant terminals so pipe-edge identifiers are
    stable across repeated normalization (moves never rename edges).
    """
    work = set(verts) if verts is not None else set(u.gverts)

    # loops inside the cluster never constrain an embedding
    for v in list(work):
        for e in list(inst.g.adj[v]):
            if e in inst.g.edges and inst.g.is_loop(e) and e not in inst.emap:
                inst.delete_edge(e)

    for v in list(work):
        pes = [e for e in inst.g.adj[v] if e in inst.emap]
        if not pes:
            continue
        if len(pes) == 1 and is_compliant_terminal(inst, v):
            continue
        for e in pes:
            x, _cp, _pp = inst.subdivide_pipe_edge(e, u)
            work.add(x)

    queue = [v for v in work if len(inst.g.adj[v]) == 2
             and not any(e in inst.emap for e in inst.g.adj[v])]
    while queue:
        v = queue.pop()
        if v not in inst.g.adj or v not in work:
            continue
        slots = inst.g.adj[v]
        if len(slots) != 2 or any(e in inst.emap for e in slots):
            continue
        kind, e = inst.suppress_vertex(v)
        work.discard(v)
        if kind == "loop":
            a, _ = inst.g.endpoints(e)
            inst.delete_edge(e)
            if len(inst.g.adj[a]) == 2 and not any(x in inst.emap for x in inst.g.adj[a]):
                queue.append(a)
    return work


def normalize_all(inst):
    for c in list(inst.h.clusters.values()):
        normalize(inst, c)


# ---------------------------------------------------------------------------
# the component multigraph C-bar
# ---------------------------------------------------------------------------

class CBar:
    """Component multigraph with terminals merged into pipe-vertices."""

    def __init__(self):
        self.m = Multigraph()
        self.vert_of = {}       # original nonterminal vertex -> cbar vertex
        self.orig_of = {}       # cbar vertex -> original vertex
        self.pipevert = {}      # Pipe -> cbar vertex
        self.pipe_of = {}       # cbar vertex -> Pipe
        self.edge_orig = {}     # cbar edge -> original cluster-edge
        self.ebar = set()       # auxiliary rotation-cycle edges
        self.terminal_of = {}   # cbar edge -> original terminal it absorbed

    def is_pipevert(self, x):
        return x in self.pipe_of


def build_cbar(inst, u, comp_verts):
    """C-bar of one component of G_u; u must satisfy P1-P2 on the component."""
    cb = CBar()
    g = inst.g
    terminals = {}
    for v in comp_verts:
        pes = [e for e in g.adj[v] if e in inst.emap]
        if pes:
            if len(pes) != 1:
                raise PreconditionError("component not in normal form (P1)")
            terminals[v] = inst.emap[pes[0]]
    pipes = []
    for v, pipe in terminals.items():
        if pipe not in cb.pipevert:
            x = cb.m.add_vertex()
            cb.pipevert[pipe] = x
            cb.pipe_of[x] = pipe
            pipes.append(pipe)
    for v in comp_verts:
        if v in terminals:
            continue
        x = cb.m.add_vertex()
        cb.vert_of[v] = x
        cb.orig_of[x] = v

    def cx(v):
        if v in terminals:
            return cb.pipevert[terminals[v]]
        return cb.vert_of[v]

    seen = set()
    for v in comp_verts:
        for e in g.adj[v]:
            if e in inst.emap or e in seen:
                continue
            seen.add(e)
            a, b = g.endpoints(e)
            ce = cb.m.add_edge(cx(a), cx(b))
            cb.edge_orig[ce] = e
            if a in terminals:
                cb.terminal_of.setdefault(ce, {})[cb.pipevert[terminals[a]]] = a
            if b in terminals:
                cb.terminal_of.setdefault(ce, {})[cb.pipevert[terminals[b]]] = b

    k = len(pipes)
    if k == 2:
        e = cb.m.add_edge(cb.pipevert[pipes[0]], cb.pipevert[pipes[1]])
        cb.ebar.add(e)
    elif k >= 3:
        order = [p for p in inst.h.rotation(u) if p in cb.pipevert]
        for i in range(k):
            e = cb.m.add_edge(cb.pipevert[order[i]], cb.pipevert[order[(i + 1) % k]])
            cb.ebar.add(e)
    return cb


# ---------------------------------------------------------------------------
# wheels
# ---------------------------------------------------------------------------

def recognize_wheel(adjacency):
    """Detect a wheel in a simple graph given as {vertex: set(neighbors)}.

    Returns (hub, rim_cycle_list) or None. The hub is a vertex adjacent to
    all others whose removal leaves a single cycle; for K4 any choice works
    and the first valid one is returned.
    """
    n = len(adjacency)
    if n < 4:
        return None
    for hub in adjacency:
        if len(adjacency[hub]) != n - 1:
            continue
        rim = [v for v in adjacency if v != hub]
        if any(len(adjacency[v] - {hub}) != 2 for v in rim):
            continue
        start = rim[0]
        cyc = [start]
        prev = None
        cur = start
        ok = True
        while True:
            nbrs = [w for w in adjacency[cur] if w != hub and w != prev]
            if len(nbrs) != 1:
                ok = False
                break
            prev, cur = cur, nbrs[0]
            if cur == start:
                break
            cyc.append(cur)
        if ok and len(cyc) == n - 1:
            return hub, cyc
    return None


def _core_wheel_ok(inst, node, pipeverts, cb):
    """P4 check for one R node: core is a wheel W_k (k>=4), externals have
    cluster-degree 4, and the hub is internal to the cluster."""
    keep, edges = core_of(node, pipeverts)
    if len(keep) < 4:
        return False
    adjacency = {v: set() for v in keep}
    for a, b, orig in edges:
        if orig is None:
            return False     # virtual edge inside the core: not a plain wheel
        adjacency[a].add(b)
        adjacency[b].add(a)
    res = recognize_wheel(adjacency)
    if res is None:
        return False
    hub, rim = res
    hub_orig = cb.orig_of[hub]
    if len(inst.g.adj[hub_orig]) != len(rim):
        return False
    for x in rim:
        v = cb.orig_of[x]
        if len(inst.g.adj[v]) != 4 or any(e in inst.emap for e in inst.g.adj[v]):
            return False
    return True


# ---------------------------------------------------------------------------
# simplify
# ---------------------------------------------------------------------------

def _suppress_cascade(inst, work, seeds):
    queue = list(seeds)
    while queue:
        v = queue.pop()
        if v not in inst.g.adj or v not in work:
            continue
        slots = inst.g.adj[v]
        if len(slots) != 2 or any(e in inst.emap for e in slots):
            continue
        kind, e = inst.suppress_vertex(v)
        work.discard(v)
        if kind == "loop":
            a, _ = inst.g.endpoints(e)
            inst.delete_edge(e)
            queue.append(a)


def simplify_component(inst, u, comp_verts, deleted_out=None):
    """Establish P3-P4 on one component of G_u. Returns surviving vertices.

    Raises NotWeaklyEmbeddable when the component is nonplanar. Deleted
    pipe-degree-0 components are appended to deleted_out (vertex snapshot)
    when provided.
    """
    g = inst.g
    work = set(comp_verts)

    if not is_planar(g, restrict=work):
        raise NotWeaklyEmbeddable("simplify:nonplanar-component",
                                  {"cluster": u.id, "vertices": sorted(work)})

    if inst.pipe_degree(work) == 0:
        if deleted_out is not None:
            snap_edges = []
            seen = set()
            for v in work:
                for e in g.adj[v]:
                    if e not in seen:
                        seen.add(e)
                        snap_edges.append((e, g.endpoints(e)))
            deleted_out.append({"cluster": u.id, "vertices": sorted(work),
                                "edges": snap_edges})
        for v in list(work):
            inst.delete_vertex(v)
        return set()

    # trim to the block of C-bar holding all pipe-vertices
    cb = build_cbar(inst, u, work)
    pvset = set(cb.pipe_of)
    if cb.m.edges:
        blocks, _ = biconnected_components(cb.m)
        hat = None
        for blk in blocks:
            vs = set()
            for e in blk:
                vs.update(cb.m.endpoints(e))
            if pvset <= vs:
                hat = vs
                break
        if hat is None:
            # pipe-degree 1 and the pipe-vertex is a cut vertex: keep the
            # largest block through it (any choice is equivalent)
            best = None
            for blk in blocks:
                vs = set()
                for e in blk:
                    vs.update(cb.m.endpoints(e))
                if pvset <= vs and (best is None or len(blk) > best[0]):
                    best = (len(blk), vs)
            hat = best[1] if best else pvset
        drop = [cb.orig_of[x] for x in cb.m.adj
                if x not in hat and x not in cb.pipe_of]
        cut_seeds = set()
        for v in drop:
            for e in g.adj[v]:
                a, b = g.endpoints(e)
                w = b if a == v else a
                if w not in drop:
                    cut_seeds.add(w)
            inst.delete_vertex(v)
            work.discard(v)
        _suppress_cascade(inst, work, cut_seeds)

    # remove irrelevant split components
    cb = build_cbar(inst, u, work)
    pvset = set(cb.pipe_of)
    if len(cb.m.edges) >= 3:
        tree = build_spqr(cb.m)
        root = tree.root_at(lambda n: any(x in cb.pipe_of for x in n.vx))
        kill_subtrees = []
        stack = [root]
        skip = set()
        while stack:
            node = stack.pop()
            if node.id in skip:
                continue
            pipe_free = not any(x in cb.pipe_of for x in node.vx)
            if pipe_free and node.parent is not None:
                kill_subtrees.append(node)
                mark = [node]
                while mark:
                    x = mark.pop()
                    skip.add(x.id)
                    for pr, _ in x.virtual.values():
                        if pr is not x.parent and pr.id not in skip:
                            mark.append(pr)
                continue
            for pr, _ in node.virtual.values():
                if pr.parent is node:
                    stack.append(pr)
        if kill_subtrees:
            seeds = set()
            handled_cuts = set()
            for node in kill_subtrees:
                pe = node.parent_edge
                a, b = node.parent.skel.endpoints(pe)
                p = node.parent.vx_inv[a]
                q = node.parent.vx_inv[b]
                key = frozenset((p, q))
                # collect interior cbar vertices of the whole subtree
                interior = set()
                sub = [node]
                while sub:
                    x = sub.pop()
                    for sv, ov in x.vx_inv.items():
                        if ov not in (p, q):
                            interior.add(ov)
                    for pr, _ in x.virtual.values():
                        if pr.parent is x:
                            sub.append(pr)
                po = cb.orig_of[p]
                qo = cb.orig_of[q]
                for x in interior:
                    v = cb.orig_of[x]
                    if v in inst.g.adj:
                        inst.delete_vertex(v)
                        work.discard(v)
                if key not in handled_cuts:
                    handled_cuts.add(key)
                    inst.new_cluster_edge(po, qo)
                else:
                    # several subtrees over one 2-cut share the single
                    # replacement edge; parallel real edges collapse too
                    pass
                seeds.update((po, qo))
            # direct parallel pq edges between two non-pipe vertices of a
            # handled cut are irrelevant split components as well
            for key in handled_cuts:
                p, q = tuple(key)
                po, qo = cb.orig_of[p], cb.orig_of[q]
                par = [e for e in inst.g.adj.get(po, ())
                       if e not in inst.emap and
                       set(inst.g.endpoints(e)) == {po, qo}]
                for e in par[1:]:
                    inst.delete_edge(e)
            _suppress_cascade(inst, work, seeds)

    # wheel-ify R cores violating P4; each pass fixes all violators found on
    # a clean rebuild (their cores are disjoint), then re-audits
    guard = 0
    while True:
        guard += 1
        assert guard <= len(inst.g.edges) + 2, "wheelify failed to converge"
        cb = build_cbar(inst, u, work)
        pvset = set(cb.pipe_of)
        if len(cb.m.edges) < 3:
            break
        tree = build_spqr(cb.m)
        bad = [n for n in tree.nodes_by_kind("R")
               if not _core_wheel_ok(inst, n, pvset, cb)]
        if not bad:
            break
        for node in bad:
            _wheelify(inst, u, node, cb, work)
        _suppress_cascade(inst, work, set(work))
    return work


def _wheelify(inst, u, node, cb, work):
    """Replace core(node) by a wheel, preserving the cyclic order of the
    boundary edges Y around the contracted core."""
    g = inst.g
    pvset = set(cb.pipe_of)
    corevs = [x for x in node.vx if x not in pvset]
    coreset = set(corevs)
    assert coreset, "all-pipe-vertex R skeleton cannot arise for one component"

    emb = planar_embed(node.skel)
    assert emb is not None, "R skeleton of a planar component must be planar"
    skel_core = [node.vx[v] for v in corevs]
    y_cycle = contracted_rotation(emb, node.skel, set(skel_core))
    y_edges = []
    for se in y_cycle:
        sa, sb = node.skel.endpoints(se)
        a, b = node.vx_inv[sa], node.vx_inv[sb]
        if a in pvset:
            pv, cv = a, b
        else:
            pv, cv = b, a
        y_edges.append((se, pv, cv))
    k = len(y_edges)
    assert k >= 3, "R node boundary must have >= 3 attachments"

    hub = inst.new_vertex(u)
    rim = [inst.new_vertex(u) for _ in range(k)]
    work.add(hub)
    work.update(rim)
    for i in range(k):
        inst.new_cluster_edge(rim[i], rim[(i + 1) % k])
        inst.new_cluster_edge(hub, rim[i])

    kept = set()
    for i, (se, pv, cv) in enumerate(y_edges):
        cv_orig = cb.orig_of[cv]
        if se in node.real:
            # real skeleton edge: an original cluster-edge from the core
            # vertex to a terminal; move its core end onto the rim
            oe = cb.edge_orig[node.real[se]]
            g.reattach(oe, cv_orig, rim[i])
        else:
            kept.add(cv_orig)
            inst.new_cluster_edge(rim[i], cv_orig)

    # drop the old core: kept vertices lose only their core-internal edges
    core_orig = {cb.orig_of[x] for x in corevs}
    for ce, oe in list(cb.edge_orig.items()):
        if oe not in g.edges:
            continue
        ca, cbv = cb.m.endpoints(ce)
        if ca in coreset and cbv in coreset:
            inst.delete_edge(oe)
    for v in core_orig:
        if v in kept:
            continue
        if v in g.adj:
            inst.delete_vertex(v)
            work.discard(v)


def simplify(inst, u, verts=None, deleted_out=None):
    """simplify(u): establish P1-P4 at cluster u. Returns final vertex set."""
    work = normalize(inst, u, verts)
    out = set()
    for comp, _rep in inst.g.components(restrict=work):
        out |= simplify_component(inst, u, comp, deleted_out=deleted_out)
    return out


def simplify_all(inst, deleted_out=None):
    for c in list(inst.h.clusters.values()):
        simplify(inst, c, deleted_out=deleted_out)


# ---------------------------------------------------------------------------
# audits (P1-P4, edge bound)
# ---------------------------------------------------------------------------

def audit_p1_p2(inst, u, verts=None):
    vs = verts if verts is not None else u.gverts
    for v in vs:
        pes = [e for e in inst.g.adj[v] if e in inst.emap]
        ces = [e for e in inst.g.adj[v] if e not in inst.emap]
        if pes:
            assert len(pes) == 1 and len(ces) == 1, f"P1 fails at {v}"
        else:
            assert len(ces) != 2, f"P2 fails at {v}"
            for e in ces:
                assert not inst.g.is_loop(e), f"loop survives at {v}"
    return True


def audit_p3_p4(inst, u, verts=None):
    from .oracle import enumerate_two_cuts
    vs = verts if verts is not None else u.gverts
    for comp, _ in inst.g.components(restrict=vs):
        assert inst.pipe_degree(comp) > 0, "pipe-degree-0 component survived"
        cb = build_cbar(inst, u, comp)
        pvset = set(cb.pipe_of)
        if len(cb.m.adj) >= 3:
            blocks, cuts = biconnected_components(cb.m)
            assert len(blocks) <= 1 or not cb.m.edges, "C-bar not biconnected"
            assert not cuts, "C-bar has a cut vertex"
        for pair in enumerate_two_cuts(cb.m):
            assert pair[0] in cb.pipe_of or pair[1] in cb.pipe_of, \
                f"P3 fails: 2-cut {pair} avoids pipe-vertices"
        if len(cb.m.edges) >= 3:
            tree = build_spqr(cb.m)
            for node in tree.nodes_by_kind("R"):
                assert _core_wheel_ok(inst, node, pvset, cb), \
                    f"P4 fails at cluster {u.id}"
    return True


def audit_edge_bound(inst, u, verts=None):
    """Lemma-grade size bound: |E(C)| <= 10 * t_C after simplify."""
    vs = verts if verts is not None else u.gverts
    for comp, _ in inst.g.components(restrict=vs):
        t = len(inst.terminals_of(comp))
        m = 0
        seen = set()
        for v in comp:
            for e in inst.g.adj[v]:
                if e not in inst.emap and e not in seen:
                    seen.add(e)
                    m += 1
        assert m <= 10 * max(t, 0), f"edge bound fails: {m} > 10*{t}"
    return True
