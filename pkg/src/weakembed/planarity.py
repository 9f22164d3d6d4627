"""Planarity testing with combinatorial-embedding extraction.

The kernel is a face-growing (Demoucron-style) embedder on biconnected
blocks; non-biconnected inputs are handled by embedding blocks independently
and concatenating rotations at cut vertices. Loops and parallel bundles are
stripped before the kernel runs and re-inserted afterwards, since neither
affects planarity.

On top of the kernel sit the two disk tests the rest of the code relies on:
embeddability with a prescribed cyclic terminal order (wheel augmentation)
and pairwise component crossing around a disk boundary.
"""

from __future__ import annotations

from .graph import PreconditionError


class PlaneEmbedding:
    """Rotation system of a plane multigraph, plus a designated outer face."""

    def __init__(self, rotation, outer_face=None):
        self.rotation = rotation          # vertex -> list of edge ids, ccw
        self.outer_face = outer_face      # optional face walk

    def faces(self, g):
        """Facial walks as lists of (tail_vertex, edge). Loop-free only."""
        succ = {}
        for v, rot in self.rotation.items():
            n = len(rot)
            for i, e in enumerate(rot):
                a, b = g.endpoints(e)
                assert a != b, "faces() does not support loops"
                succ[(v, e)] = rot[(i + 1) % n]
        seen = set()
        out = []
        for v, rot in self.rotation.items():
            for e in rot:
                if (v, e) in seen:
                    continue
                walk = []
                cv, ce = v, e
                while (cv, ce) not in seen:
                    seen.add((cv, ce))
                    walk.append((cv, ce))
                    head = g.other_end(ce, cv)
                    ce = succ[(head, ce)]
                    cv = head
                out.append(walk)
        return out

    def euler_ok(self, g, n_components=None):
        """Check genus zero: n_i - m_i + f_i == 2 on every component.

        Face tracing visits the shared outer region once per component, so
        the per-component Euler formula is the meaningful one.
        """
        comps = _components_of(self.rotation, g)
        face_of = {}
        for idx, walk in enumerate(self.faces(g)):
            face_of[idx] = walk[0][0]
        comp_idx = {}
        for i, comp in enumerate(comps):
            for v in comp:
                comp_idx[v] = i
        fcount = [0] * len(comps)
        for idx, v in face_of.items():
            fcount[comp_idx[v]] += 1
        for i, comp in enumerate(comps):
            n = len(comp)
            m = sum(len(self.rotation[v]) for v in comp) // 2
            f = fcount[i] or 1
            if n - m + f != 2:
                return False
        return True


def _components_of(rotation, g):
    seen = set()
    out = []
    for s in rotation:
        if s in seen:
            continue
        seen.add(s)
        part = {s}
        stack = [s]
        while stack:
            v = stack.pop()
            for e in rotation[v]:
                w = g.other_end(e, v)
                if w in rotation and w not in seen:
                    seen.add(w)
                    part.add(w)
                    stack.append(w)
        out.append(part)
    return out


def biconnected_components(g, restrict=None):
    """Edge partition into biconnected blocks (iterative Hopcroft-Tarjan).

    Loops are skipped entirely. Returns (blocks, cut_vertices) where each
    block is a list of edge ids of the induced subgraph on `restrict`.
    """
    pool = set(restrict) if restrict is not None else set(g.adj)
    depth = {}
    blocks = []
    cuts = set()
    for root in pool:
        if root in depth:
            continue
        depth[root] = 0
        low = {root: 0}
        estack = []
        root_children = 0
        stack = [(root, None, iter(list(g.adj[root])))]
        while stack:
            v, tree_edge, it = stack[-1]
            advanced = False
            for e in it:
                if e == tree_edge:
                    continue
                if e not in g.edges:
                    continue
                a, b = g.endpoints(e)
                if a == b:
                    continue
                w = b if a == v else a
                if w not in pool:
                    continue
                if w not in depth:
                    depth[w] = depth[v] + 1
                    low[w] = depth[w]
                    estack.append(e)
                    if v == root:
                        root_children += 1
                    stack.append((w, e, iter(list(g.adj[w]))))
                    advanced = True
                    break
                elif depth[w] < depth[v]:
                    estack.append(e)
                    if depth[w] < low[v]:
                        low[v] = depth[w]
            if advanced:
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
                if low[v] >= depth[u]:
                    blk = []
                    while True:
                        e = estack.pop()
                        blk.append(e)
                        if e == tree_edge:
                            break
                    blocks.append(blk)
                    if u != root or root_children > 1:
                        cuts.add(u)
    return blocks, cuts


def _find_cycle(g, adj, verts):
    """Some cycle in a biconnected block, as a cyclic walk of (tail, edge)."""
    parent = {}
    pedge = {}
    start = next(iter(verts))
    parent[start] = None
    stack = [(start, None)]
    cyc = None
    while stack and cyc is None:
        v, via = stack.pop()
        for e in adj[v]:
            if e == via:
                continue
            w = g.other_end(e, v)
            if w not in parent:
                parent[w] = v
                pedge[w] = e
                stack.append((w, e))
            elif e != pedge.get(v):
                cyc = (v, e, w)
                break
    v0, ce, w0 = cyc
    anc = set()
    x = v0
    while x is not None:
        anc.add(x)
        x = parent[x]
    x = w0
    while x not in anc:
        x = parent[x]
    meet = x
    up_v = []
    x = v0
    while x != meet:
        up_v.append((x, pedge[x]))
        x = parent[x]
    up_w = []
    x = w0
    while x != meet:
        up_w.append((x, pedge[x]))
        x = parent[x]
    walk = []
    for xv, xe in reversed(up_v):
        walk.append((parent[xv], xe))
    walk.append((v0, ce))
    for xv, xe in up_w:
        walk.append((xv, xe))
    return walk


def _demoucron_block(g, block_edges):
    """Embed one simple loop-free biconnected block.

    Returns a rotation dict (vertex -> ccw edge list) or None if nonplanar.
    Single-edge blocks must be handled by the caller.
    """
    verts = set()
    adj = {}
    for e in block_edges:
        a, b = g.endpoints(e)
        verts.update((a, b))
        adj.setdefault(a, []).append(e)
        adj.setdefault(b, []).append(e)

    walk = _find_cycle(g, adj, verts)
    embedded_v = {t for t, _ in walk}
    embedded_e = {e for _, e in walk}
    back = []
    head = walk[0][0]
    for t, e in reversed(walk):
        back.append((g.other_end(e, t), e))
    faces = [list(walk), back]
    fsets = [{t for t, _ in f} for f in faces]

    block_set = set(block_edges)
    while len(embedded_e) < len(block_set):
        # fragments of the not-yet-embedded part
        frag_of = {}
        frags = []
        for e in block_set:
            if e in embedded_e or e in frag_of:
                continue
            fid = len(frags)
            comp_edges = [e]
            frag_of[e] = fid
            queue = [e]
            while queue:
                e2 = queue.pop()
                for x in g.endpoints(e2):
                    if x in embedded_v:
                        continue
                    for e3 in adj[x]:
                        if e3 not in embedded_e and e3 not in frag_of:
                            frag_of[e3] = fid
                            comp_edges.append(e3)
                            queue.append(e3)
            att = set()
            for e2 in comp_edges:
                for x in g.endpoints(e2):
                    if x in embedded_v:
                        att.add(x)
            frags.append((comp_edges, att))

        best = None
        for frag in frags:
            adm = [i for i, fs in enumerate(fsets) if frag[1] <= fs]
            if not adm:
                return None
            if best is None or len(adm) < best[1]:
                best = (frag, len(adm), adm[0])
                if len(adm) == 1:
                    break
        (comp_edges, att), _, fi = best

        # path between two attachments through the fragment
        att = list(att)
        a = att[0]
        targets = set(att[1:])
        compset = set(comp_edges)
        prev = {a: (None, None)}
        queue = [a]
        end = None
        while queue and end is None:
            x = queue.pop(0)
            if x in embedded_v and x != a:
                continue
            for e2 in adj.get(x, ()):
                if e2 not in compset:
                    continue
                y = g.other_end(e2, x)
                if y in prev:
                    continue
                prev[y] = (x, e2)
                if y in targets:
                    end = y
                    break
                queue.append(y)
        path = []
        x = end
        while x != a:
            px, pe = prev[x]
            path.append((px, pe))
            x = px
        path.reverse()
        b = end

        F = faces[fi]
        n = len(F)
        ia = next(i for i, (t, _) in enumerate(F) if t == a)
        ib = next(i for i, (t, _) in enumerate(F) if t == b)

        def seg(i, j):
            out = []
            k = i
            while k != j:
                out.append(F[k])
                k = (k + 1) % n
            return out

        bwd = []
        head = b
        for t, e2 in reversed(path):
            bwd.append((head, e2))
            head = t
        f1 = seg(ia, ib) + bwd
        f2 = seg(ib, ia) + path
        faces[fi] = f1
        faces.append(f2)
        fsets[fi] = {t for t, _ in f1}
        fsets.append({t for t, _ in f2})
        for t, e2 in path:
            embedded_e.add(e2)
            embedded_v.add(t)
        embedded_v.add(b)

    # rotations from the faces via the successor rule
    succ = {}
    for f in faces:
        n = len(f)
        for i, (t, e) in enumerate(f):
            head = g.other_end(e, t)
            succ[(head, e)] = f[(i + 1) % n][1]
    rot = {}
    for v in verts:
        es = adj[v]
        e0 = es[0]
        order = [e0]
        e = succ[(v, e0)]
        while e != e0:
            order.append(e)
            e = succ[(v, e)]
        if len(order) != len(es):
            return None
        rot[v] = order
    return rot


class _InducedView:
    """Read-only multigraph view used by the planarity kernel."""

    def __init__(self, base, adj, edges):
        self._base = base
        self.adj = adj
        self.edges = edges

    def endpoints(self, e):
        return self.edges[e]

    def other_end(self, e, v):
        a, b = self.edges[e]
        return b if a == v else a

    def is_loop(self, e):
        a, b = self.edges[e]
        return a == b


def planar_embed(g, restrict=None):
    """Planarity test with embedding extraction for an arbitrary multigraph.

    Returns a PlaneEmbedding or None if nonplanar. `restrict` limits the
    test to the induced subgraph on the given vertices.
    """
    pool = set(restrict) if restrict is not None else set(g.adj)

    loops = []                 # (vertex, edge)
    bundles = {}               # representative edge -> extra parallel edges
    seen_pair = {}
    kept = []
    for e, (a, b) in g.edges.items():
        if a not in pool or b not in pool:
            continue
        if a == b:
            loops.append((a, e))
            continue
        key = (a, b) if a < b else (b, a)
        rep = seen_pair.get(key)
        if rep is None:
            seen_pair[key] = e
            kept.append(e)
        else:
            bundles.setdefault(rep, []).append(e)

    sub_adj = {v: [] for v in pool}
    sub_edges = {}
    for e in kept:
        a, b = g.endpoints(e)
        sub_adj[a].append(e)
        sub_adj[b].append(e)
        sub_edges[e] = (a, b)
    view = _InducedView(g, sub_adj, sub_edges)

    blocks, _ = biconnected_components(view, pool)
    rot = {v: [] for v in pool}
    for blk in blocks:
        if len(blk) == 1:
            e = blk[0]
            a, b = view.endpoints(e)
            rot[a].append(e)
            rot[b].append(e)
            continue
        sub = _demoucron_block(view, blk)
        if sub is None:
            return None
        for v, order in sub.items():
            rot[v].extend(order)

    # parallel bundles ride alongside their representative, reversed at the
    # far end so the strands are parallel
    for rep, extra in bundles.items():
        a, b = g.endpoints(rep)
        ia = rot[a].index(rep)
        rot[a][ia + 1:ia + 1] = extra
        ib = rot[b].index(rep)
        rot[b][ib + 1:ib + 1] = list(reversed(extra))
    for v, e in loops:
        rot[v][0:0] = [e, e]
    return PlaneEmbedding(rot)


def is_planar(g, restrict=None):
    return planar_embed(g, restrict) is not None


def embeds_with_outer_order(c, terminals):
    """Disk embedding of c with `terminals` on the boundary in cyclic order.

    Returns a PlaneEmbedding of c (auxiliary wheel removed) or None. The
    realized boundary order, read from the wheel hub, is stored on the
    result as .realized_terminal_order; it equals the request or its mirror,
    which is equivalent at the single-disk level.
    """
    if len(set(terminals)) != len(terminals):
        raise PreconditionError("duplicate terminal in boundary sequence")
    t = len(terminals)
    if t <= 1:
        emb = planar_embed(c)
        if emb is not None:
            emb.realized_terminal_order = list(terminals)
        return emb
    work = c.clone()
    added = []
    if t == 2:
        hub = work.add_vertex()
        spokes = [work.add_edge(hub, terminals[0]), work.add_edge(hub, terminals[1])]
        added = list(spokes)
    else:
        hub = work.add_vertex()
        spokes = []
        for i, x in enumerate(terminals):
            spokes.append(work.add_edge(hub, x))
            added.append(spokes[-1])
            added.append(work.add_edge(x, terminals[(i + 1) % t]))
    emb = planar_embed(work)
    if emb is None:
        return None
    spoke_terminal = {e: terminals[i] for i, e in enumerate(spokes)}
    realized = [spoke_terminal[e] for e in emb.rotation[hub] if e in spoke_terminal]
    added_set = set(added)
    rot = {}
    for v, order in emb.rotation.items():
        if v == hub:
            continue
        rot[v] = [e for e in order if e not in added_set]
    out = PlaneEmbedding(rot)
    out.realized_terminal_order = realized
    return out


def contracted_rotation(emb, g, subverts):
    """Cyclic order of the edges leaving `subverts` in a plane embedding.

    This is the rotation the quotient vertex would have if the (connected,
    loop-free) subgraph were contracted. All leaving edge-ends must lie on a
    single boundary walk, i.e. nothing else of the graph sits inside a cycle
    of the subgraph; the caller guarantees this and we assert it.
    """
    sub = set(subverts)
    nxt = {}
    for v in sub:
        rot = emb.rotation[v]
        n = len(rot)
        for i, e in enumerate(rot):
            nxt[(v, e)] = rot[(i + 1) % n]
    leaving = []
    for v in sub:
        for e in emb.rotation[v]:
            if g.other_end(e, v) not in sub:
                leaving.append((v, e))
    if not leaving:
        return []
    v0, e0 = leaving[0]
    out = [e0]
    v, e = v0, e0
    while True:
        e2 = nxt[(v, e)]
        w = g.other_end(e2, v)
        while w in sub:
            v, e = w, e2
            e2 = nxt[(v, e)]
            w = g.other_end(e2, v)
        if (v, e2) == (v0, e0):
            break
        out.append(e2)
        v, e = v, e2
    assert len(out) == len(leaving), "leaving ends not on one boundary walk"
    return out


def components_cross(order):
    """First pair of components whose terminals interleave cyclically.

    `order` is the cyclic sequence of component labels around a disk
    boundary. Returns (a, b) for the first crossing found, else None.
    """
    total = {}
    for x in order:
        total[x] = total.get(x, 0) + 1
    stack = []
    on_stack = set()
    for x in order:
        if stack and stack[-1][0] == x:
            stack[-1][1] += 1
        elif x in on_stack:
            return (x, stack[-1][0])
        else:
            stack.append([x, 1])
            on_stack.add(x)
        while stack and stack[-1][1] == total[stack[-1][0]]:
            lbl, _ = stack.pop()
            on_stack.discard(lbl)
    # a laminar cyclic family always empties the stack: a label can only
    # complete on top, and completions cascade
    assert not stack
    return None
