"""SPQR trees: the recursive 2-cut decomposition of a biconnected multigraph.

Construction is a recursive split-pair method with post-hoc merging of
adjacent same-type nodes, which meets the invariants of the canonical
decomposition (unique by Mac Lane / Hopcroft-Tarjan theory). It is quadratic
in the worst case; the linear-time construction is a documented target, but
every consumer in this package calls it on components whose size is bounded
by their terminal count, so the simple method is the pragmatic choice.

Q nodes are not materialized; real edges inside skeletons play their role.
"""

from __future__ import annotations

import itertools

from .graph import Multigraph, PreconditionError


class SpqrNode:
    def __init__(self, nid, kind):
        self.id = nid
        self.kind = kind              # "S" | "P" | "R"
        self.skel = Multigraph()
        self.vx = {}                  # original vertex -> skeleton vertex
        self.vx_inv = {}              # skeleton vertex -> original vertex
        self.real = {}                # skeleton edge -> original edge id
        self.virtual = {}             # skeleton edge -> partner (node, edge)
        self.parent = None
        self.parent_edge = None       # virtual edge toward the parent

    def ensure_vertex(self, v):
        if v not in self.vx:
            sv = self.skel.add_vertex()
            self.vx[v] = sv
            self.vx_inv[sv] = v
        return self.vx[v]

    def add_real(self, a, b, orig):
        e = self.skel.add_edge(self.ensure_vertex(a), self.ensure_vertex(b))
        self.real[e] = orig
        return e

    def add_virtual(self, a, b):
        e = self.skel.add_edge(self.ensure_vertex(a), self.ensure_vertex(b))
        return e

    def vertices(self):
        return list(self.vx)

    def skeleton_edges(self):
        """(skeleton_edge, (a, b) original endpoints, real_edge_or_None)."""
        out = []
        for e, (sa, sb) in self.skel.edges.items():
            out.append((e, (self.vx_inv[sa], self.vx_inv[sb]), self.real.get(e)))
        return out

    def __repr__(self):
        return f"SpqrNode({self.id},{self.kind})"


class SpqrTree:
    def __init__(self):
        self.nodes = {}
        self._next = 0
        self.root = None
        self.edge_node = {}    # original edge -> node id holding it as real

    def new_node(self, kind):
        n = SpqrNode(self._next, kind)
        self._next += 1
        self.nodes[n.id] = n
        return n

    def drop_node(self, node):
        del self.nodes[node.id]

    def pair(self, n1, e1, n2, e2):
        n1.virtual[e1] = (n2, e2)
        n2.virtual[e2] = (n1, e1)

    def neighbors(self, node):
        return [partner for (partner, _) in node.virtual.values()]

    def nodes_by_kind(self, kind):
        return [n for n in self.nodes.values() if n.kind == kind]

    def root_at(self, predicate):
        """Orient parents toward a node whose skeleton satisfies predicate."""
        target = None
        for n in self.nodes.values():
            if predicate(n):
                target = n
                break
        if target is None:
            raise PreconditionError("no node satisfies the root predicate")
        self.root = target
        target.parent = None
        target.parent_edge = None
        seen = {target.id}
        queue = [target]
        order = [target]
        while queue:
            n = queue.pop()
            for e, (partner, pe) in n.virtual.items():
                if partner.id in seen:
                    continue
                seen.add(partner.id)
                partner.parent = n
                partner.parent_edge = pe
                queue.append(partner)
                order.append(partner)
        self.dfs_order = order
        return target

    def validate(self, g=None, edge_pool=None):
        """Audit all type and pairing invariants; raises AssertionError."""
        for n in self.nodes.values():
            n.skel.validate()
            nv = len(n.skel.adj)
            ne = len(n.skel.edges)
            if n.kind == "S":
                assert nv >= 3 and ne == nv, f"{n} is not a cycle"
                assert all(n.skel.degree(v) == 2 for v in n.skel.adj)
            elif n.kind == "P":
                assert nv == 2 and ne >= 3, f"{n} is not a parallel bundle"
            elif n.kind == "R":
                assert nv >= 4, f"{n} too small for R"
                assert _is_triconnected(n.skel), f"{n} skeleton not 3-connected"
            for e in n.skel.edges:
                assert (e in n.real) != (e in n.virtual), "edge must be real xor virtual"
        # pairing is an involution across distinct nodes
        for n in self.nodes.values():
            for e, (partner, pe) in n.virtual.items():
                assert partner.virtual[pe] == (n, e)
                assert partner is not n
                a = {n.skel.endpoints(e)[0], n.skel.endpoints(e)[1]}
                av = {n.vx_inv[x] for x in a}
                b = {partner.vx_inv[x] for x in partner.skel.endpoints(pe)}
                assert av == b, "paired virtual edges disagree on the 2-cut"
        # no two S (resp. P) adjacent
        for n in self.nodes.values():
            for partner in self.neighbors(n):
                if n.kind in ("S", "P"):
                    assert partner.kind != n.kind, f"adjacent {n.kind} nodes"
        # every original edge in exactly one skeleton
        if edge_pool is not None:
            seen = {}
            for n in self.nodes.values():
                for e, orig in n.real.items():
                    assert orig not in seen, f"edge {orig} in two skeletons"
                    seen[orig] = n
            assert set(seen) == set(edge_pool), "skeleton edges do not cover input"
        return True


def _is_triconnected(skel):
    """Brute 3-connectivity of a skeleton (no 2-cuts, no parallel pairs)."""
    vs = list(skel.adj)
    if len(vs) < 4:
        return False
    seen_pairs = set()
    for e, (a, b) in skel.edges.items():
        if a == b:
            return False
        key = (a, b) if a < b else (b, a)
        if key in seen_pairs:
            return False
        seen_pairs.add(key)
    for u, v in itertools.combinations(vs, 2):
        rest = [x for x in vs if x not in (u, v)]
        if rest and len(skel.components(rest)) > 1:
            return False
    return True


def _split_pair(adj, edges, verts):
    """Find a 2-cut or a parallel pair in the (multi)graph; None if 3-connected."""
    vs = list(verts)
    seen_pairs = set()
    for e, (a, b) in edges.items():
        key = (a, b) if a < b else (b, a)
        if key in seen_pairs:
            return key
        seen_pairs.add(key)
    if len(vs) <= 3:
        return None
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            u, v = vs[i], vs[j]
            rest = set(vs) - {u, v}
            if not rest:
                continue
            start = next(iter(rest))
            comp = {start}
            stack = [start]
            while stack:
                x = stack.pop()
                for e in adj[x]:
                    a, b = edges[e]
                    y = b if a == x else a
                    if y in rest and y not in comp:
                        comp.add(y)
                        stack.append(y)
            if comp != rest:
                return (u, v)
    return None


def _is_cycle(adj, verts):
    return all(len(adj[v]) == 2 for v in verts)


def build_spqr(g, restrict_edges=None):
    """SPQR tree of a biconnected multigraph (>= 1 edge).

    `restrict_edges` limits the decomposition to a subset of g's edges (the
    induced sub-multigraph must itself be biconnected). Degenerate inputs
    with a single edge or a single bond of 2 edges yield a single node of
    kind "S"/"P" relaxed to size: callers treat those shapes directly, so
    here they raise PreconditionError to keep the invariants crisp.
    """
    pool = list(restrict_edges) if restrict_edges is not None else list(g.edges)
    if len(pool) < 3:
        raise PreconditionError("SPQR tree needs at least 3 edges")

    tree = SpqrTree()
    token_counter = itertools.count()

    def decompose(edge_items):
        """edge_items: list of (tag, a, b); tag = ('real', orig) | ('virt', token).

        Returns (node, {token: skeleton_edge}) for the virtual tokens it was
        given, after fully decomposing.
        """
        verts = set()
        adj = {}
        edges = {}
        for idx, (tag, a, b) in enumerate(edge_items):
            verts.update((a, b))
            edges[idx] = (a, b)
            adj.setdefault(a, []).append(idx)
            adj.setdefault(b, []).append(idx)

        if len(verts) == 2:
            kind = "P"
        elif _is_cycle(adj, verts):
            kind = "S"
        else:
            kind = None

        if kind is None:
            cut = _split_pair(adj, edges, verts)
            if cut is None:
                kind = "R"
        if kind is not None:
            node = tree.new_node(kind)
            token_map = {}
            for idx, (tag, a, b) in enumerate(edge_items):
                e = node.add_real(a, b, tag[1]) if tag[0] == "real" else node.add_virtual(a, b)
                if tag[0] == "real":
                    tree.edge_node[tag[1]] = node.id
                else:
                    token_map[tag[1]] = (node, e)
            return node, token_map

        u, v = cut
        # split components: direct u-v edges, plus one part per component of
        # the rest
        direct = []
        rest_items = []
        for item in edge_items:
            tag, a, b = item
            if {a, b} == {u, v}:
                direct.append(item)
            else:
                rest_items.append(item)
        # group rest by connectivity avoiding u, v
        parent = {}

        def find(x):
            r = x
            while parent.get(r, r) != r:
                r = parent[r]
            while parent.get(x, x) != x:
                parent[x], x = r, parent[x]
            return r

        for tag, a, b in rest_items:
            if a not in (u, v) and b not in (u, v):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[rb] = ra
        groups = {}
        for item in rest_items:
            tag, a, b = item
            anchor = a if a not in (u, v) else b
            groups.setdefault(find(anchor), []).append(item)

        parts = [("direct", it) for it in direct] + [("group", items) for _, items in groups.items()]
        assert len(parts) >= 2

        if len(parts) == 2 and not direct:
            # exactly two split components: no P node between them
            tok = ("link", next(token_counter))
            n1, m1 = decompose(groups_list(parts[0]) + [(("virt", tok), u, v)])
            n2, m2 = decompose(groups_list(parts[1]) + [(("virt", tok), u, v)])
            tree.pair(*m1[tok], *m2[tok])
            all_map = {}
            for m in (m1, m2):
                for k, val in m.items():
                    if k != tok:
                        all_map[k] = val
            return n1, all_map
        # P node joining all parts (and absorbing direct edges)
        pnode = tree.new_node("P")
        all_map = {}
        for kind2, payload in parts:
            if kind2 == "direct":
                tag, a, b = payload
                e = pnode.add_real(a, b, tag[1]) if tag[0] == "real" else pnode.add_virtual(a, b)
                if tag[0] == "real":
                    tree.edge_node[tag[1]] = pnode.id
                else:
                    all_map[tag[1]] = (pnode, e)
            else:
                tok = ("link", next(token_counter))
                child, cmap = decompose(payload + [(("virt", tok), u, v)])
                pe = pnode.add_virtual(u, v)
                tree.pair(pnode, pe, *cmap[tok])
                for k, val in cmap.items():
                    if k != tok:
                        all_map[k] = val
        return pnode, all_map

    def groups_list(part):
        kind2, payload = part
        return [payload] if kind2 == "direct" else payload

    items = []
    for e in pool:
        a, b = g.endpoints(e)
        if a == b:
            raise PreconditionError("loops have no place in an SPQR tree")
        items.append((("real", e), a, b))
    decompose(items)
    _merge_same_kind(tree)
    return tree


def _merge_same_kind(tree):
    """Merge adjacent S-S and P-P pairs until none remain."""
    changed = True
    while changed:
        changed = False
        for n in list(tree.nodes.values()):
            if n.id not in tree.nodes or n.kind not in ("S", "P"):
                continue
            for e, (partner, pe) in list(n.virtual.items()):
                if partner.kind != n.kind:
                    continue
                _absorb(tree, n, e, partner, pe)
                changed = True
                break
            if changed:
                break


def _absorb(tree, n, e, partner, pe):
    """Splice `partner` into `n` along the virtual pair (e, pe)."""
    a, b = n.skel.endpoints(e)
    # copy partner's skeleton minus pe into n
    vmap = {}
    pa, pb = partner.skel.endpoints(pe)
    vmap[pa] = a if partner.vx_inv[pa] == n.vx_inv[a] else b
    vmap[pb] = a if vmap[pa] == b else b
    for sv, ov in partner.vx_inv.items():
        if sv in vmap:
            continue
        vmap[sv] = n.ensure_vertex(ov)
        # ensure_vertex keyed by original vertex: adding may collide when a
        # vertex already exists in n; that is exactly what we want
    for se, (sa, sb) in list(partner.skel.edges.items()):
        if se == pe:
            continue
        na, nb = vmap[sa], vmap[sb]
        ne = n.skel.add_edge(na, nb)
        if se in partner.real:
            n.real[ne] = partner.real[se]
            tree.edge_node[partner.real[se]] = n.id
        else:
            other_node, other_edge = partner.virtual[se]
            tree.pair(n, ne, other_node, other_edge)
    n.skel.remove_edge(e)
    del n.virtual[e]
    tree.drop_node(partner)


def core_of(node, pipe_vertices):
    """Skeleton minus designated pipe-vertices: (vertices, edge list).

    Returned in original-vertex terms; edges are (a, b, real_or_None).
    """
    keep = [v for v in node.vx if v not in pipe_vertices]
    keepset = set(keep)
    edges = []
    for e, (a, b), orig in node.skeleton_edges():
        if a in keepset and b in keepset:
            edges.append((a, b, orig))
    return keep, edges


def spqr_two_cuts(tree):
    """The split pairs realized by the tree.

    These are the endpoints of virtual edges, the poles of P nodes, and any
    two vertices of an S-node cycle at cyclic distance >= 2 (both arcs
    between them have interior).
    """
    out = set()
    for n in tree.nodes.values():
        if n.kind == "P":
            out.add(frozenset(n.vertices()))
        for e in n.virtual:
            a, b = n.skel.endpoints(e)
            out.add(frozenset((n.vx_inv[a], n.vx_inv[b])))
        if n.kind == "S":
            # walk the cycle to order its vertices
            start = next(iter(n.skel.adj))
            order = [start]
            prev_e = None
            v = start
            while True:
                e = next(x for x in n.skel.adj[v] if x != prev_e)
                w = n.skel.other_end(e, v)
                if w == start:
                    break
                order.append(w)
                prev_e, v = e, w
            k = len(order)
            for i in range(k):
                for j in range(i + 2, k):
                    if i == 0 and j == k - 1:
                        continue
                    out.add(frozenset((n.vx_inv[order[i]], n.vx_inv[order[j]])))
    return out
