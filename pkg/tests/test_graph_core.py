import random

import pytest

from weakembed.graph import Multigraph, PreconditionError
from weakembed.embedded import EmbeddedGraph
from weakembed.instance import SimplicialMapInstance


def path(n):
    g = Multigraph()
    vs = [g.add_vertex() for _ in range(n)]
    es = [g.add_edge(vs[i], vs[i + 1]) for i in range(n - 1)]
    return g, vs, es


def k4():
    g = Multigraph()
    vs = [g.add_vertex() for _ in range(4)]
    for i in range(4):
        for j in range(i + 1, 4):
            g.add_edge(vs[i], vs[j])
    return g, vs


def test_subdivide_single_edge():
    g, vs, es = path(2)
    new_vs, new_es = g.subdivide_edge(es[0], 1)
    assert len(new_vs) == 1 and len(new_es) == 2
    assert g.degree(vs[0]) == 1 and g.degree(vs[1]) == 1
    assert g.degree(new_vs[0]) == 2
    g.validate()


def test_subdivide_loop():
    g = Multigraph()
    a = g.add_vertex()
    e = g.add_edge(a, a)
    vs, es = g.subdivide_edge(e, 2)
    # loop becomes the 3-cycle a-x-y-a
    assert len(vs) == 2 and len(es) == 3
    assert g.degree(a) == 2
    g.validate()


def test_subdivide_k4_edge_count():
    g, vs = k4()
    e = next(iter(g.edges))
    g.subdivide_edge(e, 1)
    assert len(g.adj) == 5 and len(g.edges) == 7
    g.validate()


def test_suppress_path_vertex():
    g, vs, es = path(3)
    kind, e = g.suppress_vertex(vs[1])
    assert kind == "edge"
    assert set(g.endpoints(e)) == {vs[0], vs[2]}
    g.validate()


def test_suppress_multiedge_allowed():
    # triangle a-p-b plus direct edge ab -> parallel pair
    g = Multigraph()
    a, p, b = (g.add_vertex() for _ in range(3))
    g.add_edge(a, p)
    g.add_edge(p, b)
    g.add_edge(a, b)
    kind, e = g.suppress_vertex(p)
    assert kind == "edge"
    assert len(g.edges) == 2
    assert all(set(g.endpoints(x)) == {a, b} for x in g.edges)
    g.validate()


def test_suppress_reports_loop():
    # two parallel edges a-p: suppressing p makes a loop at a
    g = Multigraph()
    a, p = g.add_vertex(), g.add_vertex()
    g.add_edge(a, p)
    g.add_edge(a, p)
    kind, e = g.suppress_vertex(p)
    assert kind == "loop"
    assert g.is_loop(e)
    g.validate()


def test_suppress_degree_check():
    g, vs, es = path(3)
    with pytest.raises(PreconditionError):
        g.suppress_vertex(vs[0])


def test_subdivide_then_suppress_roundtrip():
    g, vs = k4()
    before = sorted(tuple(sorted(g.endpoints(e))) for e in g.edges)
    e = next(iter(g.edges))
    new_vs, _ = g.subdivide_edge(e, 3)
    for x in new_vs:
        g.suppress_vertex(x)
    after = sorted(tuple(sorted(g.endpoints(e))) for e in g.edges)
    assert before == after
    g.validate()


def test_contract_triangle_edge():
    g = Multigraph()
    a, b, c = (g.add_vertex() for _ in range(3))
    ab = g.add_edge(a, b)
    g.add_edge(b, c)
    g.add_edge(a, c)
    vmap, loops = g.contract_edges([ab])
    assert len(g.adj) == 2 and len(g.edges) == 2
    assert loops == []
    g.validate()


def test_contract_tree_no_loops():
    g, vs, es = path(6)
    vmap, loops = g.contract_edges(es)
    assert len(g.adj) == 1 and loops == []
    g.validate()


def test_contract_spanning_cycle_of_k4():
    g, vs = k4()
    cycle = [e for e in g.edges
             if set(g.endpoints(e)) in ({vs[0], vs[1]}, {vs[1], vs[2]},
                                        {vs[2], vs[3]}, {vs[3], vs[0]})]
    vmap, loops = g.contract_edges(cycle)
    assert len(g.adj) == 1
    # the two diagonals survive as loops
    assert len(loops) == 2
    g.validate()


def test_components_against_union_find():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randrange(1, 30)
        g = Multigraph()
        vs = [g.add_vertex() for _ in range(n)]
        m = rng.randrange(0, 2 * n)
        for _ in range(m):
            g.add_edge(rng.choice(vs), rng.choice(vs))
        # independent union-find oracle
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e, (a, b) in g.edges.items():
            ra, rb = find(vs.index(a)), find(vs.index(b))
            if ra != rb:
                parent[ra] = rb
        want = {}
        for i, v in enumerate(vs):
            want.setdefault(find(i), set()).add(v)
        got = {frozenset(part) for part, _ in g.components()}
        assert got == {frozenset(s) for s in want.values()}


def test_components_empty_restrict():
    g, vs = k4()
    assert g.components(restrict=[]) == []


def test_components_representative_edges():
    g = Multigraph()
    vs = [g.add_vertex() for _ in range(7)]
    for i in (0, 3):   # two disjoint triangles, one isolated vertex
        g.add_edge(vs[i], vs[i + 1])
        g.add_edge(vs[i + 1], vs[i + 2])
        g.add_edge(vs[i], vs[i + 2])
    parts = g.components()
    sizes = sorted(len(p) for p, _ in parts)
    assert sizes == [1, 3, 3]
    for part, rep in parts:
        if len(part) == 1:
            assert rep is None
        else:
            a, b = g.endpoints(rep)
            assert a in part and b in part


def test_rotation_linked_list():
    h = EmbeddedGraph()
    u = h.add_cluster()
    others = [h.add_cluster() for _ in range(4)]
    pipes = [h.add_pipe(u, o, after_u=None) for o in others]
    rot = h.rotation(u)
    assert set(rot) == set(pipes) and len(rot) == 4
    h.remove_pipe(rot[1])
    assert len(h.rotation(u)) == 3
    h.validate()


def test_replace_end_keeps_far_slot():
    h = EmbeddedGraph()
    u, v, w = h.add_cluster(), h.add_cluster(), h.add_cluster()
    p1 = h.add_pipe(u, v)
    p2 = h.add_pipe(u, w)
    x = h.add_cluster()
    h.replace_end(p1, u, x)
    assert p1.u is x and p1.v is v
    assert h.rotation(u) == [p2]
    h.validate()


def test_contraction_order_splice():
    h = EmbeddedGraph()
    u, v = h.add_cluster(), h.add_cluster()
    ns = [h.add_cluster() for _ in range(4)]
    uv = h.add_pipe(u, v)
    a = h.add_pipe(u, ns[0], after_u=uv)
    b = h.add_pipe(u, ns[1], after_u=a)
    c = h.add_pipe(v, ns[2], after_u=uv)
    d = h.add_pipe(v, ns[3], after_u=c)
    order = h.contraction_order(uv)
    assert order == [c, d, a, b]


def test_faces_euler_on_k4_embedding():
    # standard planar K4: rotations chosen from a drawing
    h = EmbeddedGraph()
    cs = [h.add_cluster() for _ in range(4)]
    # build pipes then set rotations explicitly
    p = {}
    for i in range(4):
        for j in range(i + 1, 4):
            p[(i, j)] = h.add_pipe(cs[i], cs[j])

    def pipe(i, j):
        return p[(min(i, j), max(i, j))]

    # outer triangle 0,1,2 ccw with 3 in the middle
    h.set_rotation(cs[0], [pipe(0, 1), pipe(0, 3), pipe(0, 2)])
    h.set_rotation(cs[1], [pipe(1, 2), pipe(1, 3), pipe(0, 1)])
    h.set_rotation(cs[2], [pipe(0, 2), pipe(2, 3), pipe(1, 2)])
    h.set_rotation(cs[3], [pipe(0, 3), pipe(1, 3), pipe(2, 3)])
    fs = h.faces()
    assert len(fs) == 4  # V - E + F = 2
    assert sorted(len(f) for f in fs) == [3, 3, 3, 3]


def test_instance_subdivide_pipe_edge():
    inst = SimplicialMapInstance()
    u = inst.h.add_cluster()
    v = inst.h.add_cluster()
    uv = inst.h.add_pipe(u, v)
    a = inst.new_vertex(u)
    b = inst.new_vertex(v)
    e = inst.new_pipe_edge(a, b, uv)
    x, cpiece, ppiece = inst.subdivide_pipe_edge(e, u)
    assert inst.cluster_of(x) is u
    assert inst.pipe_of(ppiece) is uv and inst.pipe_of(cpiece) is None
    assert inst.provenance[ppiece] == e
    inst.validate()


def test_instance_sigma_with_thick():
    inst = SimplicialMapInstance()
    u, v = inst.h.add_cluster(), inst.h.add_cluster()
    uv = inst.h.add_pipe(u, v)
    xs = [inst.new_vertex(u) for _ in range(4)]
    ys = [inst.new_vertex(v) for _ in range(4)]
    es = [inst.new_pipe_edge(xs[i], ys[i], uv) for i in range(4)]
    assert inst.sigma(uv) == 4
    inst.thick.make(es[:3], uv)
    assert inst.sigma(uv) == 2
    inst.validate()
