"""Surface-embedded graphs: rotation systems plus edge signatures.

Clusters and pipes are objects with stable identity; local surgery
(re-endpointing, contraction splices, vertex flips) mutates them in place so
that references held elsewhere survive. Rotations are circular doubly linked
lists keyed by pipe object, making slot-preserving edits O(1).
"""

from __future__ import annotations

from .graph import PreconditionError, StructuralError


class Cluster:
    def __init__(self, cid):
        self.id = cid
        self.alive = True
        self.rnext = {}   # pipe -> next pipe ccw
        self.rprev = {}   # pipe -> previous pipe ccw
        self.gverts = set()

    @property
    def degree(self):
        return len(self.rnext)

    def __repr__(self):
        return f"Cluster({self.id})"


class Pipe:
    def __init__(self, pid, u, v, sig=1):
        self.id = pid
        self.u = u
        self.v = v
        self.sig = sig
        self.alive = True

    def other(self, c):
        if c is self.u:
            return self.v
        if c is self.v:
            return self.u
        raise StructuralError(f"pipe {self.id} not incident to cluster {c.id}")

    def __repr__(self):
        return f"Pipe({self.id}:{self.u.id}-{self.v.id})"


class EmbeddedGraph:
    """Graph embedded in a surface via rotations (ccw) and signatures.

    Loops are forbidden. Parallel pipes are tolerated transiently (they can
    appear between a contraction and the expansion that cleans them up);
    ingestion enforces simplicity.
    """

    def __init__(self, orientable=True):
        self.clusters = {}
        self.pipes = {}
        self.orientable = orientable
        self._next_c = 0
        self._next_p = 0

    # -- construction -------------------------------------------------------

    def add_cluster(self):
        c = Cluster(self._next_c)
        self._next_c += 1
        self.clusters[c.id] = c
        return c

    def _rot_insert(self, c, pipe, after=None):
        if not c.rnext:
            c.rnext[pipe] = pipe
            c.rprev[pipe] = pipe
            return
        if after is None:
            after = next(iter(c.rnext))
        nxt = c.rnext[after]
        c.rnext[after] = pipe
        c.rprev[pipe] = after
        c.rnext[pipe] = nxt
        c.rprev[nxt] = pipe

    def _rot_remove(self, c, pipe):
        p, n = c.rprev.pop(pipe), c.rnext.pop(pipe)
        if p is not pipe:
            c.rnext[p] = n
            c.rprev[n] = p

    def add_pipe(self, u, v, sig=1, after_u=None, after_v=None):
        if u is v:
            raise PreconditionError("loop pipes are not allowed")
        p = Pipe(self._next_p, u, v, sig)
        self._next_p += 1
        self.pipes[p.id] = p
        self._rot_insert(u, p, after_u)
        self._rot_insert(v, p, after_v)
        return p

    def remove_pipe(self, p):
        self._rot_remove(p.u, p)
        self._rot_remove(p.v, p)
        p.alive = False
        del self.pipes[p.id]

    def remove_cluster(self, c):
        for p in list(c.rnext):
            self.remove_pipe(p)
        c.alive = False
        del self.clusters[c.id]

    # -- queries ------------------------------------------------------------

    def rotation(self, c):
        """Pipes incident to c in ccw order, as a list."""
        if not c.rnext:
            return []
        start = next(iter(c.rnext))
        out = [start]
        p = c.rnext[start]
        while p is not start:
            out.append(p)
            p = c.rnext[p]
        return out

    def pipe_between(self, u, v):
        """Any pipe joining u and v, or None (scans the smaller rotation)."""
        a, b = (u, v) if u.degree <= v.degree else (v, u)
        for p in a.rnext:
            if p.other(a) is b:
                return p
        return None

    def is_simple(self):
        for c in self.clusters.values():
            seen = set()
            for p in c.rnext:
                o = p.other(c)
                if o is c or o.id in seen:
                    return False
                seen.add(o.id)
        return True

    # -- surgery ------------------------------------------------------------

    def replace_end(self, pipe, old, new, after_new=None):
        """Move one end of a pipe to another cluster.

        The far end's rotation slot is untouched; the new end is inserted
        after `after_new` (or anywhere if None).
        """
        self._rot_remove(old, pipe)
        if pipe.u is old:
            pipe.u = new
        elif pipe.v is old:
            pipe.v = new
        else:
            raise StructuralError("replace_end: pipe not at old cluster")
        self._rot_insert(new, pipe, after_new)

    def set_rotation(self, c, pipes):
        """Install a full ccw rotation for c (pipes must be exactly its pipes)."""
        if set(pipes) != set(c.rnext):
            raise StructuralError("set_rotation: pipe set mismatch")
        c.rnext = {}
        c.rprev = {}
        n = len(pipes)
        for i, p in enumerate(pipes):
            c.rnext[p] = pipes[(i + 1) % n]
            c.rprev[p] = pipes[(i - 1) % n]

    def flip_cluster(self, c):
        """Mirror the disk of c: reverse its rotation, toggle incident signatures."""
        c.rnext, c.rprev = c.rprev, c.rnext
        for p in c.rnext:
            p.sig = -p.sig

    def contraction_order(self, pipe):
        """Rotation the merged cluster would have if `pipe` were contracted.

        Returns the ccw list: pipes of v starting after vu, then pipes of u
        starting after uv.
        """
        u, v = pipe.u, pipe.v
        out = []
        for c in (v, u):
            p = c.rnext[pipe]
            while p is not pipe:
                out.append(p)
                p = c.rnext[p]
        return out

    # -- faces ---------------------------------------------------------------

    def faces(self):
        """Facial walks of the embedding, assuming all signatures are +1.

        Each face is a list of directed sides (pipe, head_cluster); the walk
        keeps the face on its left, so with ccw rotations interior faces come
        out ccw and the outer face clockwise.
        """
        seen = set()
        out = []
        for p in self.pipes.values():
            for head in (p.u, p.v):
                if (p.id, head.id) in seen:
                    continue
                walk = []
                e, h = p, head
                while (e.id, h.id) not in seen:
                    seen.add((e.id, h.id))
                    walk.append((e, h))
                    e = h.rnext[e]
                    h = e.other(h)
                out.append(walk)
        return out

    def validate(self):
        for c in self.clusters.values():
            ps = self.rotation(c)
            if len(ps) != len(c.rnext) or set(ps) != set(c.rnext):
                raise StructuralError(f"rotation of {c} is not a single cycle")
            for p in ps:
                if p.id not in self.pipes:
                    raise StructuralError(f"stale pipe {p} at {c}")
                if p.u is not c and p.v is not c:
                    raise StructuralError(f"pipe {p} listed at non-end {c}")
        for p in self.pipes.values():
            if p.u.id not in self.clusters or p.v.id not in self.clusters:
                raise StructuralError(f"pipe {p} has dead end")
            if p not in p.u.rnext or p not in p.v.rnext:
                raise StructuralError(f"pipe {p} missing from a rotation")
            if self.orientable and p.sig != 1:
                raise StructuralError("negative signature on orientable surface")
        return True
