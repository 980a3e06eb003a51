"""Lazily generated ambient bases: finite sets and finite T0 spaces.

These satisfy the same arrow protocol as FinCategory (identity, compose,
source/target, hom, is_iso, pullback) but never materialize a composition
table: arrows are concrete functions, composition is function composition,
and pullbacks are computed elementwise with canonical pair-set apexes.
Classification tiers are exposed as Scopes; corners of tier cospans live in
the wider ambient, which is the whole point of the two-tier design.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from ..fincat import NoPullback, SizeCapExceeded
from ..fibred import Scope


def _elem_key(e):
    if isinstance(e, int):
        return (0, e)
    if isinstance(e, tuple):
        return (1, tuple(_elem_key(x) for x in e))
    return (2, repr(e))


@dataclass(frozen=True)
class FSetObj:
    """A canonical finite set: elements stored sorted."""
    elems: tuple

    @staticmethod
    def of(iterable):
        return FSetObj(tuple(sorted(set(iterable), key=_elem_key)))

    def __len__(self):
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def __repr__(self):
        return f"set{list(self.elems)!r}"


@dataclass(frozen=True)
class FnArrow:
    """A concrete function between canonical finite sets."""
    dom: FSetObj
    cod: FSetObj
    graph: tuple       # ((x, f(x)), ...) sorted by x

    @staticmethod
    def of(dom, cod, mapping):
        g = tuple(sorted(((x, mapping[x]) for x in dom.elems),
                         key=lambda p: _elem_key(p[0])))
        return FnArrow(dom, cod, g)

    def __call__(self, x):
        for a, b in self.graph:
            if a == x:
                return b
        raise KeyError(x)

    def as_dict(self):
        return dict(self.graph)

    def is_injective(self):
        vals = [b for _, b in self.graph]
        return len(set(vals)) == len(vals)

    def is_surjective(self):
        return set(b for _, b in self.graph) == set(self.cod.elems)

    def fiber(self, y):
        return tuple(a for a, b in self.graph if b == y)

    def __repr__(self):
        return f"fn({list(self.dom.elems)!r}->{list(self.cod.elems)!r}:{dict(self.graph)!r})"


def skeletal_set(n):
    return FSetObj(tuple(range(n)))


class FinSetBase:
    """The category of canonical finite sets of size <= max_size, lazily.

    ``tier_scope(N)`` quantifies base changes over arrows out of the
    skeletal sets of size <= N; corners of tier cospans (size <= N*N) exist
    here as canonical pair-sets.  ``dependent_product`` provides certified
    dependent products (sections) for strictness checks.
    """

    def __init__(self, max_size):
        self.max_size = max_size
        self.name = f"FinSet<={max_size}"
        self._pb = {}
        self._dp = {}
        self._hom = {}

    # -- protocol ----------------------------------------------------------

    def identity(self, S):
        return FnArrow.of(S, S, {x: x for x in S})

    def is_identity(self, f):
        return f.dom == f.cod and all(a == b for a, b in f.graph)

    def source(self, f):
        return f.dom

    def target(self, f):
        return f.cod

    def compose(self, g, f):
        if f.cod != g.dom:
            raise NoPullback(f"not composable: {f!r} then {g!r}")
        fd, gd = f.as_dict(), g.as_dict()
        return FnArrow.of(f.dom, g.cod, {x: gd[fd[x]] for x in f.dom})

    def hom(self, A, B):
        if (A, B) in self._hom:
            return self._hom[(A, B)]
        elems_a = list(A.elems)
        elems_b = list(B.elems)
        if not elems_a:
            out = (FnArrow.of(A, B, {}),)
        elif not elems_b:
            out = ()
        else:
            out = tuple(FnArrow.of(A, B, dict(zip(elems_a, combo)))
                        for combo in itertools.product(elems_b,
                                                       repeat=len(elems_a)))
        self._hom[(A, B)] = out
        return out

    def is_iso(self, f):
        return f.is_injective() and f.is_surjective()

    def inverse(self, f):
        if not self.is_iso(f):
            return None
        return FnArrow.of(f.cod, f.dom, {b: a for a, b in f.graph})

    def is_inclusion(self, f):
        return all(a == b for a, b in f.graph) and \
            set(f.dom.elems) <= set(f.cod.elems)

    def pullback(self, f, g):
        """Canonical elementwise pullback.

        Identity and inclusion legs are special-cased to strict squares
        (apex = the other source / the literal preimage subset), so
        pullback along identities is the identity and preimages of
        subobjects are subobjects on the nose.  General cospans get the
        canonical pair-set apex.
        """
        key = (f, g)
        if key in self._pb:
            return self._pb[key]
        if f.cod != g.cod:
            raise NoPullback("cospan legs do not share a target")
        if self.is_identity(g):
            sq = _Square(f, g, f.dom, self.identity(f.dom), f)
        elif self.is_identity(f):
            sq = _Square(f, g, g.dom, g, self.identity(g.dom))
        elif self.is_inclusion(f):
            sub = set(f.dom.elems)
            P = FSetObj.of(w for w in g.dom if g(w) in sub)
            sq = _Square(f, g, P,
                         FnArrow.of(P, f.dom, {w: g(w) for w in P}),
                         FnArrow.of(P, g.dom, {w: w for w in P}))
        elif self.is_inclusion(g):
            sub = set(g.dom.elems)
            P = FSetObj.of(x for x in f.dom if f(x) in sub)
            sq = _Square(f, g, P,
                         FnArrow.of(P, f.dom, {x: x for x in P}),
                         FnArrow.of(P, g.dom, {x: f(x) for x in P}))
        else:
            fd, gd = f.as_dict(), g.as_dict()
            pairs = [(x, w) for x in f.dom for w in g.dom if fd[x] == gd[w]]
            if len(pairs) > self.max_size:
                raise NoPullback(
                    f"pullback corner of size {len(pairs)} exceeds ambient "
                    f"{self.name}")
            P = FSetObj.of(pairs)
            sq = _Square(f, g, P,
                         FnArrow.of(P, f.dom, {p: p[0] for p in pairs}),
                         FnArrow.of(P, g.dom, {p: p[1] for p in pairs}))
        self._pb[key] = sq
        return sq

    # -- tiers and products --------------------------------------------------

    def tier_objects(self, N):
        return tuple(skeletal_set(k) for k in range(N + 1))

    def tier_scope(self, N):
        if N > self.max_size:
            raise SizeCapExceeded(f"tier {N} exceeds ambient {self.name}")
        base = self

        def into(Z):
            out = []
            for k in range(N + 1):
                out.extend(base.hom(skeletal_set(k), Z))
            return out

        def all_arrows():
            out = []
            for k in range(N + 1):
                for m in range(N + 1):
                    out.extend(base.hom(skeletal_set(k), skeletal_set(m)))
            return out

        return Scope(f"maps out of FinSet<={N} (ambient {self.name})",
                     into, all_arrows)

    def slice_homs(self, a, b):
        """Maps dom a -> dom b over the shared target, elementwise product."""
        if a.cod != b.cod:
            return ()
        fibers = {}
        for e2, y in b.graph:
            fibers.setdefault(y, []).append(e2)
        choices = []
        for e, y in a.graph:
            opts = fibers.get(y, [])
            if not opts:
                return ()
            choices.append(opts)
        out = []
        dom_elems = [e for e, _ in a.graph]
        for combo in itertools.product(*choices):
            out.append(FnArrow.of(a.dom, b.dom, dict(zip(dom_elems, combo))))
        return tuple(out)

    def dependent_product(self, u, t):
        """(pi: P -> cod u, ev: apex(u* pi) -> src t) for t over src u.

        P consists of pairs (y, section) where section assigns to every
        x in the u-fiber of y an element of the t-fiber of x; ev evaluates
        a section at the point it is pulled back to.
        """
        key = (u, t)
        if key in self._dp:
            return self._dp[key]
        if t.cod != u.dom:
            raise NoPullback("dependent product: t is not over src(u)")
        td = t.as_dict()
        points = []
        for y in u.cod:
            fib = u.fiber(y)
            choices = []
            for x in fib:
                opts = [e for e in t.dom if td[e] == x]
                choices.append(opts)
            for combo in itertools.product(*choices):
                section = tuple(sorted(zip(fib, combo),
                                       key=lambda p: _elem_key(p[0])))
                points.append((y, section))
        P = FSetObj.of(points)
        pi = FnArrow.of(P, u.cod, {p: p[0] for p in points})
        sq = self.pullback(pi, u)
        tsf, tsg = sq.to_src_f.as_dict(), sq.to_src_g.as_dict()
        ev_map = {}
        for a in sq.apex:
            _y, section = tsf[a]      # the section pulled back to the point
            ev_map[a] = dict(section)[tsg[a]]
        ev = FnArrow.of(sq.apex, t.dom, ev_map)
        # counit really lands over src u: t . ev == to_src_g of the square
        assert self.compose(t, ev) == sq.to_src_g
        self._dp[key] = (pi, ev)
        return pi, ev

    def __repr__(self):
        return f"FinSetBase(<= {self.max_size})"


class _Square:
    __slots__ = ("f", "g", "apex", "to_src_f", "to_src_g")

    def __init__(self, f, g, apex, to_src_f, to_src_g):
        self.f = f
        self.g = g
        self.apex = apex
        self.to_src_f = to_src_f
        self.to_src_g = to_src_g


# -- finite T0 spaces as specialization posets --------------------------------

@dataclass(frozen=True)
class SpaceObj:
    """A finite T0 space: points with their specialization partial order.

    ``leq`` holds the pairs (x, y) with x below y; opens are the up-closed
    point sets, encoded as bitmasks over the sorted point tuple.
    """
    points: tuple
    leq: tuple   # sorted tuple of (x, y) pairs, reflexive included

    @staticmethod
    def of(points, leq_pairs):
        pts = tuple(sorted(set(points), key=_elem_key))
        rel = set((x, y) for (x, y) in leq_pairs)
        rel |= {(p, p) for p in pts}
        return SpaceObj(pts, tuple(sorted(rel, key=lambda p: (_elem_key(p[0]),
                                                              _elem_key(p[1])))))

    def index(self, x):
        return self.points.index(x)

    def below(self, x, y):
        return (x, y) in set(self.leq)

    def up_masks(self):
        """All open sets as bitmasks (up-closed subsets)."""
        n = len(self.points)
        rel = set(self.leq)
        opens = []
        for mask in range(1 << n):
            ok = True
            for i in range(n):
                if not (mask >> i) & 1:
                    continue
                for j in range(n):
                    if (self.points[i], self.points[j]) in rel and not (mask >> j) & 1:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                opens.append(mask)
        return tuple(opens)

    def up_closure(self, mask):
        n = len(self.points)
        rel = set(self.leq)
        out = mask
        for i in range(n):
            if (mask >> i) & 1:
                for j in range(n):
                    if (self.points[i], self.points[j]) in rel:
                        out |= 1 << j
        return out

    def down_closure(self, mask):
        n = len(self.points)
        rel = set(self.leq)
        out = mask
        for i in range(n):
            if (mask >> i) & 1:
                for j in range(n):
                    if (self.points[j], self.points[i]) in rel:
                        out |= 1 << j
        return out

    def interior(self, mask):
        """Largest up-closed subset of mask."""
        n = len(self.points)
        rel = set(self.leq)
        out = 0
        for i in range(n):
            if not (mask >> i) & 1:
                continue
            if all((mask >> j) & 1 for j in range(n)
                   if (self.points[i], self.points[j]) in rel):
                out |= 1 << i
        return out

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        nontriv = [(a, b) for (a, b) in self.leq if a != b]
        return f"space({list(self.points)!r},{nontriv!r})"


@dataclass(frozen=True)
class CtsMap:
    """A monotone (= continuous) map between finite T0 spaces."""
    dom: SpaceObj
    cod: SpaceObj
    graph: tuple

    @staticmethod
    def of(dom, cod, mapping):
        g = tuple(sorted(((x, mapping[x]) for x in dom.points),
                         key=lambda p: _elem_key(p[0])))
        return CtsMap(dom, cod, g)

    def __call__(self, x):
        return dict(self.graph)[x]

    def as_dict(self):
        return dict(self.graph)

    def __repr__(self):
        return f"cts({dict(self.graph)!r})"


class FinSpaceBase:
    """Finite T0 spaces (posets) of bounded size, lazily, with pullbacks."""

    def __init__(self, max_points):
        self.max_points = max_points
        self.name = f"FinTop<={max_points}"
        self._pb = {}
        self._hom = {}

    def identity(self, S):
        return CtsMap.of(S, S, {x: x for x in S.points})

    def is_identity(self, f):
        return f.dom == f.cod and all(a == b for a, b in f.graph)

    def source(self, f):
        return f.dom

    def target(self, f):
        return f.cod

    def compose(self, g, f):
        fd, gd = f.as_dict(), g.as_dict()
        return CtsMap.of(f.dom, g.cod, {x: gd[fd[x]] for x in f.dom.points})

    def hom(self, A, B):
        """All monotone maps A -> B."""
        if (A, B) in self._hom:
            return self._hom[(A, B)]
        pts = list(A.points)
        if not pts:
            out = (CtsMap.of(A, B, {}),)
        elif not B.points:
            out = ()
        else:
            out = []
            rel_a = set(A.leq)
            rel_b = set(B.leq)
            for combo in itertools.product(B.points, repeat=len(pts)):
                m = dict(zip(pts, combo))
                if all((m[x], m[y]) in rel_b for (x, y) in rel_a):
                    out.append(CtsMap.of(A, B, m))
            out = tuple(out)
        self._hom[(A, B)] = out
        return out

    def is_iso(self, f):
        vals = [b for _, b in f.graph]
        if len(set(vals)) != len(vals) or set(vals) != set(f.cod.points):
            return False
        inv = {b: a for a, b in f.graph}
        rel_a = set(f.dom.leq)
        return all((inv[x], inv[y]) in rel_a for (x, y) in f.cod.leq)

    def pullback(self, f, g):
        key = (f, g)
        if key in self._pb:
            return self._pb[key]
        if f.cod != g.cod:
            raise NoPullback("cospan legs do not share a target")
        if self.is_identity(g):
            sq = _Square(f, g, f.dom, self.identity(f.dom), f)
        elif self.is_identity(f):
            sq = _Square(f, g, g.dom, g, self.identity(g.dom))
        else:
            fd, gd = f.as_dict(), g.as_dict()
            pts = [(x, w) for x in f.dom.points for w in g.dom.points
                   if fd[x] == gd[w]]
            if len(pts) > self.max_points:
                raise NoPullback(f"corner of size {len(pts)} exceeds {self.name}")
            rel_x, rel_w = set(f.dom.leq), set(g.dom.leq)
            leq = [((x, w), (x2, w2)) for (x, w) in pts for (x2, w2) in pts
                   if (x, x2) in rel_x and (w, w2) in rel_w]
            P = SpaceObj.of(pts, leq)
            sq = _Square(f, g, P,
                         CtsMap.of(P, f.dom, {p: p[0] for p in P.points}),
                         CtsMap.of(P, g.dom, {p: p[1] for p in P.points}))
        self._pb[key] = sq
        return sq

    def __repr__(self):
        return f"FinSpaceBase(<= {self.max_points})"


@lru_cache(maxsize=None)
def all_posets(n):
    """All partial orders on range(n), as tuples of reflexive pairs."""
    pts = tuple(range(n))
    base_pairs = [(i, j) for i in pts for j in pts if i != j]
    out = []
    for bits in range(1 << len(base_pairs)):
        rel = {(p, p) for p in pts}
        rel |= {base_pairs[k] for k in range(len(base_pairs)) if (bits >> k) & 1}
        ok = True
        for (a, b) in list(rel):
            if a != b and (b, a) in rel:
                ok = False
                break
        if not ok:
            continue
        for (a, b) in list(rel):
            for (c, d) in list(rel):
                if b == c and (a, d) not in rel:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(tuple(sorted(rel)))
    return tuple(out)


def poset_iso_classes(n):
    """One SpaceObj per isomorphism class of posets on n points."""
    import itertools as it
    reps = []
    seen = set()
    for rel in all_posets(n):
        canon = min(
            tuple(sorted((perm[a], perm[b]) for (a, b) in rel))
            for perm in [dict(zip(range(n), p))
                         for p in it.permutations(range(n))])
        if canon not in seen:
            seen.add(canon)
            reps.append(SpaceObj.of(range(n), rel))
    return reps


def spaces_upto(n):
    """Iso-class representatives of all T0 spaces with <= n points."""
    out = []
    for k in range(n + 1):
        out.extend(poset_iso_classes(k))
    return out
