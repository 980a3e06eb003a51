"""Exact core for finite categories.

Everything here is finite, immutable and certified by enumeration: categories
are explicit object/arrow sets with a total composition table, functors and
natural transformations are validated on construction, and the universal
properties returned by ``pullback`` / ``set_limit_colimit`` come with
exhaustive certificates.
"""

from __future__ import annotations

import itertools
from functools import lru_cache


class FinCatError(Exception):
    """Base class for structural errors in finite-category data."""


class MissingComposite(FinCatError):
    pass


class NonAssociative(FinCatError):
    pass


class IdentityLawViolation(FinCatError):
    pass


class DanglingEndpoint(FinCatError):
    pass


class NotFunctorial(FinCatError):
    pass


class NotNatural(FinCatError):
    pass


class NoPullback(FinCatError):
    pass


class SizeCapExceeded(FinCatError):
    pass


# A finite set used as the value of a set-valued diagram. Elements are
# distinct hashable identifiers; frozenset already enforces that.
FinSetObj = frozenset

# Associativity is checked exhaustively up to this many composable triples;
# posetal categories skip the scan (parallel arrows are equal there).
_ASSOC_TRIPLE_CAP = 2_000_000


class FinCategory:
    """A finite category with a total, certified composition table.

    ``objects`` and ``arrows`` are sorted tuples of identifiers; ``src``,
    ``tgt`` map arrows to objects, ``ident`` maps each object to its identity
    arrow, and ``comp[(g, f)]`` is ``g after f`` for every composable pair.
    Instances are immutable, hashable and compare structurally.
    """

    __slots__ = ("name", "objects", "arrows", "src", "tgt", "ident", "comp",
                 "_hom", "_ids", "_posetal", "_inverse", "_hash", "_dir_cache")

    def __init__(self, name, objects, arrows, src, tgt, ident, comp, *,
                 validate=True):
        self.name = str(name)
        self.objects = tuple(sorted(objects, key=_okey))
        self.arrows = tuple(sorted(arrows, key=_okey))
        self.src = dict(src)
        self.tgt = dict(tgt)
        self.ident = dict(ident)
        self.comp = dict(comp)
        self._hom = None
        self._inverse = None
        self._dir_cache = None
        self._ids = frozenset(self.ident.values())
        by_pair = {}
        for a in self.arrows:
            by_pair.setdefault((self.src.get(a), self.tgt.get(a)), []).append(a)
        self._posetal = all(len(v) == 1 for v in by_pair.values())
        self._hash = hash((self.objects, self.arrows,
                           tuple(sorted(self.src.items(), key=_okey2)),
                           tuple(sorted(self.tgt.items(), key=_okey2)),
                           tuple(sorted(self.ident.items(), key=_okey2)),
                           tuple(sorted(self.comp.items(), key=_okey2))))
        if validate:
            self._validate()

    # -- validation -------------------------------------------------------

    def _validate(self):
        objs = set(self.objects)
        for a in self.arrows:
            if a not in self.src or a not in self.tgt:
                raise DanglingEndpoint(f"arrow {a!r} has no source/target")
            if self.src[a] not in objs or self.tgt[a] not in objs:
                raise DanglingEndpoint(f"arrow {a!r} endpoints not objects")
        for x in self.objects:
            i = self.ident.get(x)
            if i is None or i not in set(self.arrows):
                raise IdentityLawViolation(f"object {x!r} has no identity arrow")
            if self.src[i] != x or self.tgt[i] != x:
                raise IdentityLawViolation(f"identity of {x!r} is not an endomorphism")
        arrws = set(self.arrows)
        for (g, f), h in self.comp.items():
            if g not in arrws or f not in arrws or h not in arrws:
                raise DanglingEndpoint(f"composite entry ({g!r},{f!r})={h!r} uses unknown arrows")
            if self.tgt[f] != self.src[g]:
                raise MissingComposite(f"({g!r},{f!r}) recorded but not composable")
            if self.src[h] != self.src[f] or self.tgt[h] != self.tgt[g]:
                raise DanglingEndpoint(
                    f"composite {h!r} of ({g!r},{f!r}) has endpoints "
                    f"{self.src[h]!r}->{self.tgt[h]!r}, expected "
                    f"{self.src[f]!r}->{self.tgt[g]!r}")
        by_src = {}
        for g in self.arrows:
            by_src.setdefault(self.src[g], []).append(g)
        for f in self.arrows:
            for g in by_src.get(self.tgt[f], ()):
                if (g, f) not in self.comp:
                    raise MissingComposite(f"composite of ({g!r},{f!r}) not defined")
        for f in self.arrows:
            i_s, i_t = self.ident[self.src[f]], self.ident[self.tgt[f]]
            if self.comp[(f, i_s)] != f:
                raise IdentityLawViolation(f"{f!r} . id != {f!r}")
            if self.comp[(i_t, f)] != f:
                raise IdentityLawViolation(f"id . {f!r} != {f!r}")
        if not self._posetal:
            self._check_associativity(by_src)

    def _check_associativity(self, by_src):
        n = 0
        for f in self.arrows:
            for g in by_src.get(self.tgt[f], ()):
                gf = self.comp[(g, f)]
                for h in by_src.get(self.tgt[g], ()):
                    n += 1
                    if self.comp[(h, gf)] != self.comp[(self.comp[(h, g)], f)]:
                        raise NonAssociative(f"(h g f) differs for h={h!r} g={g!r} f={f!r}")
                    if n > _ASSOC_TRIPLE_CAP:
                        raise SizeCapExceeded("associativity scan exceeds triple cap")

    # -- protocol used by fibred/classify (shared with lazy bases) --------

    def identity(self, x):
        return self.ident[x]

    def compose(self, g, f):
        """g after f."""
        try:
            return self.comp[(g, f)]
        except KeyError:
            raise MissingComposite(f"({g!r},{f!r}) not composable") from None

    def source(self, a):
        return self.src[a]

    def target(self, a):
        return self.tgt[a]

    def hom(self, a, b):
        if self._hom is None:
            hom = {}
            for f in self.arrows:
                hom.setdefault((self.src[f], self.tgt[f]), []).append(f)
            self._hom = {k: tuple(v) for k, v in hom.items()}
        return self._hom.get((a, b), ())

    def _directions(self):
        if self._dir_cache is None:
            by_src, by_tgt = {}, {}
            for f in self.arrows:
                by_src.setdefault(self.src[f], []).append(f)
                by_tgt.setdefault(self.tgt[f], []).append(f)
            self._dir_cache = ({k: tuple(v) for k, v in by_src.items()},
                               {k: tuple(v) for k, v in by_tgt.items()})
        return self._dir_cache

    def hom_from(self, a):
        return self._directions()[0].get(a, ())

    def hom_into(self, b):
        return self._directions()[1].get(b, ())

    def all_arrows(self):
        return self.arrows

    def is_identity(self, a):
        return a in self._ids

    def inverse(self, a):
        """Two-sided inverse of ``a`` or None."""
        if self._inverse is None:
            inv = {}
            for f in self.arrows:
                for g in self.hom(self.tgt[f], self.src[f]):
                    if (self.comp[(g, f)] == self.ident[self.src[f]]
                            and self.comp[(f, g)] == self.ident[self.tgt[f]]):
                        inv[f] = g
                        break
            self._inverse = inv
        return self._inverse.get(a)

    def is_iso(self, a):
        return self.inverse(a) is not None

    def is_posetal(self):
        """True when every hom-set has at most one arrow."""
        return self._posetal

    def pullback(self, f, g):
        return pullback(self, f, g)

    # -- value semantics ---------------------------------------------------

    def _key(self):
        return (self.objects, self.arrows,
                tuple(sorted(self.src.items(), key=_okey2)),
                tuple(sorted(self.tgt.items(), key=_okey2)),
                tuple(sorted(self.ident.items(), key=_okey2)),
                tuple(sorted(self.comp.items(), key=_okey2)))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinCategory):
            return NotImplemented
        return self._hash == other._hash and self._key() == other._key()

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return (f"FinCategory({self.name!r}, {len(self.objects)} objects, "
                f"{len(self.arrows)} arrows)")


def _okey(x):
    return (repr(type(x)), repr(x))


def _okey2(kv):
    return (repr(kv[0]), repr(kv[1]))


# -- construction ----------------------------------------------------------

def build_category(name, objects, arrows=(), composites=None, *,
                   identity_prefix="1_"):
    """Build and certify a FinCategory from a raw description.

    ``arrows`` lists non-identity arrows as ``(id, src, tgt)`` triples;
    identities are added automatically as ``1_<object>``. ``composites`` maps
    ``(g, f)`` pairs of non-identity arrows to their composite arrow id;
    composites with an identity are implied. Missing or inconsistent data
    raises MissingComposite / NonAssociative / IdentityLawViolation /
    DanglingEndpoint naming the offending arrows.
    """
    objects = list(objects)
    src, tgt, ident = {}, {}, {}
    names = []
    for x in objects:
        i = f"{identity_prefix}{x}"
        ident[x] = i
        src[i] = tgt[i] = x
        names.append(i)
    for (a, s, t) in arrows:
        if a in src:
            raise DanglingEndpoint(f"duplicate arrow id {a!r}")
        src[a], tgt[a] = s, t
        names.append(a)
    comp = {}
    for a in names:
        s, t = src.get(a), tgt.get(a)
        if s in ident:
            comp[(a, ident[s])] = a
        if t in ident:
            comp[(ident[t], a)] = a
    for (g, f), h in (composites or {}).items():
        comp[(g, f)] = h
    return FinCategory(name, objects, names, src, tgt, ident, comp)


def poset_category(name, elements, leq):
    """Category of a finite poset/preorder; arrow ``a->b`` named ``a<=b``."""
    elements = sorted(elements, key=_okey)
    arrows, src, tgt, ident, comp = [], {}, {}, {}, {}

    def nm(a, b):
        return f"{a}<={b}"

    pairs = [(a, b) for a in elements for b in elements if leq(a, b)]
    for a in elements:
        if not leq(a, a):
            raise IdentityLawViolation(f"preorder not reflexive at {a!r}")
        ident[a] = nm(a, a)
    for (a, b) in pairs:
        arrows.append(nm(a, b))
        src[nm(a, b)], tgt[nm(a, b)] = a, b
    for (a, b) in pairs:
        for c in elements:
            if leq(b, c):
                comp[(nm(b, c), nm(a, b))] = nm(a, c)
    return FinCategory(name, elements, arrows, src, tgt, ident, comp)


def terminal_category():
    return build_category("1", ["*"])


def discrete_category(names):
    return build_category("disc", list(names))


def interval_category():
    """The walking arrow [1] with objects 0, 1."""
    return build_category("[1]", ["0", "1"], [("a", "0", "1")])


def chain_category(n):
    """The linear order [n] with all composites present."""
    return poset_category(f"[{n}]", [str(i) for i in range(n + 1)],
                          lambda a, b: int(a) <= int(b))


def parallel_pair_category():
    return build_category("pair", ["0", "1"], [("f", "0", "1"), ("g", "0", "1")])


def product_category(cats):
    """Finite product of categories; objects/arrows are tuples."""
    cats = list(cats)
    objects = list(itertools.product(*[c.objects for c in cats]))
    arrows = list(itertools.product(*[c.arrows for c in cats]))
    src = {a: tuple(c.src[x] for c, x in zip(cats, a)) for a in arrows}
    tgt = {a: tuple(c.tgt[x] for c, x in zip(cats, a)) for a in arrows}
    ident = {o: tuple(c.ident[x] for c, x in zip(cats, o)) for o in objects}
    comp = {}
    for g in arrows:
        for f in arrows:
            if all(c.tgt[x] == c.src[y] for c, x, y in zip(cats, f, g)):
                comp[(g, f)] = tuple(c.comp[(y, x)] for c, x, y in zip(cats, f, g))
    name = "x".join(c.name for c in cats) if cats else "1"
    return FinCategory(name, objects, arrows, src, tgt, ident, comp)


class FinFunctor:
    """A structure-preserving map between finite categories, certified."""

    __slots__ = ("name", "dom", "cod", "ob", "ar", "_hash")

    def __init__(self, name, dom, cod, ob, ar, *, validate=True):
        self.name = str(name)
        self.dom = dom
        self.cod = cod
        self.ob = dict(ob)
        self.ar = dict(ar)
        self._hash = hash((dom, cod, tuple(sorted(self.ob.items(), key=_okey2)),
                           tuple(sorted(self.ar.items(), key=_okey2))))
        if validate:
            self._validate()

    def _validate(self):
        for x in self.dom.objects:
            if x not in self.ob:
                raise NotFunctorial(f"object {x!r} has no assignment")
            if self.ob[x] not in set(self.cod.objects):
                raise NotFunctorial(f"object image {self.ob[x]!r} not in codomain")
        for a in self.dom.arrows:
            if a not in self.ar:
                raise NotFunctorial(f"arrow {a!r} has no assignment")
            fa = self.ar[a]
            if fa not in set(self.cod.arrows):
                raise NotFunctorial(f"arrow image {fa!r} not in codomain")
            if (self.cod.src[fa] != self.ob[self.dom.src[a]]
                    or self.cod.tgt[fa] != self.ob[self.dom.tgt[a]]):
                raise NotFunctorial(f"arrow {a!r} image has wrong endpoints")
        for x in self.dom.objects:
            if self.ar[self.dom.ident[x]] != self.cod.ident[self.ob[x]]:
                raise NotFunctorial(f"identity of {x!r} not preserved")
        for f in self.dom.arrows:
            for g in self.dom.hom_from(self.dom.tgt[f]):
                if self.ar[self.dom.comp[(g, f)]] != self.cod.comp[(self.ar[g], self.ar[f])]:
                    raise NotFunctorial(f"composite of ({g!r},{f!r}) not preserved")

    def __call__(self, x, kind="object"):
        return self.ob[x] if kind == "object" else self.ar[x]

    def on_arrow(self, a):
        return self.ar[a]

    def _key(self):
        return (self.dom, self.cod, tuple(sorted(self.ob.items(), key=_okey2)),
                tuple(sorted(self.ar.items(), key=_okey2)))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinFunctor):
            return NotImplemented
        return self._hash == other._hash and self._key() == other._key()

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FinFunctor({self.name!r}: {self.dom.name} -> {self.cod.name})"


def build_functor(name, dom, cod, ob, ar=None):
    """Validated functor from raw object/arrow assignments.

    Identity arrows may be omitted from ``ar``; they are filled in from the
    object map. Raises NotFunctorial naming the failing arrow pair.
    """
    ar = dict(ar or {})
    for x in dom.objects:
        if x in ob:
            ar.setdefault(dom.ident[x], cod.ident[ob[x]])
    return FinFunctor(name, dom, cod, ob, ar)


def identity_functor(C):
    return FinFunctor(f"id_{C.name}", C, C,
                      {x: x for x in C.objects}, {a: a for a in C.arrows},
                      validate=False)


def constant_functor(C, D, obj):
    return FinFunctor(f"const_{obj}", C, D,
                      {x: obj for x in C.objects},
                      {a: D.ident[obj] for a in C.arrows})


def compose_functors(G, F):
    """G after F."""
    if F.cod != G.dom:
        raise NotFunctorial("functors not composable")
    return FinFunctor(f"{G.name}.{F.name}", F.dom, G.cod,
                      {x: G.ob[F.ob[x]] for x in F.dom.objects},
                      {a: G.ar[F.ar[a]] for a in F.dom.arrows}, validate=False)


class NatTransform:
    """A family of components, every naturality square checked."""

    __slots__ = ("name", "source", "target", "component")

    def __init__(self, name, source, target, component, *, validate=True):
        if source.dom != target.dom or source.cod != target.cod:
            raise NotNatural("source/target functors are not parallel")
        self.name = str(name)
        self.source = source
        self.target = target
        self.component = dict(component)
        if validate:
            self._validate()

    def _validate(self):
        C, D = self.source.dom, self.source.cod
        for x in C.objects:
            cx = self.component.get(x)
            if cx is None:
                raise NotNatural(f"no component at {x!r}")
            if D.src[cx] != self.source.ob[x] or D.tgt[cx] != self.target.ob[x]:
                raise NotNatural(f"component at {x!r} has wrong endpoints")
        for f in C.arrows:
            x, y = C.src[f], C.tgt[f]
            if D.comp[(self.component[y], self.source.ar[f])] != \
               D.comp[(self.target.ar[f], self.component[x])]:
                raise NotNatural(f"naturality fails at arrow {f!r}")

    def at(self, x):
        return self.component[x]

    def __repr__(self):
        return f"NatTransform({self.name!r}: {self.source.name} => {self.target.name})"


def identity_transform(F):
    return NatTransform(f"id_{F.name}", F, F,
                        {x: F.cod.ident[F.ob[x]] for x in F.dom.objects},
                        validate=False)


def vertical_compose(beta, alpha):
    """beta after alpha, componentwise."""
    D = alpha.source.cod
    return NatTransform(f"{beta.name}.{alpha.name}", alpha.source, beta.target,
                        {x: D.comp[(beta.at(x), alpha.at(x))]
                         for x in alpha.source.dom.objects})


def is_natural_iso(alpha):
    """(verdict, failing object or None): every component invertible."""
    D = alpha.source.cod
    for x in alpha.source.dom.objects:
        if not D.is_iso(alpha.at(x)):
            return False, x
    return True, None


# -- set-valued diagrams and their (co)limits ------------------------------

class SetDiagram:
    """A set-valued functor on a finite shape category."""

    __slots__ = ("shape", "value", "action")

    def __init__(self, shape, value, action, *, validate=True):
        self.shape = shape
        self.value = {x: frozenset(v) for x, v in value.items()}
        self.action = {a: dict(m) for a, m in action.items()}
        for x in shape.objects:
            self.action.setdefault(shape.ident[x], {e: e for e in self.value[x]})
        if validate:
            self._validate()

    def _validate(self):
        S = self.shape
        for x in S.objects:
            if x not in self.value:
                raise NotFunctorial(f"no set at object {x!r}")
        for a in S.arrows:
            m = self.action.get(a)
            if m is None:
                raise NotFunctorial(f"no action for arrow {a!r}")
            dom, cod = self.value[S.src[a]], self.value[S.tgt[a]]
            if set(m) != set(dom) or not set(m.values()) <= set(cod):
                raise NotFunctorial(f"action of {a!r} is not a map of the right sets")
        for x in S.objects:
            if self.action[S.ident[x]] != {e: e for e in self.value[x]}:
                raise NotFunctorial(f"identity action at {x!r} is not the identity")
        for f in S.arrows:
            for g in S.hom_from(S.tgt[f]):
                mf, mg = self.action[f], self.action[g]
                mgf = self.action[S.comp[(g, f)]]
                if any(mgf[e] != mg[mf[e]] for e in mf):
                    raise NotFunctorial(f"action not functorial on ({g!r},{f!r})")

    def apply(self, a, e):
        return self.action[a][e]


def set_limit_colimit(D: SetDiagram, polarity):
    """(co)limit of a set-valued diagram with its (co)cone.

    Colimit: tagged disjoint union quotiented by the zigzag relation the
    arrow actions generate; returns (carrier frozenset of class reps,
    cocone maps obj -> {element: class rep}).  Limit: arrow-compatible
    families as tuples sorted by object; returns (carrier, projections).
    Empty diagram: colimit is empty, limit is a one-point set.
    """
    S = D.shape
    if polarity == "colimit":
        tags = [(x, e) for x in S.objects for e in sorted(D.value[x], key=_okey)]
        adj = {t: set() for t in tags}
        for a in S.arrows:
            x, y = S.src[a], S.tgt[a]
            for e, e2 in D.action[a].items():
                adj[(x, e)].add((y, e2))
                adj[(y, e2)].add((x, e))
        rep = {}
        for t in sorted(tags, key=_okey):
            if t in rep:
                continue
            stack, seen = [t], {t}
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            r = min(seen, key=_okey)
            for u in seen:
                rep[u] = r
        carrier = frozenset(rep.values())
        cocone = {x: {e: rep[(x, e)] for e in D.value[x]} for x in S.objects}
        return carrier, cocone
    if polarity == "limit":
        objs = list(S.objects)
        families = []
        for combo in itertools.product(*[sorted(D.value[x], key=_okey) for x in objs]):
            fam = dict(zip(objs, combo))
            if all(D.action[a][fam[S.src[a]]] == fam[S.tgt[a]] for a in S.arrows):
                families.append(tuple(combo))
        carrier = frozenset(families)
        cone = {x: {fam: fam[i] for fam in families} for i, x in enumerate(objs)}
        return carrier, cone
    raise ValueError(f"polarity {polarity!r}")


def verify_colimit_cocone(D, carrier, cocone, apex2, cocone2):
    """Certify: exactly one map carrier -> apex2 commutes with both cocones."""
    S = D.shape
    med = {}
    for x in S.objects:
        for e in D.value[x]:
            c = cocone[x][e]
            v = cocone2[x][e]
            if c in med and med[c] != v:
                return False  # no mediator factors the competitor
            med[c] = v
    if set(med) != set(carrier):
        return False  # cocone not jointly surjective: mediator not unique
    return set(med.values()) <= set(apex2)


def verify_limit_cone(D, carrier, cone, apex2, cone2):
    """Certify: exactly one map apex2 -> carrier commutes with both cones."""
    S = D.shape
    objs = list(S.objects)
    for t in apex2:
        fam = tuple(cone2[x][t] for x in objs)
        if fam not in carrier:
            return False
    # uniqueness: components determine the family pointwise
    return True


# -- comma categories ------------------------------------------------------

@lru_cache(maxsize=None)
def comma(F: FinFunctor, G: FinFunctor):
    """Comma category F/G with its two projections.

    Objects are triples (a, b, arrow Fa -> Gb); arrows are compatible pairs.
    F and G must share their codomain.
    """
    if F.cod != G.cod:
        raise NotFunctorial("comma requires a shared codomain")
    A, B, C = F.dom, G.dom, F.cod
    objs = []
    for a in A.objects:
        for b in B.objects:
            for phi in C.hom(F.ob[a], G.ob[b]):
                objs.append((a, b, phi))
    arrows, src, tgt, ident, comp = [], {}, {}, {}, {}
    arr_of = {}
    for (a, b, phi) in objs:
        for (a2, b2, phi2) in objs:
            for p in A.hom(a, a2):
                for q in B.hom(b, b2):
                    if C.comp[(G.ar[q], phi)] == C.comp[(phi2, F.ar[p])]:
                        nm = (p, q, (a, b, phi), (a2, b2, phi2))
                        arrows.append(nm)
                        src[nm], tgt[nm] = (a, b, phi), (a2, b2, phi2)
                        arr_of[nm] = (p, q)
    for o in objs:
        a, b, phi = o
        ident[o] = (A.ident[a], B.ident[b], o, o)
    for m in arrows:
        for n in arrows:
            if tgt[m] == src[n]:
                p1, q1 = arr_of[m]
                p2, q2 = arr_of[n]
                comp[(n, m)] = (A.comp[(p2, p1)], B.comp[(q2, q1)], src[m], tgt[n])
    cat = FinCategory(f"({F.name}/{G.name})", objs, arrows, src, tgt, ident, comp,
                      validate=False)
    proj_a = FinFunctor(f"pr_{A.name}", cat, A,
                        {o: o[0] for o in objs}, {m: arr_of[m][0] for m in arrows},
                        validate=False)
    proj_b = FinFunctor(f"pr_{B.name}", cat, B,
                        {o: o[1] for o in objs}, {m: arr_of[m][1] for m in arrows},
                        validate=False)
    return cat, proj_a, proj_b


# -- pullbacks with certificates -------------------------------------------

class PullbackSquare:
    """A certified pullback cone over the cospan f: X->Z <- W :g."""

    __slots__ = ("category", "f", "g", "apex", "to_src_f", "to_src_g")

    def __init__(self, category, f, g, apex, to_src_f, to_src_g):
        self.category = category
        self.f = f
        self.g = g
        self.apex = apex
        self.to_src_f = to_src_f   # apex -> src(f)
        self.to_src_g = to_src_g   # apex -> src(g)

    def __repr__(self):
        return f"PullbackSquare(apex={self.apex!r}, over ({self.f!r},{self.g!r}))"


def _cone_candidates(C, f, g):
    X, W = C.src[f], C.src[g]
    for P in C.objects:
        for p in C.hom(P, X):
            for q in C.hom(P, W):
                if C.comp[(f, p)] == C.comp[(g, q)]:
                    yield P, p, q


def _is_universal_cone(C, f, g, P, p, q):
    for (T, a, b) in _cone_candidates(C, f, g):
        ms = [m for m in C.hom(T, P)
              if C.comp[(p, m)] == a and C.comp[(q, m)] == b]
        if len(ms) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def pullback(C: FinCategory, f, g):
    """Canonical certified pullback of a cospan in a materialized category.

    Universality is verified by exhaustive search over all competing cones;
    among certified candidates the lexicographically least (apex, legs) is
    returned, so repeated queries give the same chosen square. Identity legs
    are special-cased to the strict square (apex = the other source), so
    pullback along an identity is the identity on the nose. Raises
    NoPullback when no object of C works.
    """
    if C.tgt[f] != C.tgt[g]:
        raise NoPullback("cospan legs do not share a target")
    if C.is_identity(g):
        return PullbackSquare(C, f, g, C.src[f], C.ident[C.src[f]], f)
    if C.is_identity(f):
        return PullbackSquare(C, f, g, C.src[g], g, C.ident[C.src[g]])
    best = None
    for (P, p, q) in _cone_candidates(C, f, g):
        key = (_okey(P), _okey(p), _okey(q))
        if best is not None and key >= best[0]:
            continue
        if _is_universal_cone(C, f, g, P, p, q):
            best = (key, P, p, q)
    if best is None:
        raise NoPullback(f"no pullback of ({f!r},{g!r}) in {C.name}")
    _, P, p, q = best
    return PullbackSquare(C, f, g, P, p, q)


def verify_pullback_square(C, f, g, apex, p, q):
    """Certify an arbitrary cone over (f, g) as a pullback, exhaustively."""
    if C.comp[(f, p)] != C.comp[(g, q)]:
        return False
    return _is_universal_cone(C, f, g, apex, p, q)


def has_pullback(C, f, g):
    try:
        pullback(C, f, g)
        return True
    except NoPullback:
        return False


# -- extremal objects, equivalences, connectivity --------------------------

class ExtremalReport:
    __slots__ = ("found", "object", "witness")

    def __init__(self, found, object=None, witness=None):
        self.found = found
        self.object = object
        self.witness = witness

    def __bool__(self):
        return self.found

    def __repr__(self):
        if self.found:
            return f"ExtremalReport(object={self.object!r})"
        return f"ExtremalReport(absent, witness={self.witness!r})"


def extremal_object(C: FinCategory, polarity):
    """Initial/terminal object with a uniqueness certificate, or Absent.

    The witness on failure is (candidate, blocking object, hom size) for the
    first candidate ruled out, over the sorted object order.
    """
    last_fail = None
    for x in C.objects:
        ok = True
        for y in C.objects:
            n = len(C.hom(x, y)) if polarity == "initial" else len(C.hom(y, x))
            if n != 1:
                ok = False
                last_fail = (x, y, n)
                break
        if ok:
            return ExtremalReport(True, object=x)
    return ExtremalReport(False, witness=last_fail)


class EquivalenceReport:
    __slots__ = ("verdict", "reason", "witness")

    def __init__(self, verdict, reason=None, witness=None):
        self.verdict = verdict
        self.reason = reason
        self.witness = witness

    def __bool__(self):
        return self.verdict

    def __repr__(self):
        if self.verdict:
            return "EquivalenceReport(true)"
        return f"EquivalenceReport(false, {self.reason}: {self.witness!r})"


def is_equivalence(F: FinFunctor):
    """Fully faithful + essentially surjective, by enumeration."""
    C, D = F.dom, F.cod
    for a in C.objects:
        for b in C.objects:
            dom_hom = C.hom(a, b)
            cod_hom = D.hom(F.ob[a], F.ob[b])
            images = [F.ar[f] for f in dom_hom]
            if len(set(images)) != len(images):
                return EquivalenceReport(False, "not faithful", (a, b))
            if set(images) != set(cod_hom):
                return EquivalenceReport(False, "not full", (a, b))
    hit = set()
    for a in C.objects:
        hit.add(F.ob[a])
    for d in D.objects:
        if d in hit:
            continue
        if not any(D.is_iso(f) for c in hit for f in D.hom(c, d)):
            return EquivalenceReport(False, "not essentially surjective", d)
    return EquivalenceReport(True)


def quasi_inverse(F: FinFunctor):
    """A quasi-inverse of a certified equivalence (deterministic choice)."""
    rep = is_equivalence(F)
    if not rep:
        raise NotFunctorial(f"not an equivalence: {rep!r}")
    C, D = F.dom, F.cod
    back, iso = {}, {}
    for d in D.objects:
        found = None
        for c in C.objects:
            for f in D.hom(F.ob[c], d):
                if D.is_iso(f):
                    found = (c, f)
                    break
            if found:
                break
        back[d] = found[0]
        iso[d] = found[1]   # F(back d) -> d
    ar = {}
    for m in D.arrows:
        d, d2 = D.src[m], D.tgt[m]
        # unique arrow back(d) -> back(d2) hitting iso_d2^-1 . m . iso_d
        want = D.comp[(D.inverse(iso[d2]), D.comp[(m, iso[d])])]
        cands = [f for f in C.hom(back[d], back[d2]) if F.ar[f] == want]
        ar[m] = cands[0]
    return FinFunctor(f"{F.name}^-1", D, C, back, ar)


def is_connected(C: FinCategory):
    """Nonempty and any two objects joined by a zigzag of arrows."""
    if not C.objects:
        return False
    adj = {x: set() for x in C.objects}
    for a in C.arrows:
        adj[C.src[a]].add(C.tgt[a])
        adj[C.tgt[a]].add(C.src[a])
    seen = {C.objects[0]}
    stack = [C.objects[0]]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(C.objects)


def cat_pullback(F: FinFunctor, G: FinFunctor):
    """Strict pullback of categories along a cospan of functors.

    Objects/arrows are pairs agreeing in the codomain; returns the corner
    with its two projection functors.
    """
    if F.cod != G.cod:
        raise NotFunctorial("cospan functors must share a codomain")
    A, B = F.dom, G.dom
    objs = [(a, b) for a in A.objects for b in B.objects if F.ob[a] == G.ob[b]]
    arrows = [(m, n) for m in A.arrows for n in B.arrows if F.ar[m] == G.ar[n]]
    src = {(m, n): (A.src[m], B.src[n]) for (m, n) in arrows}
    tgt = {(m, n): (A.tgt[m], B.tgt[n]) for (m, n) in arrows}
    ident = {(a, b): (A.ident[a], B.ident[b]) for (a, b) in objs}
    comp = {}
    for (m, n) in arrows:
        for (m2, n2) in arrows:
            if A.tgt[m] == A.src[m2] and B.tgt[n] == B.src[n2]:
                comp[((m2, n2), (m, n))] = (A.comp[(m2, m)], B.comp[(n2, n)])
    P = FinCategory(f"({A.name}x_{F.cod.name}{B.name})", objs, arrows, src, tgt,
                    ident, comp, validate=False)
    pa = FinFunctor("pr1", P, A, {o: o[0] for o in objs},
                    {m: m[0] for m in arrows}, validate=False)
    pb = FinFunctor("pr2", P, B, {o: o[1] for o in objs},
                    {m: m[1] for m in arrows}, validate=False)
    return P, pa, pb
