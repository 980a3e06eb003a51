"""Adjoint-functor search by universal-property enumeration, and mates.

Adjoints are found pointwise: a left adjoint value at c is an initial object
of the comma c/G, searched by exhausting candidate pairs (d, arrow c -> Gd).
Successful searches return an Adjunction whose triangle identities are
re-certified componentwise; absence returns a NoAdjoint witness naming the
object whose comma has no extremal object.
"""

from __future__ import annotations

from dataclasses import dataclass
from .fincat import (FinFunctor, NatTransform, NotNatural,
                     compose_functors, identity_functor, is_natural_iso)


class Adjunction:
    """left -| right with certified unit/counit triangle identities."""

    __slots__ = ("left", "right", "unit", "counit")

    def __init__(self, left, right, unit, counit, *, validate=True):
        self.left = left      # F: C -> D
        self.right = right    # G: D -> C
        self.unit = unit      # id_C => G.F
        self.counit = counit  # F.G => id_D
        if validate:
            self._validate()

    def _validate(self):
        F, G = self.left, self.right
        C, D = F.dom, G.dom
        for c in C.objects:
            # counit_{Fc} . F(unit_c) = id_{Fc}
            lhs = D.comp[(self.counit.at(F.ob[c]), F.ar[self.unit.at(c)])]
            if lhs != D.ident[F.ob[c]]:
                raise NotNatural(f"left triangle identity fails at {c!r}")
        for d in D.objects:
            # G(counit_d) . unit_{Gd} = id_{Gd}
            lhs = C.comp[(G.ar[self.counit.at(d)], self.unit.at(G.ob[d]))]
            if lhs != C.ident[G.ob[d]]:
                raise NotNatural(f"right triangle identity fails at {d!r}")

    def __repr__(self):
        return f"Adjunction({self.left.name} -| {self.right.name})"


@dataclass
class NoAdjoint:
    """Absence witness: the object whose comma lacks an extremal object."""
    side: str
    at_object: object
    detail: object = None

    def __bool__(self):
        return False


def universal_arrow(G: FinFunctor, c, side):
    """Extremal object of the comma over c, with a uniqueness certificate.

    side='left': initial object of c/G as (d0, eta: c -> G d0);
    side='right': terminal object of G/c as (d0, eps: G d0 -> c).
    Returns None when absent.
    """
    D, C = G.dom, G.cod
    if side == "left":
        cands = [(d, phi) for d in D.objects for phi in C.hom(c, G.ob[d])]
        for (d0, eta) in cands:
            ok = True
            for (d, phi) in cands:
                n = sum(1 for psi in D.hom(d0, d)
                        if C.comp[(G.ar[psi], eta)] == phi)
                if n != 1:
                    ok = False
                    break
            if ok:
                return d0, eta
        return None
    if side == "right":
        cands = [(d, phi) for d in D.objects for phi in C.hom(G.ob[d], c)]
        for (d0, eps) in cands:
            ok = True
            for (d, phi) in cands:
                n = sum(1 for psi in D.hom(d, d0)
                        if C.comp[(eps, G.ar[psi])] == phi)
                if n != 1:
                    ok = False
                    break
            if ok:
                return d0, eps
        return None
    raise ValueError(f"side {side!r}")


def find_adjoint(G: FinFunctor, side):
    """Search a left/right adjoint of G; Adjunction or NoAdjoint(witness).

    The candidate scan is ordered, so among isomorphic extremal objects the
    lexicographically least is always chosen.
    """
    D, C = G.dom, G.cod
    if side == "left":
        ob, unit_comp = {}, {}
        for c in C.objects:
            ua = universal_arrow(G, c, "left")
            if ua is None:
                return NoAdjoint("left", c)
            ob[c], unit_comp[c] = ua
        ar = {}
        for f in C.arrows:
            c, c2 = C.src[f], C.tgt[f]
            want = C.comp[(unit_comp[c2], f)]
            psis = [psi for psi in D.hom(ob[c], ob[c2])
                    if C.comp[(G.ar[psi], unit_comp[c])] == want]
            ar[f] = psis[0]
        F = FinFunctor(f"L({G.name})", C, D, ob, ar)
        unit = NatTransform(f"unit({G.name})", identity_functor(C),
                            compose_functors(G, F), unit_comp)
        counit_comp = {}
        for d in D.objects:
            gd = G.ob[d]
            want = C.ident[gd]
            psis = [psi for psi in D.hom(ob[gd], d)
                    if C.comp[(G.ar[psi], unit_comp[gd])] == want]
            counit_comp[d] = psis[0]
        counit = NatTransform(f"counit({G.name})", compose_functors(F, G),
                              identity_functor(D), counit_comp)
        return Adjunction(F, G, unit, counit)
    if side == "right":
        ob, counit_comp = {}, {}
        for c in C.objects:
            ua = universal_arrow(G, c, "right")
            if ua is None:
                return NoAdjoint("right", c)
            ob[c], counit_comp[c] = ua
        ar = {}
        for f in C.arrows:
            c, c2 = C.src[f], C.tgt[f]
            want = C.comp[(f, counit_comp[c])]
            psis = [psi for psi in D.hom(ob[c], ob[c2])
                    if C.comp[(counit_comp[c2], G.ar[psi])] == want]
            ar[f] = psis[0]
        R = FinFunctor(f"R({G.name})", C, D, ob, ar)
        counit = NatTransform(f"counit({G.name})", compose_functors(G, R),
                              identity_functor(C), counit_comp)
        unit_comp = {}
        for d in D.objects:
            gd = G.ob[d]
            want = G.ar[D.ident[d]]
            psis = [psi for psi in D.hom(d, ob[gd])
                    if C.comp[(counit_comp[gd], G.ar[psi])] == want]
            unit_comp[d] = psis[0]
        unit = NatTransform(f"unit({G.name})", identity_functor(D),
                            compose_functors(R, G), unit_comp)
        return Adjunction(G, R, unit, counit)
    raise ValueError(f"side {side!r}")


def natural_iso_between(F: FinFunctor, G: FinFunctor):
    """A natural isomorphism F => G, or None.

    Used to certify uniqueness of adjoints: two searches for the same side
    give functors related by such an iso.
    """
    if F.dom != G.dom or F.cod != G.cod:
        return None
    C, D = F.dom, F.cod

    def backtrack(objs, comp):
        if not objs:
            return dict(comp)
        x, rest = objs[0], objs[1:]
        for a in D.hom(F.ob[x], G.ob[x]):
            if not D.is_iso(a):
                continue
            comp[x] = a
            ok = all(D.comp[(comp[C.tgt[f]], F.ar[f])] ==
                     D.comp[(G.ar[f], comp[C.src[f]])]
                     for f in C.arrows
                     if C.src[f] in comp and C.tgt[f] in comp)
            if ok:
                res = backtrack(rest, comp)
                if res is not None:
                    return res
            del comp[x]
        return None

    comps = backtrack(list(C.objects), {})
    if comps is None:
        return None
    return NatTransform(f"{F.name}~{G.name}", F, G, comps)


class FunctorSquare:
    """A square H.G1 = G2.K of functors, commuting up to a given iso.

    G1: A -> B, H: B -> D, K: A -> C, G2: C -> D; ``theta`` is a natural
    isomorphism H.G1 => G2.K (identity components when the square commutes
    strictly, which is the common case here).
    """

    __slots__ = ("G1", "H", "K", "G2", "theta")

    def __init__(self, G1, H, K, G2, theta=None):
        if G1.dom != K.dom or H.cod != G2.cod:
            raise NotNatural("square corners do not match")
        if G1.cod != H.dom or K.cod != G2.dom:
            raise NotNatural("square edges do not compose")
        self.G1, self.H, self.K, self.G2 = G1, H, K, G2
        hg1 = compose_functors(H, G1)
        g2k = compose_functors(G2, K)
        if theta is None:
            if hg1._key() != g2k._key():
                raise NotNatural("square does not commute strictly and no iso given")
            theta = NatTransform("theta", hg1, g2k,
                                 {x: H.cod.ident[hg1.ob[x]] for x in G1.dom.objects},
                                 validate=False)
        else:
            if theta.source._key() != hg1._key() or theta.target._key() != g2k._key():
                raise NotNatural("theta does not compare the two square composites")
            ok, bad = is_natural_iso(theta)
            if not ok:
                raise NotNatural(f"theta not invertible at {bad!r}")
        self.theta = theta


@dataclass
class MateReport:
    """The canonical mate of a square, with its invertibility verdict."""
    square: FunctorSquare
    mate: NatTransform
    invertible: bool
    failing_component: object = None


def mate(square: FunctorSquare, adj1, adj2, side):
    """Canonical mate transformation across a commuting square.

    side='left' with F1 -| G1 (adj1) and F2 -| G2 (adj2) yields
    F2.H => K.F1.  side='right' with G1 -| R1 (adj1) and G2 -| R2 (adj2)
    yields K.R1 => R2.H.  Invertibility is decided componentwise; the first
    non-invertible component is reported.
    """
    G1, H, K, G2, theta = square.G1, square.H, square.K, square.G2, square.theta
    B = G1.cod          # components are indexed by objects of B
    Ccat = K.cod        # mate components live in C
    Dcat = H.cod
    if side == "left":
        F1, F2 = adj1.left, adj2.left
        if adj1.right != G1 or adj2.right != G2:
            raise NotNatural("adjunctions do not attach to the square edges")
        comp = {}
        for b in B.objects:
            f1b = F1.ob[b]
            eta = adj1.unit.at(b)                              # b -> G1 F1 b
            phi = Dcat.comp[(theta.at(f1b), H.ar[eta])]        # H b -> G2 K F1 b
            kf1b = K.ob[f1b]
            comp[b] = Ccat.comp[(adj2.counit.at(kf1b), F2.ar[phi])]
        m = NatTransform("mate", compose_functors(F2, H),
                         compose_functors(K, F1), comp)
    elif side == "right":
        R1, R2 = adj1.right, adj2.right
        if adj1.left != G1 or adj2.left != G2:
            raise NotNatural("adjunctions do not attach to the square edges")
        theta_inv = {x: Dcat.inverse(theta.at(x)) for x in G1.dom.objects}
        comp = {}
        for b in B.objects:
            r1b = R1.ob[b]
            eps = adj1.counit.at(b)                            # G1 R1 b -> b
            psi = Dcat.comp[(H.ar[eps], theta_inv[r1b])]       # G2 K R1 b -> H b
            kr1b = K.ob[r1b]
            comp[b] = Ccat.comp[(R2.ar[psi], adj2.unit.at(kr1b))]
        m = NatTransform("mate", compose_functors(K, R1),
                         compose_functors(R2, H), comp)
    else:
        raise ValueError(f"side {side!r}")
    ok, bad = is_natural_iso(m)
    return MateReport(square, m, ok, bad)
