"""Cat-valued diagrams and the four flavors of natural transformation.

A CatDiagram assigns a FinCat to every object of a finite 2-category, a
Functor to every 1-cell and a NatTransf to every 2-cell; pseudofunctors
additionally carry invertible structure cells for identities and
composites.  Transformations between diagrams carry a component functor
per object and a structural natural transformation per 1-cell, directed
``Q(f)∘θ_A ⇒ θ_B∘P(f)``, and are classified by flavor:

    s      every structural cell is an identity
    p      every structural cell is invertible
    sigma  structural cells at marked 1-cells are invertible
    l      no invertibility required

Hom categories of a given flavor are produced by exhaustive enumeration:
components first, then structural cells, pruning with the per-2-cell
axiom before the composition axiom.  Enumeration order is deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .config import Meter
from .errors import PreconditionFailed, ValidationError
from .fincat import (FinCat, Functor, FunctorCategory, NatTransf,
                     ValidationReport, compose_functors, enumerate_functors,
                     enumerate_nat_transfs, functor_category_full,
                     identity_functor, invert_nat, mk_fincat, nat_is_identity,
                     nat_is_invertible, validate_functor, validate_nat_transf,
                     vcomp_nat, whisker_functor_nat, whisker_nat_functor)
from .two_cat import Fin2Cat, WideSub, pair_name, two_cat_product


# ---------------------------------------------------------------------------
# Strict 2-functors between finite 2-categories


@dataclass(frozen=True)
class TwoFunctor:
    source: Fin2Cat
    target: Fin2Cat
    obj_map: dict
    map1: dict  # 1-cell -> 1-cell
    map2: dict  # 2-cell -> 2-cell


def validate_twofunctor(F: TwoFunctor) -> ValidationReport:
    rep = ValidationReport("TwoFunctor")
    a, b = F.source, F.target
    for A in a.objects:
        if F.obj_map.get(A) not in b.objects:
            rep.add("obj-map", (A,), f"object {A} not mapped")
    for f in a.all_one_cells():
        g = F.map1.get(f)
        if g is None or g not in b._cell1_home:
            rep.add("map1", (f,), f"1-cell {f} not mapped")
            continue
        if b._cell1_home[g] != (F.obj_map[a.src1(f)], F.obj_map[a.tgt1(f)]):
            rep.add("map1-typing", (f, g), f"image of {f} mistyped")
    for x in a.all_two_cells():
        y = F.map2.get(x)
        if y is None or y not in b._cell2_home:
            rep.add("map2", (x,), f"2-cell {x} not mapped")
            continue
        if b.src2(y) != F.map1[a.src2(x)] or b.tgt2(y) != F.map1[a.tgt2(x)]:
            rep.add("map2-typing", (x, y), f"image of {x} mistyped")
    if not rep.ok:
        return rep
    for A in a.objects:
        if F.map1[a.id1[A]] != b.id1[F.obj_map[A]]:
            rep.add("id1", (A,), "identity 1-cell not preserved")
    for f in a.all_one_cells():
        if F.map2[a.id2(f)] != b.id2(F.map1[f]):
            rep.add("id2", (f,), "identity 2-cell not preserved")
    for (g, f), h in a.hcomp1.items():
        if b.hcomp1[(F.map1[g], F.map1[f])] != F.map1[h]:
            rep.add("hcomp1", (g, f), "1-cell composition not preserved")
    for (y, x), z in a.hcomp2.items():
        if b.hcomp2[(F.map2[y], F.map2[x])] != F.map2[z]:
            rep.add("hcomp2", (y, x), "2-cell horizontal composition not preserved")
    for pair, h in a.hom.items():
        for (q, p), r in h.compose.items():
            tp = a._cell2_home[p]
            if F.target.vcomp(F.map2[q], F.map2[p]) != F.map2[r]:
                rep.add("vcomp", (q, p), "vertical composition not preserved")
    return rep


def identity_twofunctor(a: Fin2Cat) -> TwoFunctor:
    return TwoFunctor(a, a, {A: A for A in a.objects},
                      {f: f for f in a.all_one_cells()},
                      {x: x for x in a.all_two_cells()})


def compose_twofunctors(G: TwoFunctor, F: TwoFunctor) -> TwoFunctor:
    return TwoFunctor(F.source, G.target,
                      {A: G.obj_map[B] for A, B in F.obj_map.items()},
                      {f: G.map1[g] for f, g in F.map1.items()},
                      {x: G.map2[y] for x, y in F.map2.items()})


# ---------------------------------------------------------------------------
# Cat-valued diagrams


@dataclass(frozen=True)
class CatDiagram:
    source: Fin2Cat
    on_obj: dict  # object -> FinCat
    on_1: dict  # 1-cell -> Functor
    on_2: dict  # 2-cell -> NatTransf
    kind: str = "strict"  # strict | pseudo
    alpha_obj: dict | None = None  # object -> invertible NatTransf id ⇒ P(id_A)
    alpha_comp: dict | None = None  # (f, g) -> invertible NatTransf P(g)P(f) ⇒ P(gf)

    @property
    def is_pseudo(self) -> bool:
        return self.kind == "pseudo"

    def cat(self, A: str) -> FinCat:
        return self.on_obj[A]

    def functor(self, f: str) -> Functor:
        return self.on_1[f]

    def transf(self, x: str) -> NatTransf:
        return self.on_2[x]

    def alpha_at(self, A: str) -> NatTransf:
        if self.is_pseudo:
            return self.alpha_obj[A]
        P = self.on_1[self.source.id1[A]]
        return _identity_transf_between(identity_functor(self.on_obj[A]), P)

    def alpha_pair(self, f: str, g: str) -> NatTransf:
        """The structure cell P(g)P(f) ⇒ P(gf); identity when strict."""
        if self.is_pseudo:
            return self.alpha_comp[(f, g)]
        comp = compose_functors(self.on_1[g], self.on_1[f])
        return _identity_transf_between(comp, self.on_1[self.source.hcomp1[(g, f)]])


def _identity_transf_between(F: Functor, G: Functor) -> NatTransf:
    # identity-shaped transformation between pointwise-equal functors
    d = F.target
    return NatTransf(F, G, {x: d.identity[F.obj_map[x]] for x in F.source.objects})


def constant_diagram(base: Fin2Cat, c: FinCat) -> CatDiagram:
    idf = identity_functor(c)
    idn = NatTransf(idf, idf, {x: c.identity[x] for x in c.objects})
    return CatDiagram(base, {A: c for A in base.objects},
                      {f: idf for f in base.all_one_cells()},
                      {x: idn for x in base.all_two_cells()})


def compose_diagram(P: CatDiagram, H: TwoFunctor) -> CatDiagram:
    """The diagram P∘H on H's source."""
    if H.target != P.source:
        raise PreconditionFailed("diagram and 2-functor are not composable")
    on_obj = {A: P.on_obj[H.obj_map[A]] for A in H.source.objects}
    on_1 = {f: P.on_1[H.map1[f]] for f in H.source.all_one_cells()}
    on_2 = {x: P.on_2[H.map2[x]] for x in H.source.all_two_cells()}
    if not P.is_pseudo:
        return CatDiagram(H.source, on_obj, on_1, on_2)
    a_obj = {A: P.alpha_obj[H.obj_map[A]] for A in H.source.objects}
    a_comp = {}
    for (g, f) in H.source.hcomp1:
        a_comp[(f, g)] = P.alpha_comp[(H.map1[f], H.map1[g])]
    return CatDiagram(H.source, on_obj, on_1, on_2, "pseudo", a_obj, a_comp)


def validate_diagram(P: CatDiagram) -> ValidationReport:
    """Structural validation plus the strict laws or the pseudo axioms.

    The pseudo axioms checked are the unit and associativity coherence
    of the structure cells (LF0, LF1), their naturality, and the
    compatibility of the action on 2-cells with horizontal composition.
    """
    rep = ValidationReport("CatDiagram")
    base = P.source
    for A in base.objects:
        if A not in P.on_obj:
            rep.add("on-obj", (A,), f"object {A} not assigned")
    for f in base.all_one_cells():
        F = P.on_1.get(f)
        if F is None:
            rep.add("on-1", (f,), f"1-cell {f} not assigned")
            continue
        if F.source != P.on_obj[base.src1(f)] or F.target != P.on_obj[base.tgt1(f)]:
            rep.add("on-1-typing", (f,), f"functor at {f} mistyped")
        elif not validate_functor(F).ok:
            rep.add("on-1-functor", (f,), f"assignment at {f} is not a functor")
    for x in base.all_two_cells():
        n = P.on_2.get(x)
        if n is None:
            rep.add("on-2", (x,), f"2-cell {x} not assigned")
            continue
        if n.source.key() != P.on_1[base.src2(x)].key() or \
                n.target.key() != P.on_1[base.tgt2(x)].key():
            rep.add("on-2-typing", (x,), f"transformation at {x} mistyped")
        elif not validate_nat_transf(n).ok:
            rep.add("on-2-natural", (x,), f"assignment at {x} is not natural")
    if not rep.ok:
        return rep

    # vertical functoriality holds for both kinds
    for pair, h in base.hom.items():
        for f in h.objects:
            if P.on_2[base.id2(f)].components != \
                    _identity_transf_between(P.on_1[f], P.on_1[f]).components:
                rep.add("vert-id", (f,), f"identity 2-cell at {f} not sent to identity")
        for (q, p), r in h.compose.items():
            got = vcomp_nat(P.on_2[q], P.on_2[p])
            if got.components != P.on_2[r].components:
                rep.add("vert-comp", (q, p), "vertical composition not preserved")

    if not P.is_pseudo:
        for A in base.objects:
            idA = base.id1[A]
            if P.on_1[idA].key() != identity_functor(P.on_obj[A]).key():
                rep.add("strict-id", (A,), f"identity 1-cell of {A} not the identity functor")
        for (g, f), h in base.hcomp1.items():
            if compose_functors(P.on_1[g], P.on_1[f]).key() != P.on_1[h].key():
                rep.add("strict-comp", (g, f), f"P({g}∘{f}) != P({g})P({f})")
        for (y, x), z in base.hcomp2.items():
            want = _hcomp_transf(P.on_2[y], P.on_2[x])
            if want.components != P.on_2[z].components:
                rep.add("strict-hcomp2", (y, x), "horizontal 2-cell action not preserved")
        return rep

    # pseudo axioms
    if P.alpha_obj is None or P.alpha_comp is None:
        rep.add("alpha-missing", (), "pseudo diagram lacks structure cells")
        return rep
    for A in base.objects:
        n = P.alpha_obj.get(A)
        want_src = identity_functor(P.on_obj[A])
        want_tgt = P.on_1[base.id1[A]]
        if n is None or n.source.key() != want_src.key() or \
                n.target.key() != want_tgt.key() or not validate_nat_transf(n).ok:
            rep.add("alpha-typing", (A,), f"unit cell at {A} mistyped")
        elif not nat_is_invertible(n):
            rep.add("alpha-obj", (A,), f"unit cell at {A} not invertible")
    for (g, f) in base.hcomp1:
        n = P.alpha_comp.get((f, g))
        want_src = compose_functors(P.on_1[g], P.on_1[f])
        want_tgt = P.on_1[base.hcomp1[(g, f)]]
        if n is None or n.source.key() != want_src.key() or \
                n.target.key() != want_tgt.key() or not validate_nat_transf(n).ok:
            rep.add("alpha-typing", (f, g), f"composition cell at ({f},{g}) mistyped")
        elif not nat_is_invertible(n):
            rep.add("alpha-comp", (f, g), "composition cell not invertible")
    if not rep.ok:
        return rep
    cells1 = base.all_one_cells()
    # LF0: unit coherence
    for f in cells1:
        A, B = base.src1(f), base.tgt1(f)
        Ff = P.on_1[f]
        lhs = vcomp_nat(P.alpha_comp[(f, base.id1[B])],
                        whisker_nat_functor(P.alpha_obj[B], Ff))
        if not nat_is_identity(lhs):
            rep.add("LF0", (f,), f"unit coherence fails on the left at {f}")
        rhs = vcomp_nat(P.alpha_comp[(base.id1[A], f)],
                        whisker_functor_nat(Ff, P.alpha_obj[A]))
        if not nat_is_identity(rhs):
            rep.add("LF0", (f,), f"unit coherence fails on the right at {f}")
    # LF1: associativity coherence
    for h in cells1:
        for g in cells1:
            if base.src1(h) != base.tgt1(g):
                continue
            for f in cells1:
                if base.src1(g) != base.tgt1(f):
                    continue
                gf = base.hcomp1[(g, f)]
                hg = base.hcomp1[(h, g)]
                lhs = vcomp_nat(P.alpha_comp[(gf, h)],
                                whisker_functor_nat(P.on_1[h], P.alpha_comp[(f, g)]))
                rhs = vcomp_nat(P.alpha_comp[(f, hg)],
                                whisker_nat_functor(P.alpha_comp[(g, h)], P.on_1[f]))
                if lhs.components != rhs.components:
                    rep.add("LF1", (f, g, h), "associativity coherence fails")
    # naturality of the composition cells in both arguments
    for (y, x), z in base.hcomp2.items():
        f, g = base.src2(x), base.src2(y)
        f2, g2 = base.tgt2(x), base.tgt2(y)
        lhs = vcomp_nat(P.alpha_comp[(f2, g2)], _hcomp_transf(P.on_2[y], P.on_2[x]))
        rhs = vcomp_nat(P.on_2[base.hcomp2[(y, x)]], P.alpha_comp[(f, g)])
        if lhs.components != rhs.components:
            rep.add("alpha-natural", (y, x), "structure cells not natural")
    return rep


def _hcomp_transf(b: NatTransf, a: NatTransf) -> NatTransf:
    """Horizontal composite of transformation images (a on the inside)."""
    return vcomp_nat(whisker_nat_functor(b, a.target), whisker_functor_nat(b.source, a))


def require_valid_diagram(P: CatDiagram, what: str = "diagram") -> None:
    rep = validate_diagram(P)
    if not rep.ok:
        raise ValidationError(f"invalid {what}: {rep.violations[0].detail}")


def reinterpret_as_pseudo(P: CatDiagram) -> CatDiagram:
    """A strict diagram with identity structure cells."""
    if P.is_pseudo:
        return P
    base = P.source
    a_obj = {A: P.alpha_at(A) for A in base.objects}
    a_comp = {(f, g): P.alpha_pair(f, g) for (g, f) in base.hcomp1}
    return CatDiagram(base, P.on_obj, P.on_1, P.on_2, "pseudo", a_obj, a_comp)


# ---------------------------------------------------------------------------
# Flavors


@dataclass(frozen=True)
class Flavor:
    kind: str  # 's' | 'p' | 'sigma' | 'l'
    marked: frozenset = frozenset()

    def requires_identity(self) -> bool:
        return self.kind == "s"

    def requires_invertible(self, f: str) -> bool:
        if self.kind == "p":
            return True
        if self.kind == "sigma":
            return f in self.marked
        return False

    def label(self) -> str:
        return self.kind if self.kind != "sigma" else f"sigma({len(self.marked)})"


STRICT = Flavor("s")
PSEUDO = Flavor("p")
LAX = Flavor("l")


def sigma_flavor(marked) -> Flavor:
    if isinstance(marked, WideSub):
        marked = marked.arrows
    return Flavor("sigma", frozenset(marked))


FLAVOR_ORDER = {"s": 0, "p": 1, "sigma": 2, "l": 3}


# ---------------------------------------------------------------------------
# Transformations and modifications


@dataclass(frozen=True)
class Transformation:
    source: CatDiagram
    target: CatDiagram
    components: dict  # object -> Functor
    structural: dict  # 1-cell -> NatTransf  Q(f)θ_A ⇒ θ_B P(f)
    flavor: Flavor

    def key(self) -> tuple:
        return (tuple((A, self.components[A].key()) for A in sorted(self.components)),
                tuple((f, self.structural[f].key()) for f in sorted(self.structural)))


@dataclass(frozen=True)
class Modification:
    source: Transformation
    target: Transformation
    components: dict  # object -> NatTransf

    def key(self) -> tuple:
        return tuple((A, self.components[A].key()) for A in sorted(self.components))


def identity_transformation(P: CatDiagram, flavor: Flavor | None = None) -> Transformation:
    base = P.source
    comps = {A: identity_functor(P.on_obj[A]) for A in base.objects}
    structural = {}
    for f in base.all_one_cells():
        F = P.on_1[f]
        structural[f] = _identity_transf_between(F, F)
    return Transformation(P, P, comps, structural, flavor or STRICT)


def compose_transformations(t2: Transformation, t1: Transformation) -> Transformation:
    """t2 after t1; structural cells paste in the usual way."""
    base = t1.source.source
    comps = {A: compose_functors(t2.components[A], t1.components[A])
             for A in base.objects}
    structural = {}
    for f in base.all_one_cells():
        A, B = base.src1(f), base.tgt1(f)
        first = whisker_nat_functor(t2.structural[f], t1.components[A])
        second = whisker_functor_nat(t2.components[B], t1.structural[f])
        structural[f] = vcomp_nat(second, first)
    kind = max(t1.flavor.kind, t2.flavor.kind, key=lambda k: FLAVOR_ORDER[k])
    marked = t1.flavor.marked & t2.flavor.marked if kind == "sigma" else frozenset()
    return Transformation(t1.source, t2.target, comps, structural, Flavor(kind, marked))


def check_transformation(t: Transformation) -> ValidationReport:
    """Axiom scan for the declared flavor.

    Strict diagrams use the plain axioms; pseudo diagrams use the forms
    with the structure cells spliced in.  Violations name the axiom and
    the offending cell.
    """
    rep = ValidationReport("Transformation")
    P, Q = t.source, t.target
    base = P.source
    if Q.source != base:
        rep.add("base-mismatch", (), "source and target live over different bases")
        return rep
    for A in base.objects:
        th = t.components.get(A)
        if th is None:
            rep.add("component-missing", (A,), f"no component at {A}")
            continue
        if th.source != P.on_obj[A] or th.target != Q.on_obj[A]:
            rep.add("component-typing", (A,), f"component at {A} mistyped")
        elif not validate_functor(th).ok:
            rep.add("component-functor", (A,), f"component at {A} is not a functor")
    if not rep.ok:
        return rep
    for f in base.all_one_cells():
        A, B = base.src1(f), base.tgt1(f)
        n = t.structural.get(f)
        if n is None:
            rep.add("structural-missing", (f,), f"no structural cell at {f}")
            continue
        want_src = compose_functors(Q.on_1[f], t.components[A])
        want_tgt = compose_functors(t.components[B], P.on_1[f])
        if n.source.key() != want_src.key() or n.target.key() != want_tgt.key():
            rep.add("structural-typing", (f,), f"structural cell at {f} mistyped")
        elif not validate_nat_transf(n).ok:
            rep.add("structural-natural", (f,), f"structural cell at {f} not natural")
    if not rep.ok:
        return rep

    # flavor conditions
    for f in base.all_one_cells():
        if t.flavor.requires_identity() and not nat_is_identity(t.structural[f]):
            rep.add("invertibility", (f,), f"strict flavor needs identity cell at {f}")
        elif t.flavor.requires_invertible(f) and not nat_is_invertible(t.structural[f]):
            rep.add("invertibility", (f,), f"structural cell at {f} must be invertible")

    # LN0
    for A in base.objects:
        idA = base.id1[A]
        th = t.components[A]
        lhs = vcomp_nat(t.structural[idA], whisker_nat_functor(Q.alpha_at(A), th))
        rhs = whisker_functor_nat(th, P.alpha_at(A))
        if lhs.components != rhs.components:
            rep.add("LN0", (A,), f"identity coherence fails at {A}")
    # LN2, per design the cheaper per-2-cell axiom, before LN1
    for x in base.all_two_cells():
        f, g = base.src2(x), base.tgt2(x)
        A, B = base.src1(f), base.tgt1(f)
        lhs = vcomp_nat(whisker_functor_nat(t.components[B], P.on_2[x]),
                        t.structural[f])
        rhs = vcomp_nat(t.structural[g],
                        whisker_nat_functor(Q.on_2[x], t.components[A]))
        if lhs.components != rhs.components:
            rep.add("LN2", (x,), f"2-cell compatibility fails at {x}")
    # LN1
    for (g, f), gf in base.hcomp1.items():
        A = base.src1(f)
        C = base.tgt1(g)
        lhs = vcomp_nat(t.structural[gf],
                        whisker_nat_functor(Q.alpha_pair(f, g), t.components[A]))
        rhs = vcomp_nat(
            whisker_functor_nat(t.components[C], P.alpha_pair(f, g)),
            vcomp_nat(whisker_nat_functor(t.structural[g], P.on_1[f]),
                      whisker_functor_nat(Q.on_1[g], t.structural[f])))
        if lhs.components != rhs.components:
            rep.add("LN1", (gf,), f"composition coherence fails at ({g},{f})")
    return rep


def check_modification(m: Modification) -> ValidationReport:
    rep = ValidationReport("Modification")
    t, t2 = m.source, m.target
    P, Q = t.source, t.target
    base = P.source
    for A in base.objects:
        n = m.components.get(A)
        if n is None:
            rep.add("component-missing", (A,), f"no component at {A}")
            continue
        if n.source.key() != t.components[A].key() or \
                n.target.key() != t2.components[A].key():
            rep.add("component-typing", (A,), f"component at {A} mistyped")
        elif not validate_nat_transf(n).ok:
            rep.add("component-natural", (A,), f"component at {A} not natural")
    if not rep.ok:
        return rep
    for f in base.all_one_cells():
        A, B = base.src1(f), base.tgt1(f)
        lhs = vcomp_nat(t2.structural[f],
                        whisker_functor_nat(Q.on_1[f], m.components[A]))
        rhs = vcomp_nat(whisker_nat_functor(m.components[B], P.on_1[f]),
                        t.structural[f])
        if lhs.components != rhs.components:
            rep.add("LNM", (f,), f"modification square fails at {f}")
    return rep


# ---------------------------------------------------------------------------
# Enumeration of Hom categories


@dataclass
class HomCategory:
    cat: FinCat
    transfs: dict  # object name -> Transformation
    mods: dict  # arrow name -> Modification
    flavor: Flavor

    def name_of_transf(self, t: Transformation) -> str:
        k = t.key()
        for name, u in self.transfs.items():
            if u.key() == k:
                return name
        raise KeyError("transformation is not an object of this Hom category")


def enumerate_transformations(P: CatDiagram, Q: CatDiagram, flavor: Flavor,
                              meter: Meter | None = None) -> list[Transformation]:
    meter = meter or Meter()
    base = P.source
    if flavor.requires_identity() and (P.is_pseudo or Q.is_pseudo):
        raise PreconditionFailed("strict flavor requires strict diagrams")
    objs = sorted(base.objects)
    comp_pools = [enumerate_functors(P.on_obj[A], Q.on_obj[A], meter) for A in objs]
    if any(not pool for pool in comp_pools):
        return []
    non_id = [f for f in base.all_one_cells()
              if f not in set(base.id1.values())]
    out = []
    for combo in itertools.product(*comp_pools):
        meter.tick()
        comps = dict(zip(objs, combo))
        structural = {}
        ok = True
        # identity 1-cells are forced by LN0
        for A in objs:
            idA = base.id1[A]
            rhs = whisker_functor_nat(comps[A], P.alpha_at(A))
            pre = whisker_nat_functor(Q.alpha_at(A), comps[A])
            forced = vcomp_nat(rhs, invert_nat(pre))
            structural[idA] = NatTransf(
                compose_functors(Q.on_1[idA], comps[A]),
                compose_functors(comps[A], P.on_1[idA]),
                forced.components)
            if flavor.requires_identity() and not nat_is_identity(structural[idA]):
                ok = False
                break
        if not ok:
            continue
        pools = []
        for f in non_id:
            A, B = base.src1(f), base.tgt1(f)
            src = compose_functors(Q.on_1[f], comps[A])
            tgt = compose_functors(comps[B], P.on_1[f])
            if flavor.requires_identity():
                if src.key() != tgt.key():
                    pool = []
                else:
                    pool = [_identity_transf_between(src, tgt)]
            else:
                pool = enumerate_nat_transfs(src, tgt, meter)
                if flavor.requires_invertible(f):
                    pool = [n for n in pool if nat_is_invertible(n)]
            if not pool:
                ok = False
                break
            pools.append(pool)
        if not ok:
            continue
        for cells in itertools.product(*pools):
            meter.tick()
            st = dict(structural)
            st.update(dict(zip(non_id, cells)))
            t = Transformation(P, Q, comps, st, flavor)
            if _axioms_hold(t):
                out.append(t)
    out.sort(key=lambda t: t.key())
    return out


def _axioms_hold(t: Transformation) -> bool:
    P, Q = t.source, t.target
    base = P.source
    # LN2 first: per 2-cell, no composite lookups
    for x in base.all_two_cells():
        f, g = base.src2(x), base.tgt2(x)
        A, B = base.src1(f), base.tgt1(f)
        lhs = vcomp_nat(whisker_functor_nat(t.components[B], P.on_2[x]),
                        t.structural[f])
        rhs = vcomp_nat(t.structural[g],
                        whisker_nat_functor(Q.on_2[x], t.components[A]))
        if lhs.components != rhs.components:
            return False
    for (g, f), gf in base.hcomp1.items():
        A, C = base.src1(f), base.tgt1(g)
        lhs = vcomp_nat(t.structural[gf],
                        whisker_nat_functor(Q.alpha_pair(f, g), t.components[A]))
        rhs = vcomp_nat(
            whisker_functor_nat(t.components[C], P.alpha_pair(f, g)),
            vcomp_nat(whisker_nat_functor(t.structural[g], P.on_1[f]),
                      whisker_functor_nat(Q.on_1[g], t.structural[f])))
        if lhs.components != rhs.components:
            return False
    return True


def enumerate_modifications(t1: Transformation, t2: Transformation,
                            meter: Meter | None = None) -> list[Modification]:
    meter = meter or Meter()
    base = t1.source.source
    objs = sorted(base.objects)
    pools = [enumerate_nat_transfs(t1.components[A], t2.components[A], meter)
             for A in objs]
    if any(not p for p in pools):
        return []
    out = []
    for combo in itertools.product(*pools):
        meter.tick()
        m = Modification(t1, t2, dict(zip(objs, combo)))
        if check_modification(m).ok:
            out.append(m)
    out.sort(key=lambda m: m.key())
    return out


def hom_eps(P: CatDiagram, Q: CatDiagram, flavor: Flavor,
            meter: Meter | None = None) -> HomCategory:
    """The category of flavor-constrained transformations P ⇒ Q.

    Objects are the enumerated transformations, arrows all modifications
    between them, composition componentwise.
    """
    meter = meter or Meter()
    ts = enumerate_transformations(P, Q, flavor, meter)
    tname = {i: f"t{i}" for i in range(len(ts))}
    transfs = {tname[i]: ts[i] for i in range(len(ts))}
    mods = {}
    arrows, identity, compose = {}, {}, {}
    name_of = {}
    counter = 0
    all_mods = {}
    for i, t1 in enumerate(ts):
        for j, t2 in enumerate(ts):
            all_mods[(i, j)] = enumerate_modifications(t1, t2, meter)
    for (i, j), ms in sorted(all_mods.items()):
        for m in ms:
            if i == j and all(nat_is_identity(n) for n in m.components.values()):
                name = f"1_{tname[i]}"
                identity[tname[i]] = name
            else:
                name = f"m{counter}"
                counter += 1
            arrows[name] = (tname[i], tname[j])
            mods[name] = m
            name_of[(i, j, m.key())] = name
    for (i, j), ms in sorted(all_mods.items()):
        for (j2, k), ms2 in sorted(all_mods.items()):
            if j2 != j:
                continue
            for m1 in ms:
                for m2 in ms2:
                    meter.tick()
                    comp = {A: vcomp_nat(m2.components[A], m1.components[A])
                            for A in m1.components}
                    ckey = tuple((A, comp[A].key()) for A in sorted(comp))
                    compose[(name_of[(j, k, m2.key())], name_of[(i, j, m1.key())])] = \
                        name_of[(i, k, ckey)]
    cat = mk_fincat([tname[i] for i in range(len(ts))], arrows, identity, compose)
    return HomCategory(cat, transfs, mods, flavor)


@dataclass
class InclusionChain:
    homs: dict  # 's'|'p'|'sigma'|'l' -> HomCategory
    functors: dict  # ('s','p') etc -> Functor
    report: ValidationReport


def flavor_inclusions(P: CatDiagram, Q: CatDiagram, sigma: WideSub,
                      meter: Meter | None = None) -> InclusionChain:
    """The chain of full and faithful inclusions s ⊆ p ⊆ sigma ⊆ l.

    Each inclusion is verified object-by-object on the enumerations and
    returned as an injective-on-objects functor.
    """
    meter = meter or Meter()
    rep = ValidationReport("flavor-inclusions")
    flavors = {"s": STRICT, "p": PSEUDO, "sigma": sigma_flavor(sigma), "l": LAX}
    homs = {k: hom_eps(P, Q, fl, meter) for k, fl in flavors.items()}
    keysets = {k: {t.key(): name for name, t in homs[k].transfs.items()}
               for k in flavors}

    def strip(key):
        return key  # transformation keys ignore the flavor tag already

    functors = {}
    for a, b in (("s", "p"), ("p", "sigma"), ("sigma", "l")):
        obj_map, arr_map = {}, {}
        for name, t in homs[a].transfs.items():
            k = strip(t.key())
            if k not in keysets[b]:
                rep.add("inclusion", (a, b, name),
                        f"{a}-transformation {name} missing from {b}-enumeration")
                continue
            obj_map[name] = keysets[b][k]
        if not rep.ok:
            continue
        ca, cb = homs[a].cat, homs[b].cat
        mods_b = {(cb.src(n), cb.tgt(n), homs[b].mods[n].key()): n
                  for n in homs[b].mods}
        for n in ca.arrow_names():
            m = homs[a].mods[n]
            tgt_key = (obj_map[ca.src(n)], obj_map[ca.tgt(n)], m.key())
            if tgt_key not in mods_b:
                rep.add("inclusion-arrow", (a, b, n),
                        f"{a}-modification {n} missing from {b}-enumeration")
                continue
            arr_map[n] = mods_b[tgt_key]
        if rep.ok:
            F = Functor(ca, cb, obj_map, arr_map)
            functors[(a, b)] = F
            if len(set(obj_map.values())) != len(obj_map):
                rep.add("inclusion-injective", (a, b), "inclusion not injective")
            # local fullness and faithfulness
            for x in ca.objects:
                for y in ca.objects:
                    image = {arr_map[v] for v in ca.hom(x, y)}
                    target = set(cb.hom(obj_map[x], obj_map[y]))
                    if len(image) != len(ca.hom(x, y)) or image != target:
                        rep.add("inclusion-ff", (a, b, x, y),
                                "inclusion not locally full and faithful")
    return InclusionChain(homs, functors, rep)


# ---------------------------------------------------------------------------
# Dicones and ends


@dataclass(frozen=True)
class Dicone:
    """A dicone for a two-sided diagram with a chosen vertex.

    ``diagram`` lives on the product of the base's 1-cell dual with the
    base; components map the vertex into the diagonal values and the
    structural cells relate the two reindexings of every 1-cell.
    """

    base: Fin2Cat
    diagram: CatDiagram
    vertex: FinCat
    components: dict  # object A -> Functor vertex -> T(A,A)
    structural: dict  # 1-cell f -> NatTransf T(A,f)θ_A ⇒ T(f,B)θ_B
    flavor: Flavor

    def key(self) -> tuple:
        return (tuple((A, self.components[A].key()) for A in sorted(self.components)),
                tuple((f, self.structural[f].key()) for f in sorted(self.structural)))


def _t_cell(T: CatDiagram, left: str, right: str) -> Functor:
    return T.on_1[pair_name(left, right)]


def _t_2cell(T: CatDiagram, left: str, right: str) -> NatTransf:
    return T.on_2[pair_name(left, right)]


def check_dicone(d: Dicone) -> ValidationReport:
    """LD0, LD1, LD2 plus the flavor condition, exhaustively."""
    rep = ValidationReport("Dicone")
    base, T = d.base, d.diagram
    for A in base.objects:
        th = d.components.get(A)
        want = T.on_obj[pair_name(A, A)]
        if th is None or th.source != d.vertex or th.target != want:
            rep.add("component-typing", (A,), f"component at {A} mistyped")
        elif not validate_functor(th).ok:
            rep.add("component-functor", (A,), f"component at {A} is not a functor")
    if not rep.ok:
        return rep
    for f in base.all_one_cells():
        A, B = base.src1(f), base.tgt1(f)
        n = d.structural.get(f)
        src = compose_functors(_t_cell(T, base.id1[A], f), d.components[A])
        tgt = compose_functors(_t_cell(T, f, base.id1[B]), d.components[B])
        if n is None or n.source.key() != src.key() or n.target.key() != tgt.key():
            rep.add("structural-typing", (f,), f"structural cell at {f} mistyped")
        elif not validate_nat_transf(n).ok:
            rep.add("structural-natural", (f,), f"structural cell at {f} not natural")
    if not rep.ok:
        return rep
    for f in base.all_one_cells():
        if d.flavor.requires_identity() and not nat_is_identity(d.structural[f]):
            rep.add("invertibility", (f,), f"strict flavor needs identity at {f}")
        elif d.flavor.requires_invertible(f) and not nat_is_invertible(d.structural[f]):
            rep.add("invertibility", (f,), f"cell at {f} must be invertible")
    # LD0
    for A in base.objects:
        if not nat_is_identity(d.structural[base.id1[A]]):
            rep.add("LD0", (A,), f"identity cell at {A} is not the identity")
    # LD2
    for x in base.all_two_cells():
        f, g = base.src2(x), base.tgt2(x)
        A, B = base.src1(f), base.tgt1(f)
        idA2, idB2 = base.id2(base.id1[A]), base.id2(base.id1[B])
        left_act = whisker_nat_functor(_t_2cell(T, x, idB2), d.components[B])
        right_act = whisker_nat_functor(_t_2cell(T, idA2, x), d.components[A])
        lhs = vcomp_nat(left_act, d.structural[f])
        rhs = vcomp_nat(d.structural[g], right_act)
        if lhs.components != rhs.components:
            rep.add("LD2", (x,), f"2-cell compatibility fails at {x}")
    # LD1
    for (g, f), gf in base.hcomp1.items():
        A = base.src1(f)
        C = base.tgt1(g)
        post = whisker_functor_nat(_t_cell(T, f, base.id1[C]), d.structural[g])
        pre = whisker_functor_nat(_t_cell(T, base.id1[A], g), d.structural[f])
        lhs = vcomp_nat(post, pre)
        if lhs.components != d.structural[gf].components:
            rep.add("LD1", (gf,), f"composition coherence fails at ({g},{f})")
    return rep


def check_dicone_morphism(d1: Dicone, d2: Dicone, components: dict) -> ValidationReport:
    """LDM for a family of cells between two dicones with shared vertex."""
    rep = ValidationReport("DiconeMorphism")
    base, T = d1.base, d1.diagram
    for A in base.objects:
        n = components.get(A)
        if n is None or n.source.key() != d1.components[A].key() or \
                n.target.key() != d2.components[A].key():
            rep.add("component-typing", (A,), f"component at {A} mistyped")
        elif not validate_nat_transf(n).ok:
            rep.add("component-natural", (A,), f"component at {A} not natural")
    if not rep.ok:
        return rep
    for f in base.all_one_cells():
        A, B = base.src1(f), base.tgt1(f)
        lhs = vcomp_nat(d2.structural[f],
                        whisker_functor_nat(_t_cell(T, base.id1[A], f), components[A]))
        rhs = vcomp_nat(whisker_functor_nat(_t_cell(T, f, base.id1[B]), components[B]),
                        d1.structural[f])
        if lhs.components != rhs.components:
            rep.add("LDM", (f,), f"morphism square fails at {f}")
    return rep


@dataclass
class EndCategory:
    cat: FinCat
    points: dict  # object name -> (x_assign, phi_assign)
    flavor: Flavor


def end_eps(T: CatDiagram, base: Fin2Cat, flavor: Flavor,
            meter: Meter | None = None) -> EndCategory:
    """The flavor-constrained end of a two-sided strict diagram.

    Realized concretely as the category of vertex-1 dicones: objects are
    families (x_A, phi_f) satisfying the dinaturality axioms, arrows are
    families of cells satisfying the morphism axiom.
    """
    meter = meter or Meter()
    if T.is_pseudo:
        raise PreconditionFailed("ends are implemented for strict diagrams")
    objs = sorted(base.objects)
    diag = {A: T.on_obj[pair_name(A, A)] for A in objs}
    non_id = [f for f in base.all_one_cells() if f not in set(base.id1.values())]
    points = []
    pools = [sorted(diag[A].objects) for A in objs]
    if any(not p for p in pools):
        pass
    for combo in itertools.product(*pools):
        meter.tick()
        xs = dict(zip(objs, combo))
        cell_pools = []
        feasible = True
        for f in non_id:
            A, B = base.src1(f), base.tgt1(f)
            hom_cat = T.on_obj[pair_name(A, B)]
            left = _t_cell(T, base.id1[A], f).obj_map[xs[A]]
            right = _t_cell(T, f, base.id1[B]).obj_map[xs[B]]
            if flavor.requires_identity():
                pool = [hom_cat.identity[left]] if left == right else []
            else:
                pool = hom_cat.hom(left, right)
                if flavor.requires_invertible(f):
                    pool = [a for a in pool if hom_cat.is_iso(a)]
            if not pool:
                feasible = False
                break
            cell_pools.append(pool)
        if not feasible:
            continue
        for cells in itertools.product(*cell_pools):
            meter.tick()
            phis = dict(zip(non_id, cells))
            for A in objs:
                idA = base.id1[A]
                phis[idA] = diag[A].identity[xs[A]]
            if _end_point_ok(T, base, xs, phis, non_id):
                points.append((xs, phis))
    points.sort(key=lambda p: (tuple(sorted(p[0].items())), tuple(sorted(p[1].items()))))
    pname = {i: f"e{i}" for i in range(len(points))}
    arrows, identity, compose = {}, {}, {}
    labels = {}
    counter = 0
    arrow_data = {}
    for i, (xs1, ph1) in enumerate(points):
        for j, (xs2, ph2) in enumerate(points):
            for combo in itertools.product(
                    *[diag[A].hom(xs1[A], xs2[A]) for A in objs]):
                meter.tick()
                xi = dict(zip(objs, combo))
                if not _end_arrow_ok(T, base, ph1, ph2, xi):
                    continue
                if i == j and all(diag[A].is_identity(xi[A]) for A in objs):
                    name = f"1_{pname[i]}"
                    identity[pname[i]] = name
                else:
                    name = f"a{counter}"
                    counter += 1
                arrows[name] = (pname[i], pname[j])
                labels[(i, j, tuple(sorted(xi.items())))] = name
                arrow_data[name] = (i, j, xi)
    for n1, (i, j, xi1) in arrow_data.items():
        for n2, (j2, k, xi2) in arrow_data.items():
            if j2 != j:
                continue
            comp = {A: diag[A].compose[(xi2[A], xi1[A])] for A in objs}
            compose[(n2, n1)] = labels[(i, k, tuple(sorted(comp.items())))]
    cat = mk_fincat([pname[i] for i in range(len(points))], arrows, identity, compose)
    return EndCategory(cat, {pname[i]: points[i] for i in range(len(points))}, flavor)


def _end_point_ok(T, base, xs, phis, non_id) -> bool:
    # LD2 before LD1, mirroring the transformation enumeration
    for x in base.all_two_cells():
        f, g = base.src2(x), base.tgt2(x)
        if base.is_identity_2cell(x) and f == g:
            continue
        A, B = base.src1(f), base.tgt1(f)
        hom_cat = T.on_obj[pair_name(A, B)]
        idA2, idB2 = base.id2(base.id1[A]), base.id2(base.id1[B])
        left = _t_2cell(T, x, idB2).components[xs[B]]
        right = _t_2cell(T, idA2, x).components[xs[A]]
        if hom_cat.compose[(left, phis[f])] != hom_cat.compose[(phis[g], right)]:
            return False
    for (g, f), gf in base.hcomp1.items():
        A = base.src1(f)
        C = base.tgt1(g)
        hom_cat = T.on_obj[pair_name(A, C)]
        post = _t_cell(T, f, base.id1[C]).arr_map[phis[g]]
        pre = _t_cell(T, base.id1[A], g).arr_map[phis[f]]
        if hom_cat.compose[(post, pre)] != phis[gf]:
            return False
    return True


def _end_arrow_ok(T, base, ph1, ph2, xi) -> bool:
    for f in base.all_one_cells():
        A, B = base.src1(f), base.tgt1(f)
        hom_cat = T.on_obj[pair_name(A, B)]
        lhs = hom_cat.compose[(ph2[f], _t_cell(T, base.id1[A], f).arr_map[xi[A]])]
        rhs = hom_cat.compose[(_t_cell(T, f, base.id1[B]).arr_map[xi[B]], ph1[f])]
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# Two-sided diagram builders


def internal_hom_diagram(P: CatDiagram, Q: CatDiagram,
                         meter: Meter | None = None) -> tuple[CatDiagram, Fin2Cat]:
    """The diagram (A,B) ↦ Cat(P A, Q B) on the product of duals.

    Returns the diagram together with its product base.  The end of this
    diagram recovers the Hom category of transformations P ⇒ Q.
    """
    from .two_cat import op_dual
    meter = meter or Meter()
    base = P.source
    if Q.source != base:
        raise PreconditionFailed("diagrams must share a base")
    prod = two_cat_product(op_dual(base), base)
    fcats = {}
    for A in base.objects:
        for B in base.objects:
            fcats[(A, B)] = functor_category_full(P.on_obj[A], Q.on_obj[B], meter)
    on_obj, on_1, on_2 = {}, {}, {}
    for A in base.objects:
        for B in base.objects:
            on_obj[pair_name(A, B)] = fcats[(A, B)].cat
    for f in base.all_one_cells():  # contravariant leg: f : A' -> A in the base
        A2, A = base.src1(f), base.tgt1(f)
        for g in base.all_one_cells():
            B, B2 = base.src1(g), base.tgt1(g)
            src_fc = fcats[(A, B)]
            tgt_fc = fcats[(A2, B2)]
            om, am = {}, {}
            for hname, h in src_fc.functors.items():
                image = compose_functors(Q.on_1[g], compose_functors(h, P.on_1[f]))
                om[hname] = tgt_fc.name_of_functor(image)
            for nname, n in src_fc.transfs.items():
                image = whisker_functor_nat(Q.on_1[g], whisker_nat_functor(n, P.on_1[f]))
                am[nname] = tgt_fc.name_of_transf(image)
            on_1[pair_name(f, g)] = Functor(src_fc.cat, tgt_fc.cat, om, am)
    for x in base.all_two_cells():  # x : f => f'
        f, f2 = base.src2(x), base.tgt2(x)
        A2, A = base.src1(f), base.tgt1(f)
        for y in base.all_two_cells():  # y : g => g'
            g, g2 = base.src2(y), base.tgt2(y)
            B, B2 = base.src1(g), base.tgt1(g)
            src_fc = fcats[(A, B)]
            tgt_fc = fcats[(A2, B2)]
            comps = {}
            for hname, h in src_fc.functors.items():
                # Q(y) ∘ h ∘ P(x) : Q(g) h P(f) ⇒ Q(g') h P(f')
                inner = whisker_functor_nat(compose_functors(Q.on_1[g], h), P.on_2[x])
                outer = whisker_nat_functor(Q.on_2[y],
                                            compose_functors(h, P.on_1[f2]))
                comps[hname] = tgt_fc.name_of_transf(vcomp_nat(outer, inner))
            on_2[pair_name(x, y)] = NatTransf(
                on_1[pair_name(f, g)], on_1[pair_name(f2, g2)], comps)
    return CatDiagram(prod, on_obj, on_1, on_2), prod


def cotensor_diagram(c: FinCat, G: CatDiagram,
                     meter: Meter | None = None) -> CatDiagram:
    """The pointwise cotensor A ↦ Cat(c, G A)."""
    meter = meter or Meter()
    base = G.source
    fcats = {A: functor_category_full(c, G.on_obj[A], meter) for A in base.objects}
    on_obj = {A: fcats[A].cat for A in base.objects}
    on_1 = {}
    for f in base.all_one_cells():
        A, B = base.src1(f), base.tgt1(f)
        om, am = {}, {}
        for hname, h in fcats[A].functors.items():
            om[hname] = fcats[B].name_of_functor(compose_functors(G.on_1[f], h))
        for nname, n in fcats[A].transfs.items():
            am[nname] = fcats[B].name_of_transf(whisker_functor_nat(G.on_1[f], n))
        on_1[f] = Functor(fcats[A].cat, fcats[B].cat, om, am)
    on_2 = {}
    for x in base.all_two_cells():
        f, f2 = base.src2(x), base.tgt2(x)
        A, B = base.src1(f), base.tgt1(f)
        comps = {}
        for hname, h in fcats[A].functors.items():
            comps[hname] = fcats[B].name_of_transf(whisker_nat_functor(G.on_2[x], h))
        on_2[x] = NatTransf(on_1[f], on_1[f2], comps)
    return CatDiagram(base, on_obj, on_1, on_2)
