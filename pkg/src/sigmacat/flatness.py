"""Flatness of Cat-valued diagrams, decided through the elements construction.

A diagram is recorded as flat exactly when its 2-category of elements is
cofiltered with respect to the cocartesian marking; the verdict carries
the full filteredness report as evidence and names the route, since the
defining Kan-extension property quantifies over an infinite 2-category
and is not checked directly.  Left exactness is checked shape by shape
against user-supplied or generated bilimit cones, and the agreement of
the two notions on finitely complete bases is enforced as a consistency
check, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import DEFAULT_CAP, Meter
from .errors import Inconsistency, PreconditionFailed, UndecidedAtCap
from .fincat import (FinCat, Functor, NatTransf, compose_functors,
                     identity_functor, is_equivalence, mk_fincat,
                     EquivalenceReport, validate_functor)
from .two_cat import Fin2Cat, Marked2Cat, WideSub, op_dual
from .transforms import (CatDiagram, Transformation, check_transformation,
                         hom_eps, PSEUDO, reinterpret_as_pseudo,
                         validate_diagram)
from .elements import (ElementsResult, elements_of, elements_of_pseudo,
                       obj_name, _split_obj)
from .filteredness import FilterednessReport, check_sigma_cofiltered
from .colimits import (BaseCone, ColimitResult, SigmaCone, check_base_cone,
                       conical_sigma_colimit, induced_from_colimit,
                       is_bilimit_cone, preserves_bilimit)
from . import elements as el_mod


# ---------------------------------------------------------------------------
# Representables and the Yoneda comparison


def representable(a: Fin2Cat, A: str) -> CatDiagram:
    """The covariant hom diagram at A, acting by composition."""
    if A not in a.objects:
        raise PreconditionFailed(f"{A} is not an object of the base")
    on_obj = {B: a.hom[(A, B)] for B in a.objects}
    on_1 = {}
    for f in a.all_one_cells():
        B, C = a.src1(f), a.tgt1(f)
        om = {g: a.hcomp1[(f, g)] for g in a.one_cells(A, B)}
        am = {d: a.hcomp2[(a.id2(f), d)] for d in a.hom[(A, B)].arrows}
        on_1[f] = Functor(a.hom[(A, B)], a.hom[(A, C)], om, am)
    on_2 = {}
    for x in a.all_two_cells():
        f, g = a.src2(x), a.tgt2(x)
        B = a.src1(f)
        comps = {h: a.hcomp2[(x, a.id2(h))] for h in a.one_cells(A, B)}
        on_2[x] = NatTransf(on_1[f], on_1[g], comps)
    return CatDiagram(a, on_obj, on_1, on_2)


def yoneda_check(Q: CatDiagram, A: str,
                 meter: Meter | None = None) -> EquivalenceReport:
    """Evaluation at the identity must be an equivalence of categories."""
    meter = meter or Meter()
    base = Q.source
    h = hom_eps(representable(base, A), Q, PSEUDO, meter)
    QA = Q.on_obj[A]
    idA = base.id1[A]
    obj_map = {name: t.components[A].obj_map[idA] for name, t in h.transfs.items()}
    arr_map = {name: m.components[A].components[idA] for name, m in h.mods.items()}
    ev = Functor(h.cat, QA, obj_map, arr_map)
    rep = validate_functor(ev)
    if not rep.ok:
        raise Inconsistency(f"evaluation is not a functor: {rep.violations[0].detail}")
    return is_equivalence(ev)


# ---------------------------------------------------------------------------
# Left exactness against bilimit cones


@dataclass
class ExactnessReport:
    verdict: bool
    per_shape: list  # (label, bool)
    no_evidence: bool = False

    def __bool__(self) -> bool:
        return self.verdict


def check_left_exact(P: CatDiagram, bilimit_cones,
                     meter: Meter | None = None) -> ExactnessReport:
    """Preservation of each supplied bilimit cone, up to equivalence.

    Cones must be declared bilimit cones in the base; a malformed cone
    is a precondition failure.  An empty list is vacuously true and
    flagged as carrying no evidence.
    """
    meter = meter or Meter()
    if not bilimit_cones:
        return ExactnessReport(True, [], no_evidence=True)
    per_shape = []
    verdict = True
    for label, cone in bilimit_cones:
        rep = check_base_cone(cone)
        if not rep.ok:
            raise PreconditionFailed(
                f"malformed cone {label}: {rep.violations[0].detail}")
        ok = preserves_bilimit(P, cone, meter)
        per_shape.append((label, ok))
        verdict = verdict and ok
    return ExactnessReport(verdict, per_shape)


def generate_bilimit_cones(a: Fin2Cat, meter: Meter | None = None) -> list:
    """Search the base for bilimit cones of the four generating shapes.

    Only shapes certified by the bilimit test are returned; on bases
    without some bilimit the shape is simply absent.  Intended for
    poset-like bases where the search is small.
    """
    from .filteredness import (shape_pair, shape_parallel, shape_two_cells)
    from .transforms import TwoFunctor
    import itertools
    meter = meter or Meter()
    cones = []

    def search(shape, D, marked, label):
        objs = sorted(shape.objects)
        non_id = [u for u in shape.all_one_cells()
                  if u not in set(shape.id1.values())]
        for L in sorted(a.objects):
            pools = [a.one_cells(L, D.obj_map[i]) for i in objs]
            if any(not p for p in pools):
                continue
            for combo in itertools.product(*pools):
                meter.tick()
                comp = dict(zip(objs, combo))
                cell_pools = []
                feasible = True
                for u in non_id:
                    i, j = shape.src1(u), shape.tgt1(u)
                    src = a.hcomp1[(D.map1[u], comp[i])]
                    pool = a.two_cells_between(src, comp[j])
                    if u in marked:
                        pool = [x for x in pool if a.is_invertible_2cell(x)]
                    if not pool:
                        feasible = False
                        break
                    cell_pools.append(pool)
                if not feasible:
                    continue
                for cells in itertools.product(*cell_pools):
                    struct = {shape.id1[i]: a.id2(comp[i]) for i in objs}
                    struct.update(dict(zip(non_id, cells)))
                    cone = BaseCone(shape, D, marked, L, comp, struct)
                    if check_base_cone(cone).ok and is_bilimit_cone(cone, meter):
                        return cone
        return None

    sh1 = shape_pair()
    for C in sorted(a.objects):
        for D_ in sorted(a.objects):
            diag = TwoFunctor(sh1, a, {"a": C, "b": D_},
                              {sh1.id1["a"]: a.id1[C], sh1.id1["b"]: a.id1[D_]},
                              {sh1.id2(sh1.id1["a"]): a.id2(a.id1[C]),
                               sh1.id2(sh1.id1["b"]): a.id2(a.id1[D_])})
            got = search(sh1, diag, frozenset(), f"biproduct({C},{D_})")
            if got is not None:
                cones.append((f"biproduct({C},{D_})", got))
    sh2 = shape_parallel()
    sh3 = shape_two_cells()
    for A in sorted(a.objects):
        for B in sorted(a.objects):
            for f in a.one_cells(A, B):
                for g in a.one_cells(A, B):
                    diag2 = TwoFunctor(
                        sh2, a, {"a": A, "b": B},
                        {"id_a": a.id1[A], "id_b": a.id1[B], "u": f, "v": g},
                        {"i2_id_a": a.id2(a.id1[A]), "i2_id_b": a.id2(a.id1[B]),
                         "i2_u": a.id2(f), "i2_v": a.id2(g)})
                    got = search(sh2, diag2, frozenset({"u", "v"}),
                                 f"biequalizer({f},{g})")
                    if got is not None:
                        cones.append((f"biequalizer({f},{g})", got))
                    got = search(sh2, diag2, frozenset({"v"}),
                                 f"biinserter({f},{g})")
                    if got is not None:
                        cones.append((f"biinserter({f},{g})", got))
                    for al in a.two_cells_between(f, g):
                        for be in a.two_cells_between(f, g):
                            diag3 = TwoFunctor(
                                sh3, a, {"a": A, "b": B},
                                {"id_a": a.id1[A], "id_b": a.id1[B],
                                 "u": f, "v": g},
                                {"i2_id_a": a.id2(a.id1[A]),
                                 "i2_id_b": a.id2(a.id1[B]),
                                 "i2_u": a.id2(f), "i2_v": a.id2(g),
                                 "th": al, "et": be})
                            got = search(sh3, diag3, frozenset({"u", "v"}),
                                         f"biequifier({al},{be})")
                            if got is not None:
                                cones.append((f"biequifier({al},{be})", got))
    return cones


# ---------------------------------------------------------------------------
# Flatness


@dataclass
class FlatnessVerdict:
    verdict: str  # "flat" | "not-flat" | "undecided"
    route: str
    evidence: object

    @property
    def flat(self) -> bool:
        return self.verdict == "flat"


def check_flat(P: CatDiagram, meter: Meter | None = None) -> FlatnessVerdict:
    """Flatness of a strict diagram via cofilteredness of its elements."""
    meter = meter or Meter()
    el = elements_of(P, meter)
    rep = check_sigma_cofiltered(Marked2Cat(el.cat, el.cart), meter)
    return FlatnessVerdict("flat" if rep.verdict else "not-flat",
                           "elements-cofiltered", rep)


def check_flat_pseudo(P: CatDiagram, meter: Meter | None = None) -> FlatnessVerdict:
    """Flatness of a pseudofunctor, cross-checked through strictification.

    The direct route tests cofilteredness of the pseudo elements
    construction; the second route strictifies and runs the strict
    checker.  Disagreement raises, since the two must coincide.
    """
    meter = meter or Meter()
    if not P.is_pseudo:
        P = reinterpret_as_pseudo(P)
    el = elements_of_pseudo(P, meter)
    rep = check_sigma_cofiltered(Marked2Cat(el.cat, el.cart), meter)
    tilde, eta, eps = strictify(P, meter)
    other = check_flat(tilde, meter)
    mine = "flat" if rep.verdict else "not-flat"
    if other.verdict != mine:
        raise Inconsistency(
            f"pseudo route says {mine} but strictified route says {other.verdict}")
    return FlatnessVerdict(mine, "elements-cofiltered+strictified", rep)


# ---------------------------------------------------------------------------
# Canonical expression as a colimit of representables


@dataclass
class CanonicalExpression:
    verdict: str  # "equivalent" | "undecided" | "failed"
    per_object: list  # (object, status, is_equivalence bool | None)


def canonical_expression(P: CatDiagram, cap: int = DEFAULT_CAP,
                         meter: Meter | None = None) -> CanonicalExpression:
    """Rebuild P, object by object, as a colimit of representables.

    Over each base object the elements-indexed diagram of hom categories
    has a conical colimit relative to the cocartesian marking; the
    canonical comparison into the value of P must be an equivalence.
    Any undecided localization yields an undecided verdict.
    """
    meter = meter or Meter()
    base = P.source
    el = elements_of(P, meter)
    op_el = op_dual(el.cat)
    marked = WideSub(op_el, el.cart.arrows)
    per_object = []
    verdict = "equivalent"
    for B in sorted(base.objects):
        QB = _representable_elements_diagram(P, el, op_el, B)
        colim = conical_sigma_colimit(QB, marked, cap, meter)
        if not colim.finite:
            per_object.append((B, "undecided", None))
            verdict = "undecided"
            continue
        target = _comparison_cone(P, el, QB, B)
        F = induced_from_colimit(colim, target, meter=meter)
        ok = is_equivalence(F).verdict
        per_object.append((B, "finite", ok))
        if not ok:
            verdict = "failed"
    return CanonicalExpression(verdict, per_object)


def _representable_elements_diagram(P: CatDiagram, el: ElementsResult,
                                    op_el: Fin2Cat, B: str) -> CatDiagram:
    base = P.source
    on_obj = {}
    for o in op_el.objects:
        x, A = _split_obj(o)
        on_obj[o] = base.hom[(A, B)]
    on_1 = {}
    for nm, (f, phi) in el.pairs1.items():
        oa, ob = el.cat.hom_of_1cell(nm)
        x, A = _split_obj(oa)
        y, A2 = _split_obj(ob)
        om = {h: base.hcomp1[(h, f)] for h in base.one_cells(A2, B)}
        am = {d: base.hcomp2[(d, base.id2(f))]
              for d in base.hom[(A2, B)].arrows}
        on_1[nm] = Functor(base.hom[(A2, B)], base.hom[(A, B)], om, am)
    on_2 = {}
    for nm, th in el.pairs2.items():
        pair = el.cat.hom_of_2cell(nm)
        s, t = el.cat.hom[pair].arrows[nm]
        f = el.pairs1[s][0]
        g = el.pairs1[t][0]
        oa, ob = el.cat.hom_of_1cell(s)
        x, A = _split_obj(oa)
        y, A2 = _split_obj(ob)
        comps = {h: base.hcomp2[(base.id2(h), th)] for h in base.one_cells(A2, B)}
        on_2[nm] = NatTransf(on_1[s], on_1[t], comps)
    return CatDiagram(op_el, on_obj, on_1, on_2)


def _comparison_cone(P: CatDiagram, el: ElementsResult, QB: CatDiagram,
                     B: str) -> SigmaCone:
    base = P.source
    PB = P.on_obj[B]
    comps = {}
    for o in QB.source.objects:
        x, A = _split_obj(o)
        om = {h: P.on_1[h].obj_map[x] for h in base.one_cells(A, B)}
        am = {d: P.on_2[d].components[x] for d in base.hom[(A, B)].arrows}
        comps[o] = Functor(base.hom[(A, B)], PB, om, am)
    structural = {}
    for nm, (f, phi) in el.pairs1.items():
        oa, ob = el.cat.hom_of_1cell(nm)
        x, A = _split_obj(oa)
        y, A2 = _split_obj(ob)
        comp = {}
        for h in base.one_cells(A2, B):
            comp[h] = P.on_1[h].arr_map[phi]
        src = compose_functors(comps[oa], QB.on_1[nm])
        structural[nm] = NatTransf(src, comps[ob], comp)
    return SigmaCone(QB, frozenset(el.cart.arrows), PB, comps, structural)


# ---------------------------------------------------------------------------
# Strictification


def strictify(P: CatDiagram, meter: Meter | None = None):
    """Replace a pseudofunctor by a strict diagram up to pseudo-equivalence.

    The category at B collects pairs (f, x) of an incoming 1-cell and an
    element over its source, with arrows taken between their values; the
    action on 1-cells composes names.  Returns the strict diagram with
    the unit and counit transformations, both pseudonatural with
    equivalence components.
    """
    meter = meter or Meter()
    if not P.is_pseudo:
        P = reinterpret_as_pseudo(P)
    base = P.source

    def pobj(f, x):
        return f"({f},{x})"

    def parr(phi, o1, o2):
        return f"{phi}:{o1}->{o2}"

    tilde_obj = {}
    for B in sorted(base.objects):
        objs = []
        info = {}
        for A in sorted(base.objects):
            for f in base.one_cells(A, B):
                for x in sorted(P.on_obj[A].objects):
                    o = pobj(f, x)
                    objs.append(o)
                    info[o] = (f, x, A)
        arrows, identity, compose = {}, {}, {}
        PB = P.on_obj[B]
        val = {o: P.on_1[info[o][0]].obj_map[info[o][1]] for o in objs}
        for o1 in objs:
            for o2 in objs:
                for phi in PB.hom(val[o1], val[o2]):
                    meter.tick()
                    arrows[parr(phi, o1, o2)] = (o1, o2)
            identity[o1] = parr(PB.identity[val[o1]], o1, o1)
        for n1, (o1, o2) in arrows.items():
            phi1 = n1.split(":", 1)[0]
            for n2, (o2b, o3) in arrows.items():
                if o2b != o2:
                    continue
                phi2 = n2.split(":", 1)[0]
                compose[(n2, n1)] = parr(PB.compose[(phi2, phi1)], o1, o3)
        tilde_obj[B] = mk_fincat(objs, arrows, identity, compose)

    tilde_1 = {}
    for g in base.all_one_cells():
        B, B2 = base.src1(g), base.tgt1(g)
        src_cat, tgt_cat = tilde_obj[B], tilde_obj[B2]
        om, am = {}, {}
        for o in src_cat.objects:
            f, x = _split_pair(o)
            om[o] = pobj(base.hcomp1[(g, f)], x)
        Pg = P.on_1[g]
        for n, (o1, o2) in src_cat.arrows.items():
            phi = n.split(":", 1)[0]
            f1, x1 = _split_pair(o1)
            f2, x2 = _split_pair(o2)
            moved = Pg.arr_map[phi]
            a1 = P.alpha_comp[(f1, g)].components[x1]
            a2 = P.alpha_comp[(f2, g)].components[x2]
            PB2 = P.on_obj[B2]
            new_phi = PB2.compose[(a2, PB2.compose[(moved, PB2.inverse(a1))])]
            am[n] = f"{new_phi}:{om[o1]}->{om[o2]}"
        tilde_1[g] = Functor(src_cat, tgt_cat, om, am)

    tilde_2 = {}
    for cell in base.all_two_cells():
        g, g2 = base.src2(cell), base.tgt2(cell)
        B = base.src1(g)
        src_cat = tilde_obj[B]
        comps = {}
        for o in src_cat.objects:
            f, x = _split_pair(o)
            whisk = base.hcomp2[(cell, base.id2(f))]
            comps[o] = f"{P.on_2[whisk].components[x]}:" \
                       f"{tilde_1[g].obj_map[o]}->{tilde_1[g2].obj_map[o]}"
        tilde_2[cell] = NatTransf(tilde_1[g], tilde_1[g2], comps)

    tilde = CatDiagram(base, tilde_obj, tilde_1, tilde_2)

    eta_comps, eta_struct = {}, {}
    for A in base.objects:
        PA = P.on_obj[A]
        idA = base.id1[A]
        om = {x: pobj(idA, x) for x in PA.objects}
        am = {}
        PidA = P.on_1[idA]
        for n, (x, y) in PA.arrows.items():
            am[n] = f"{PidA.arr_map[n]}:{om[x]}->{om[y]}"
        eta_comps[A] = Functor(PA, tilde_obj[A], om, am)
    for f in base.all_one_cells():
        A, B = base.src1(f), base.tgt1(f)
        PA = P.on_obj[A]
        comp = {}
        for x in PA.objects:
            src_o = pobj(base.hcomp1[(f, base.id1[A])], x)
            tgt_o = pobj(base.id1[B], P.on_1[f].obj_map[x])
            cellval = P.alpha_obj[B].components[P.on_1[f].obj_map[x]]
            comp[x] = f"{cellval}:{src_o}->{tgt_o}"
        src = compose_functors(tilde_1[f], eta_comps[A])
        tgt = compose_functors(eta_comps[B], P.on_1[f])
        eta_struct[f] = NatTransf(src, tgt, comp)
    eta = Transformation(P, tilde, eta_comps, eta_struct, PSEUDO)

    eps_comps, eps_struct = {}, {}
    for B in base.objects:
        src_cat = tilde_obj[B]
        PB = P.on_obj[B]
        om = {o: P.on_1[_split_pair(o)[0]].obj_map[_split_pair(o)[1]]
              for o in src_cat.objects}
        am = {n: n.split(":", 1)[0] for n in src_cat.arrows}
        eps_comps[B] = Functor(src_cat, PB, om, am)
    for g in base.all_one_cells():
        B, B2 = base.src1(g), base.tgt1(g)
        src_cat = tilde_obj[B]
        comp = {}
        for o in src_cat.objects:
            f, x = _split_pair(o)
            comp[o] = P.alpha_comp[(f, g)].components[x]
        src = compose_functors(P.on_1[g], eps_comps[B])
        tgt = compose_functors(eps_comps[B2], tilde_1[g])
        eps_struct[g] = NatTransf(src, tgt, comp)
    eps = Transformation(tilde, P, eps_comps, eps_struct, PSEUDO)
    return tilde, eta, eps


def _split_pair(name: str) -> tuple[str, str]:
    depth = 0
    for i in range(len(name) - 1, -1, -1):
        ch = name[i]
        if ch == ")":
            depth += 1
        elif ch == "(":
            depth -= 1
        elif ch == "," and depth == 1:
            return name[1:i], name[i + 1:-1]
    raise ValueError(name)


# ---------------------------------------------------------------------------
# The exactness bridge


def exact_implies_cofiltered_check(P: CatDiagram, bilimit_cones,
                                   meter: Meter | None = None) -> FilterednessReport:
    """Left exactness must force cofilteredness of the elements.

    A failure here is inconsistent, not a property of the input: exact
    diagrams have cofiltered elements.
    """
    meter = meter or Meter()
    ex = check_left_exact(P, bilimit_cones, meter)
    if not ex.verdict:
        raise PreconditionFailed("diagram is not left exact on the supplied cones")
    el = elements_of(P, meter)
    rep = check_sigma_cofiltered(Marked2Cat(el.cat, el.cart), meter)
    if not rep.verdict:
        raise Inconsistency(
            "left exact diagram with non-cofiltered elements: "
            f"counterexample {rep.counterexample}")
    return rep
