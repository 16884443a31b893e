"""The 2-category of elements of a Cat-valued diagram, and its relatives.

Objects are pairs ``(x,A)`` with x an object of the category at A.  A
morphism ``(x,A) -> (y,B)`` is a pair ``(f,phi)`` of a base 1-cell
``f : A -> B`` and an arrow ``phi : P(f)(x) -> y``; a 2-cell is a base
2-cell whose action closes the evident triangle.  The marked arrows
``cart`` are those whose phi is invertible.  The dual construction
reverses phi.  Pseudofunctors use the corrected composition and
identities built from their structure cells.

Identifiers are the canonical pair strings, generated deterministically
so that cross-module comparisons see stable names.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import Meter
from .errors import PreconditionFailed, ValidationError
from .fincat import FinCat, Functor, NatTransf, mk_fincat
from .two_cat import Fin2Cat, WideSub, mk_fin2cat
from .transforms import (CatDiagram, Transformation, TwoFunctor,
                         check_transformation, compose_diagram, hom_eps,
                         sigma_flavor, LAX)


def obj_name(x: str, A: str) -> str:
    return f"({x},{A})"


def mor_name(f: str, phi: str, x: str) -> str:
    # the source element tags the name: (f, phi) alone is ambiguous when
    # the functor at f identifies objects
    return f"({f},{phi})@{x}"


def cell_name(theta: str, src: str, tgt: str) -> str:
    return f"{theta}:{src}=>{tgt}"


@dataclass
class ElementsResult:
    cat: Fin2Cat
    cart: WideSub
    projection: TwoFunctor
    pairs1: dict  # 1-cell name -> (f, phi)
    pairs2: dict  # 2-cell name -> base 2-cell
    flavor: str  # "elements" | "dual"


def _build(P: CatDiagram, reverse_phi: bool, pseudo: bool,
           meter: Meter) -> ElementsResult:
    base = P.source
    objects = []
    obj_info = {}
    for A in sorted(base.objects):
        for x in sorted(P.on_obj[A].objects):
            name = obj_name(x, A)
            objects.append(name)
            obj_info[name] = (x, A)

    hom = {}
    pairs1 = {}
    pairs2 = {}
    id1 = {}
    for oa in objects:
        x, A = obj_info[oa]
        for ob in objects:
            y, B = obj_info[ob]
            cells1 = []
            local1 = {}
            for f in base.one_cells(A, B):
                Pf = P.on_1[f]
                cod = P.on_obj[B]
                if reverse_phi:
                    phis = cod.hom(y, Pf.obj_map[x])
                else:
                    phis = cod.hom(Pf.obj_map[x], y)
                for phi in phis:
                    meter.tick()
                    name = mor_name(f, phi, x)
                    cells1.append(name)
                    local1[name] = (f, phi)
                    pairs1[name] = (f, phi)
            arrows = {}
            ident = {}
            for m1 in cells1:
                f, phi = local1[m1]
                for m2 in cells1:
                    g, psi = local1[m2]
                    for th in base.two_cells_between(f, g):
                        meter.tick()
                        act = P.on_2[th].components[x]
                        cod = P.on_obj[B]
                        if reverse_phi:
                            # psi = P(th)_x ∘ phi
                            ok = cod.compose[(act, phi)] == psi
                        else:
                            # phi = psi ∘ P(th)_x
                            ok = cod.compose[(psi, act)] == phi
                        if ok:
                            nm = cell_name(th, m1, m2)
                            arrows[nm] = (m1, m2)
                            pairs2[nm] = th
            for m1 in cells1:
                f, _ = local1[m1]
                ident[m1] = cell_name(base.id2(f), m1, m1)
            compose = {}
            hom_base = base.hom[(A, B)]
            for nm2, (mid, m3) in arrows.items():
                for nm1, (m1, mid2) in arrows.items():
                    if mid2 != mid:
                        continue
                    th2, th1 = pairs2[nm2], pairs2[nm1]
                    comp = hom_base.compose[(th2, th1)]
                    compose[(nm2, nm1)] = cell_name(comp, m1, m3)
            hom[(oa, ob)] = mk_fincat(cells1, arrows, ident, compose)

    # identity 1-cells
    for oa in objects:
        x, A = obj_info[oa]
        if pseudo:
            alpha = P.alpha_obj[A]
            inv = _invert_component(P.on_obj[A], alpha.components[x])
            id1[oa] = mor_name(base.id1[A], inv, x)
        else:
            id1[oa] = mor_name(base.id1[A], P.on_obj[A].identity[x], x)

    # horizontal composition of 1-cells
    hcomp1 = {}
    for oa in objects:
        x, A = obj_info[oa]
        for ob in objects:
            y, B = obj_info[ob]
            for oc in objects:
                z, C = obj_info[oc]
                for m2 in hom[(ob, oc)].objects:
                    g, psi = pairs1[m2]
                    for m1 in hom[(oa, ob)].objects:
                        f, phi = pairs1[m1]
                        gf = base.hcomp1[(g, f)]
                        PC = P.on_obj[C]
                        Pg = P.on_1[g]
                        if reverse_phi:
                            # z -> P(g)(y) -> P(g)P(f)(x) [-> P(gf)(x)]
                            w = PC.compose[(Pg.arr_map[phi], psi)]
                            if pseudo:
                                ac = P.alpha_comp[(f, g)].components[x]
                                w = PC.compose[(ac, w)]
                        else:
                            # P(gf)(x) [-> P(g)P(f)(x)] -> P(g)(y) -> z
                            w = PC.compose[(psi, Pg.arr_map[phi])]
                            if pseudo:
                                ac_inv = _invert_component(
                                    PC, P.alpha_comp[(f, g)].components[x])
                                w = PC.compose[(w, ac_inv)]
                        hcomp1[(m2, m1)] = mor_name(gf, w, x)

    # horizontal composition of 2-cells is computed in the base
    hcomp2 = {}
    all_cells2 = []
    for pair, h in hom.items():
        for nm in h.arrows:
            all_cells2.append((nm, pair, h))
    for nm2, (obm, ocm), h2 in all_cells2:
        for nm1, (oam, obm2), h1 in all_cells2:
            if obm2 != obm:
                continue
            s2, t2 = h2.arrows[nm2]
            s1, t1 = h1.arrows[nm1]
            th = base.hcomp2[(pairs2[nm2], pairs2[nm1])]
            hcomp2[(nm2, nm1)] = cell_name(th, hcomp1[(s2, s1)], hcomp1[(t2, t1)])

    cat = mk_fin2cat(objects, hom, id1, hcomp1, hcomp2)
    cart_arrows = set()
    for nm, (f, phi) in pairs1.items():
        B = base.tgt1(f)
        if P.on_obj[B].is_iso(phi):
            cart_arrows.add(nm)
    cart = WideSub(cat, frozenset(cart_arrows))
    projection = TwoFunctor(
        cat, base,
        {o: obj_info[o][1] for o in objects},
        {nm: fp[0] for nm, fp in pairs1.items()},
        {nm: th for nm, th in pairs2.items()},
    )
    return ElementsResult(cat, cart, projection, pairs1, pairs2,
                          "dual" if reverse_phi else "elements")


def _invert_component(cat: FinCat, a: str) -> str:
    inv = cat.inverse(a)
    if inv is None:
        raise ValidationError(f"structure cell component {a} is not invertible")
    return inv


def elements_of(P: CatDiagram, meter: Meter | None = None) -> ElementsResult:
    """El_P for a strict diagram, with its cocartesian marking."""
    if P.is_pseudo:
        raise PreconditionFailed("use elements_of_pseudo for pseudofunctors")
    return _build(P, reverse_phi=False, pseudo=False, meter=meter or Meter())


def elements_of_pseudo(P: CatDiagram, meter: Meter | None = None) -> ElementsResult:
    """El_P for a pseudofunctor; composition takes the structure cells
    into account and identities are the inverted unit components."""
    if not P.is_pseudo:
        raise PreconditionFailed("diagram is not a pseudofunctor")
    return _build(P, reverse_phi=False, pseudo=True, meter=meter or Meter())


def gamma_dual(Q: CatDiagram, meter: Meter | None = None) -> ElementsResult:
    """The dual construction, with the direction of phi reversed."""
    if Q.is_pseudo:
        raise PreconditionFailed("the dual construction expects a strict diagram")
    return _build(Q, reverse_phi=True, pseudo=False, meter=meter or Meter())


def cart_sigma(e: ElementsResult, sigma: WideSub) -> WideSub:
    """Arrows (f,phi) with f marked in the base and phi invertible."""
    marked = frozenset(nm for nm in e.cart.arrows
                       if e.pairs1[nm][0] in sigma.arrows)
    return WideSub(e.cat, marked)


# ---------------------------------------------------------------------------
# Induced 2-functors


def t_eta(eta: Transformation, el_p: ElementsResult,
          el_q: ElementsResult) -> TwoFunctor:
    """The 2-functor El_P -> El_Q induced by a transformation P ⇒ Q."""
    rep = check_transformation(eta)
    if not rep.ok:
        raise PreconditionFailed(f"invalid transformation: {rep.violations[0].detail}")
    P, Q = eta.source, eta.target
    base = P.source
    obj_map = {}
    for o in el_p.cat.objects:
        x, A = _split_obj(o)
        obj_map[o] = obj_name(eta.components[A].obj_map[x], A)
    map1 = {}
    for nm, (f, phi) in el_p.pairs1.items():
        A, B = base.src1(f), base.tgt1(f)
        oa, ob = el_p.cat.hom_of_1cell(nm)
        x, _ = _split_obj(oa)
        QB = Q.on_obj[B]
        struct = eta.structural[f].components[x]
        image_phi = QB.compose[(eta.components[B].arr_map[phi], struct)]
        map1[nm] = mor_name(f, image_phi, eta.components[A].obj_map[x])
    map2 = {}
    for nm, th in el_p.pairs2.items():
        hom_pair = el_p.cat.hom_of_2cell(nm)
        s, t = el_p.cat.hom[hom_pair].arrows[nm]
        map2[nm] = cell_name(th, map1[s], map1[t])
    return TwoFunctor(el_p.cat, el_q.cat, obj_map, map1, map2)


def t_h(H: TwoFunctor, P: CatDiagram, el_ph: ElementsResult,
        el_p: ElementsResult) -> TwoFunctor:
    """The 2-functor El_{P∘H} -> El_P over a base change H."""
    obj_map = {}
    for o in el_ph.cat.objects:
        x, A = _split_obj(o)
        obj_map[o] = obj_name(x, H.obj_map[A])
    map1 = {}
    for nm, (f, phi) in el_ph.pairs1.items():
        oa, _ = el_ph.cat.hom_of_1cell(nm)
        x, _A = _split_obj(oa)
        map1[nm] = mor_name(H.map1[f], phi, x)
    map2 = {}
    for nm, th in el_ph.pairs2.items():
        hom_pair = el_ph.cat.hom_of_2cell(nm)
        s, t = el_ph.cat.hom[hom_pair].arrows[nm]
        map2[nm] = cell_name(H.map2[th], map1[s], map1[t])
    return TwoFunctor(el_ph.cat, el_p.cat, obj_map, map1, map2)


def _split_obj(name: str) -> tuple[str, str]:
    depth = 0
    for i in range(len(name) - 1, -1, -1):
        ch = name[i]
        if ch == ")":
            depth += 1
        elif ch == "(":
            depth -= 1
        elif ch == "," and depth == 1:
            return name[1:i], name[i + 1:-1]
    raise ValidationError(f"not an element name: {name}")


def is_two_fully_faithful(T: TwoFunctor) -> bool:
    """Hom-by-hom bijectivity on 1-cells and 2-cells."""
    a, b = T.source, T.target
    for A in a.objects:
        for B in a.objects:
            src_cells = a.one_cells(A, B)
            tgt_cells = b.one_cells(T.obj_map[A], T.obj_map[B])
            image = [T.map1[f] for f in src_cells]
            if len(set(image)) != len(image) or set(image) != set(tgt_cells):
                return False
            for f in src_cells:
                for g in src_cells:
                    cells = a.two_cells_between(f, g)
                    image2 = [T.map2[x] for x in cells]
                    want = b.two_cells_between(T.map1[f], T.map1[g])
                    if len(set(image2)) != len(image2) or set(image2) != set(want):
                        return False
    return True


def preimage_marking(T: TwoFunctor, marked: WideSub) -> WideSub:
    return WideSub(T.source, frozenset(
        f for f in T.source.all_one_cells() if T.map1[f] in marked.arrows))


# ---------------------------------------------------------------------------
# The lax pull-back property and lax density


def lax_pullback_factor(F: TwoFunctor, theta: Transformation,
                        el_p: ElementsResult) -> TwoFunctor:
    """The unique factorization Z -> El_P of a lax cone over P∘F.

    ``theta`` is a transformation from the constant terminal diagram to
    the composite of the diagram with F; its components select elements
    and its structural cells the connecting arrows.
    """
    rep = check_transformation(theta)
    if not rep.ok:
        raise PreconditionFailed(f"invalid cone: {rep.violations[0].detail}")
    Z = F.source
    PF = theta.target
    obj_map = {}
    for ZO in Z.objects:
        x = theta.components[ZO].obj_map["*"]
        obj_map[ZO] = obj_name(x, F.obj_map[ZO])
    map1 = {}
    for r in Z.all_one_cells():
        phi = theta.structural[r].components["*"]
        x, _ = _split_obj(obj_map[Z.src1(r)])
        map1[r] = mor_name(F.map1[r], phi, x)
    map2 = {}
    for x in Z.all_two_cells():
        s, t = Z.src2(x), Z.tgt2(x)
        map2[x] = cell_name(F.map2[x], map1[s], map1[t])
    return TwoFunctor(Z, el_p.cat, obj_map, map1, map2)


@dataclass
class LaxDensityTransport:
    """Mutually inverse maps between transformations P ⇒ Q and cones
    over Q restricted along the projection of El_P."""

    forward: dict  # transformation name -> cone name
    backward: dict
    hom_pq: object
    hom_cone: object


def lax_dense_transport(P: CatDiagram, Q: CatDiagram, el_p: ElementsResult,
                        flavor=None, cone_flavor=None,
                        meter: Meter | None = None) -> LaxDensityTransport:
    """Enumerate both sides of the density correspondence and match them.

    With a sigma flavor on the base, the image lands exactly in the
    cones that are sigma with respect to the induced marking on El_P.
    """
    from .fincat import terminal_category
    from .transforms import constant_diagram
    meter = meter or Meter()
    flavor = flavor or LAX
    cone_flavor = cone_flavor or LAX
    hom_pq = hom_eps(P, Q, flavor, meter)
    q_proj = compose_diagram(Q, el_p.projection)
    k1 = constant_diagram(el_p.cat, terminal_category())
    hom_cone = hom_eps(k1, q_proj, cone_flavor, meter)

    forward = {}
    for name, eta in hom_pq.transfs.items():
        cone = _transport_forward(P, Q, el_p, eta, k1, q_proj, cone_flavor)
        forward[name] = hom_cone.name_of_transf(cone)
    backward = {}
    for name, th in hom_cone.transfs.items():
        eta = _transport_backward(P, Q, el_p, th, flavor)
        backward[name] = hom_pq.name_of_transf(eta)
    return LaxDensityTransport(forward, backward, hom_pq, hom_cone)


def _transport_forward(P, Q, el_p, eta, k1, q_proj, cone_flavor) -> Transformation:
    base = P.source
    one = k1.on_obj[el_p.cat.objects[0]] if el_p.cat.objects else None
    comps = {}
    structural = {}
    for o in el_p.cat.objects:
        x, A = _split_obj(o)
        target = Q.on_obj[A]
        val = eta.components[A].obj_map[x]
        comps[o] = Functor(k1.on_obj[o], target, {"*": val},
                           {"id_*": target.identity[val]})
    for nm, (f, phi) in el_p.pairs1.items():
        oa, ob = el_p.cat.hom_of_1cell(nm)
        x, A = _split_obj(oa)
        y, B = _split_obj(ob)
        QB = Q.on_obj[B]
        comp = QB.compose[(eta.components[B].arr_map[phi],
                           eta.structural[f].components[x])]
        src = _const_comp(q_proj.on_1[nm], comps[oa])
        tgt = comps[ob]
        structural[nm] = NatTransf(src, _comp_with_id(tgt, k1, nm), {"*": comp})
    return Transformation(k1, q_proj, comps, structural, cone_flavor)


def _const_comp(F: Functor, pick: Functor) -> Functor:
    from .fincat import compose_functors
    return compose_functors(F, pick)


def _comp_with_id(pick: Functor, k1, nm) -> Functor:
    from .fincat import compose_functors
    return compose_functors(pick, k1.on_1[nm])


def _transport_backward(P, Q, el_p, th, flavor) -> Transformation:
    base = P.source
    comps = {}
    structural = {}
    for A in base.objects:
        PA, QA = P.on_obj[A], Q.on_obj[A]
        om, am = {}, {}
        for x in PA.objects:
            om[x] = th.components[obj_name(x, A)].obj_map["*"]
        for arr, (x, x2) in PA.arrows.items():
            nm = mor_name(base.id1[A], arr, x)
            am[arr] = th.structural[nm].components["*"]
        comps[A] = Functor(PA, QA, om, am)
    for f in base.all_one_cells():
        A, B = base.src1(f), base.tgt1(f)
        PA = P.on_obj[A]
        comp = {}
        for x in PA.objects:
            nm = mor_name(f, P.on_obj[B].identity[P.on_1[f].obj_map[x]], x)
            comp[x] = th.structural[nm].components["*"]
        from .fincat import compose_functors
        src = compose_functors(Q.on_1[f], comps[A])
        tgt = compose_functors(comps[B], P.on_1[f])
        structural[f] = NatTransf(src, tgt, comp)
    return Transformation(P, Q, comps, structural, flavor)
