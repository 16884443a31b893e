"""Filteredness of a marked finite 2-category, by exhaustive search.

A marked 2-category is filtered when it is nonempty, every pair of
objects admits a marked cospan, every parallel pair whose second leg is
marked admits a marked coequalizing cell (invertible when the first leg
is marked too), and every parallel pair of 2-cells into a marked leg is
merged by some marked postcomposition.  The checker scans every
instance of every axiom, records the first witness found in a fixed
lexicographic order, and re-validates each witness against the raw
equations before reporting it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .config import Meter
from .errors import PreconditionFailed
from .fincat import FinCat, mk_fincat, is_equivalence, Functor, enumerate_functors
from .two_cat import Fin2Cat, Marked2Cat, WideSub, op_dual, transport_sigma
from .transforms import TwoFunctor


AXIOM_NONEMPTY = "nonempty"
AXIOM_F0 = "sigma-F0"
AXIOM_F1 = "sigma-F1"
AXIOM_F2 = "sigma-F2"
AXIOM_C0 = "sigma-C0"
AXIOM_C1 = "sigma-C1"
AXIOM_C2 = "sigma-C2"


@dataclass(frozen=True)
class Witness:
    axiom: str
    instance: tuple
    data: tuple


@dataclass
class FilterednessReport:
    verdict: bool
    witnesses: list = field(default_factory=list)
    counterexample: Witness | None = None

    def __bool__(self) -> bool:
        return self.verdict


def _revalidate_f(m: Marked2Cat, w: Witness) -> bool:
    """Check a recorded witness against the raw axiom equations."""
    a, sig = m.cat, m.sigma.arrows
    if w.axiom == AXIOM_F0:
        A, B = w.instance
        f, g = w.data
        return f in sig and g in sig and a.src1(f) == A and a.src1(g) == B \
            and a.tgt1(f) == a.tgt1(g)
    if w.axiom == AXIOM_F1:
        f, g = w.instance
        h, alpha = w.data
        if h not in sig or a.src1(h) != a.tgt1(f):
            return False
        hf, hg = a.hcomp1[(h, f)], a.hcomp1[(h, g)]
        if a.src2(alpha) != hf or a.tgt2(alpha) != hg:
            return False
        if f in sig and not a.is_invertible_2cell(alpha):
            return False
        return True
    if w.axiom == AXIOM_F2:
        f, g, alpha, beta = w.instance
        (h,) = w.data
        if h not in sig or a.src1(h) != a.tgt1(f):
            return False
        idh = a.id2(h)
        return a.hcomp2[(idh, alpha)] == a.hcomp2[(idh, beta)]
    if w.axiom == AXIOM_NONEMPTY:
        return len(a.objects) > 0
    return False


def check_sigma_filtered(m: Marked2Cat, meter: Meter | None = None) -> FilterednessReport:
    """Exhaustive scan of the three filteredness axioms with witnesses."""
    meter = meter or Meter()
    a, sig = m.cat, m.sigma.arrows
    rep = FilterednessReport(True)
    if not a.objects:
        rep.verdict = False
        rep.counterexample = Witness(AXIOM_NONEMPTY, (), ())
        return rep
    rep.witnesses.append(Witness(AXIOM_NONEMPTY, (), (sorted(a.objects)[0],)))

    # F0: every object pair has a marked cospan
    for A in sorted(a.objects):
        for B in sorted(a.objects):
            found = None
            for E in sorted(a.objects):
                for f in a.one_cells(A, E):
                    if f not in sig:
                        continue
                    for g in a.one_cells(B, E):
                        meter.tick()
                        if g in sig:
                            found = Witness(AXIOM_F0, (A, B), (f, g))
                            break
                    if found:
                        break
                if found:
                    break
            if found is None:
                rep.verdict = False
                rep.counterexample = Witness(AXIOM_F0, (A, B), ())
                return rep
            rep.witnesses.append(found)

    # F1: parallel pairs with marked second leg
    for A in sorted(a.objects):
        for B in sorted(a.objects):
            for f in a.one_cells(A, B):
                for g in a.one_cells(A, B):
                    if g not in sig:
                        continue
                    need_invertible = f in sig
                    found = None
                    for E in sorted(a.objects):
                        for h in a.one_cells(B, E):
                            if h not in sig:
                                continue
                            hf, hg = a.hcomp1[(h, f)], a.hcomp1[(h, g)]
                            for alpha in a.two_cells_between(hf, hg):
                                meter.tick()
                                if need_invertible and not a.is_invertible_2cell(alpha):
                                    continue
                                found = Witness(AXIOM_F1, (f, g), (h, alpha))
                                break
                            if found:
                                break
                        if found:
                            break
                    if found is None:
                        rep.verdict = False
                        rep.counterexample = Witness(AXIOM_F1, (f, g), ())
                        return rep
                    rep.witnesses.append(found)

    # F2: parallel 2-cells into a marked leg
    for A in sorted(a.objects):
        for B in sorted(a.objects):
            for f in a.one_cells(A, B):
                for g in a.one_cells(A, B):
                    if g not in sig:
                        continue
                    cells = a.two_cells_between(f, g)
                    for alpha in cells:
                        for beta in cells:
                            if alpha == beta:
                                continue
                            found = None
                            for E in sorted(a.objects):
                                for h in a.one_cells(B, E):
                                    if h not in sig:
                                        continue
                                    meter.tick()
                                    idh = a.id2(h)
                                    if a.hcomp2[(idh, alpha)] == a.hcomp2[(idh, beta)]:
                                        found = Witness(AXIOM_F2,
                                                        (f, g, alpha, beta), (h,))
                                        break
                                if found:
                                    break
                            if found is None:
                                rep.verdict = False
                                rep.counterexample = Witness(
                                    AXIOM_F2, (f, g, alpha, beta), ())
                                return rep
                            rep.witnesses.append(found)

    for w in rep.witnesses:
        if w.axiom != AXIOM_NONEMPTY and not _revalidate_f(m, w):
            raise AssertionError(f"recorded witness fails re-validation: {w}")
    return rep


def check_sigma_cofiltered(m: Marked2Cat, meter: Meter | None = None) -> FilterednessReport:
    """Filteredness of the 1-cell dual, marking transported by name."""
    dual = op_dual(m.cat)
    return check_sigma_filtered(Marked2Cat(dual, transport_sigma(m.sigma, dual)), meter)


def check_sigma_cofinal(T: TwoFunctor, sigma: WideSub, sigma_prime: WideSub,
                        meter: Meter | None = None) -> FilterednessReport:
    """Cofinality of T relative to markings on its source and target.

    Requires the source to be filtered for its marking; scans the three
    cofinality axioms with witnesses.
    """
    meter = meter or Meter()
    c, cp = T.source, T.target
    pre = check_sigma_filtered(Marked2Cat(c, sigma), meter)
    if not pre.verdict:
        raise PreconditionFailed("source is not filtered for its marking")
    sig, sigp = sigma.arrows, sigma_prime.arrows
    rep = FilterednessReport(True)

    # C0: every target object maps into the image along a marked arrow
    for Cp in sorted(cp.objects):
        found = None
        for C in sorted(c.objects):
            for f in cp.one_cells(Cp, T.obj_map[C]):
                meter.tick()
                if f in sigp:
                    found = Witness(AXIOM_C0, (Cp,), (C, f))
                    break
            if found:
                break
        if found is None:
            rep.verdict = False
            rep.counterexample = Witness(AXIOM_C0, (Cp,), ())
            return rep
        rep.witnesses.append(found)

    # C1: parallel pairs into an image object, second leg marked
    for C in sorted(c.objects):
        for Cp in sorted(cp.objects):
            cells = cp.one_cells(Cp, T.obj_map[C])
            for f in cells:
                for g in cells:
                    if g not in sigp:
                        continue
                    need_invertible = f in sigp
                    found = None
                    for D in sorted(c.objects):
                        for u in c.one_cells(C, D):
                            if u not in sig:
                                continue
                            Tu = T.map1[u]
                            uf = cp.hcomp1[(Tu, f)]
                            ug = cp.hcomp1[(Tu, g)]
                            for alpha in cp.two_cells_between(uf, ug):
                                meter.tick()
                                if need_invertible and \
                                        not cp.is_invertible_2cell(alpha):
                                    continue
                                found = Witness(AXIOM_C1, (f, g, C), (u, alpha))
                                break
                            if found:
                                break
                        if found:
                            break
                    if found is None:
                        rep.verdict = False
                        rep.counterexample = Witness(AXIOM_C1, (f, g, C), ())
                        return rep
                    rep.witnesses.append(found)

    # C2: parallel 2-cells into an image object, second leg marked
    for C in sorted(c.objects):
        for Cp in sorted(cp.objects):
            cells = cp.one_cells(Cp, T.obj_map[C])
            for f in cells:
                for g in cells:
                    if g not in sigp:
                        continue
                    twocells = cp.two_cells_between(f, g)
                    for alpha in twocells:
                        for beta in twocells:
                            if alpha == beta:
                                continue
                            found = None
                            for D in sorted(c.objects):
                                for u in c.one_cells(C, D):
                                    if u not in sig:
                                        continue
                                    meter.tick()
                                    idu = cp.id2(T.map1[u])
                                    if cp.hcomp2[(idu, alpha)] == \
                                            cp.hcomp2[(idu, beta)]:
                                        found = Witness(
                                            AXIOM_C2, (f, g, alpha, beta, C), (u,))
                                        break
                                if found:
                                    break
                            if found is None:
                                rep.verdict = False
                                rep.counterexample = Witness(
                                    AXIOM_C2, (f, g, alpha, beta, C), ())
                                return rep
                            rep.witnesses.append(found)
    return rep


def check_sigma_coinitial(T: TwoFunctor, sigma: WideSub, sigma_prime: WideSub,
                          meter: Meter | None = None) -> FilterednessReport:
    """The dual cofinality: the 1-cell dual of T is cofinal."""
    cop, cpop = op_dual(T.source), op_dual(T.target)
    Top = TwoFunctor(cop, cpop, dict(T.obj_map), dict(T.map1), dict(T.map2))
    return check_sigma_cofinal(Top, transport_sigma(sigma, cop),
                               transport_sigma(sigma_prime, cpop), meter)


# ---------------------------------------------------------------------------
# The three shapes and their cone categories


def shape_pair():
    """Discrete two-object shape."""
    from .fincat import discrete_category
    from .two_cat import two_cat_from_cat
    return two_cat_from_cat(discrete_category(["a", "b"]))


def shape_parallel():
    from .fincat import parallel_pair_category
    from .two_cat import two_cat_from_cat
    return two_cat_from_cat(parallel_pair_category())


def shape_two_cells():
    from .two_cat import two_parallel_2cells_2cat
    return two_parallel_2cells_2cat()


@dataclass(frozen=True)
class ShapeDiagram:
    """One of the three filteredness probe diagrams, with its marking."""

    shape: Fin2Cat
    diagram: TwoFunctor
    marked: frozenset  # shape 1-cells whose image lies in the marking


def shape_diagram_1(m: Marked2Cat, C: str, D: str) -> ShapeDiagram:
    sh = shape_pair()
    a = m.cat
    T = TwoFunctor(sh, a, {"a": C, "b": D},
                   {sh.id1["a"]: a.id1[C], sh.id1["b"]: a.id1[D]},
                   {sh.id2(sh.id1["a"]): a.id2(a.id1[C]),
                    sh.id2(sh.id1["b"]): a.id2(a.id1[D])})
    return ShapeDiagram(sh, T, _pulled_marking(T, m.sigma))


def shape_diagram_2(m: Marked2Cat, f: str, g: str) -> ShapeDiagram:
    sh = shape_parallel()
    a = m.cat
    A, B = a.src1(f), a.tgt1(f)
    T = TwoFunctor(sh, a,
                   {"a": A, "b": B},
                   {"id_a": a.id1[A], "id_b": a.id1[B], "u": f, "v": g},
                   {"i2_id_a": a.id2(a.id1[A]), "i2_id_b": a.id2(a.id1[B]),
                    "i2_u": a.id2(f), "i2_v": a.id2(g)})
    return ShapeDiagram(sh, T, _pulled_marking(T, m.sigma))


def shape_diagram_3(m: Marked2Cat, f: str, g: str, alpha: str, beta: str) -> ShapeDiagram:
    sh = shape_two_cells()
    a = m.cat
    A, B = a.src1(f), a.tgt1(f)
    T = TwoFunctor(sh, a,
                   {"a": A, "b": B},
                   {"id_a": a.id1[A], "id_b": a.id1[B], "u": f, "v": g},
                   {"i2_id_a": a.id2(a.id1[A]), "i2_id_b": a.id2(a.id1[B]),
                    "i2_u": a.id2(f), "i2_v": a.id2(g), "th": alpha, "et": beta})
    return ShapeDiagram(sh, T, _pulled_marking(T, m.sigma))


def _pulled_marking(T: TwoFunctor, sigma: WideSub) -> frozenset:
    return frozenset(u for u in T.source.all_one_cells()
                     if T.map1[u] in sigma.arrows)


def cone_existence(sd: ShapeDiagram, sigma: WideSub,
                   meter: Meter | None = None):
    """Search for a cone under the diagram with marked structure arrows.

    Components must land in the marking; structural cells at marked
    shape arrows must be invertible.  Returns the first cone found in
    lexicographic order, or None.
    """
    meter = meter or Meter()
    sh, T = sd.shape, sd.diagram
    a = T.target
    sig = sigma.arrows
    objs = sorted(sh.objects)
    non_id = [u for u in sh.all_one_cells() if u not in set(sh.id1.values())]
    for E in sorted(a.objects):
        pools = [[t for t in a.one_cells(T.obj_map[i], E) if t in sig]
                 for i in objs]
        if any(not p for p in pools):
            continue
        for combo in itertools.product(*pools):
            meter.tick()
            comp = dict(zip(objs, combo))
            cell_pools = []
            ok = True
            for u in non_id:
                i, j = sh.src1(u), sh.tgt1(u)
                src = a.hcomp1[(comp[j], T.map1[u])]
                pool = a.two_cells_between(src, comp[i])
                if u in sd.marked:
                    pool = [x for x in pool if a.is_invertible_2cell(x)]
                if not pool:
                    ok = False
                    break
                cell_pools.append(pool)
            if not ok:
                continue
            for cells in itertools.product(*cell_pools):
                meter.tick()
                struct = {sh.id1[i]: a.id2(comp[i]) for i in objs}
                struct.update(dict(zip(non_id, cells)))
                if _cocone_ok(sd, comp, struct):
                    return (E, comp, struct)
    return None


def _cocone_ok(sd: ShapeDiagram, comp: dict, struct: dict) -> bool:
    sh, T = sd.shape, sd.diagram
    a = T.target
    for x in sh.all_two_cells():
        u, v = sh.src2(x), sh.tgt2(x)
        j = sh.tgt1(u)
        lhs = struct[u]
        rhs = a.vcomp(struct[v], a.hcomp2[(a.id2(comp[j]), T.map2[x])])
        if lhs != rhs:
            return False
    for (v, u), vu in sh.hcomp1.items():
        lhs = struct[vu]
        rhs = a.vcomp(struct[u], a.hcomp2[(struct[v], a.id2(T.map1[u]))])
        if lhs != rhs:
            return False
    return True


def cocone_category(sd: ShapeDiagram, E: str, meter: Meter | None = None):
    """All cones under the diagram with vertex E (components unrestricted).

    Objects are cones, arrows are 2-cell families satisfying the
    modification square.  Returns (category, cones by name).
    """
    meter = meter or Meter()
    sh, T = sd.shape, sd.diagram
    a = T.target
    objs = sorted(sh.objects)
    non_id = [u for u in sh.all_one_cells() if u not in set(sh.id1.values())]
    found = []
    pools = [a.one_cells(T.obj_map[i], E) for i in objs]
    if not any(not p for p in pools):
        for combo in itertools.product(*pools):
            meter.tick()
            comp = dict(zip(objs, combo))
            cell_pools = []
            ok = True
            for u in non_id:
                i, j = sh.src1(u), sh.tgt1(u)
                src = a.hcomp1[(comp[j], T.map1[u])]
                pool = a.two_cells_between(src, comp[i])
                if u in sd.marked:
                    pool = [x for x in pool if a.is_invertible_2cell(x)]
                if not pool:
                    ok = False
                    break
                cell_pools.append(pool)
            if not ok:
                continue
            for cells in itertools.product(*cell_pools):
                meter.tick()
                struct = {sh.id1[i]: a.id2(comp[i]) for i in objs}
                struct.update(dict(zip(non_id, cells)))
                if _cocone_ok(sd, comp, struct):
                    found.append((comp, struct))
    found.sort(key=lambda cs: (tuple(sorted(cs[0].items())),
                               tuple(sorted(cs[1].items()))))
    cname = {i: f"c{i}" for i in range(len(found))}
    arrows, identity, compose = {}, {}, {}
    data, labels = {}, {}
    counter = 0
    for i, (comp1, st1) in enumerate(found):
        for j, (comp2, st2) in enumerate(found):
            pools = [a.two_cells_between(comp1[o], comp2[o]) for o in objs]
            for combo in itertools.product(*pools):
                meter.tick()
                rho = dict(zip(objs, combo))
                ok = True
                for u in sh.all_one_cells():
                    i2, j2 = sh.src1(u), sh.tgt1(u)
                    lhs = a.vcomp(rho[i2], st1[u])
                    rhs = a.vcomp(st2[u], a.hcomp2[(rho[j2], a.id2(T.map1[u]))])
                    if lhs != rhs:
                        ok = False
                        break
                if not ok:
                    continue
                if i == j and all(a.is_identity_2cell(x) for x in rho.values()):
                    name = f"1_{cname[i]}"
                    identity[cname[i]] = name
                else:
                    name = f"r{counter}"
                    counter += 1
                arrows[name] = (cname[i], cname[j])
                data[name] = rho
                labels[(cname[i], cname[j], tuple(sorted(rho.items())))] = name
    for n1, rho1 in data.items():
        i, j = arrows[n1]
        for n2, rho2 in data.items():
            j2, k = arrows[n2]
            if j2 != j:
                continue
            comp = {o: a.vcomp(rho2[o], rho1[o]) for o in objs}
            compose[(n2, n1)] = labels[(i, k, tuple(sorted(comp.items())))]
    cat = mk_fincat([cname[i] for i in range(len(found))], arrows, identity, compose)
    return cat, {cname[i]: found[i] for i in range(len(found))}


def explicit_shape_category(sd: ShapeDiagram, E: str, which: int,
                            m: Marked2Cat) -> FinCat:
    """The hand-rolled description of the cone category for each shape.

    Shape 1: pairs of arrows to E with pairs of cells between them.
    Shape 2: an arrow from the second value with a connecting cell,
    invertible when the first leg is marked, arrows the compatible cells.
    Shape 3: arrows equalizing the two whiskered cells, with all cells.
    """
    a = m.cat
    T = sd.diagram
    if which == 1:
        C, D = T.obj_map["a"], T.obj_map["b"]
        hc = a.hom[(C, E)] if (C, E) in a.hom else None
        objs = [f"({h},{l})" for h in a.one_cells(C, E) for l in a.one_cells(D, E)]
        arrows, identity, compose = {}, {}, {}
        for h in a.one_cells(C, E):
            for l in a.one_cells(D, E):
                o = f"({h},{l})"
                for h2 in a.one_cells(C, E):
                    for l2 in a.one_cells(D, E):
                        o2 = f"({h2},{l2})"
                        for x in a.two_cells_between(h, h2):
                            for y in a.two_cells_between(l, l2):
                                arrows[f"({x},{y})"] = (o, o2)
                identity[o] = f"({a.id2(h)},{a.id2(l)})"
        for n1, (o1, o2) in arrows.items():
            x1, y1 = split_two(n1)
            for n2, (o2b, o3) in arrows.items():
                if o2b != o2:
                    continue
                x2, y2 = split_two(n2)
                compose[(n2, n1)] = f"({a.vcomp(x2, x1)},{a.vcomp(y2, y1)})"
        return mk_fincat(objs, arrows, identity, compose)
    f, g = T.map1["u"], T.map1["v"]
    D = a.tgt1(f)
    need_inv = which == 3 or (f in m.sigma.arrows)
    if which == 2:
        objs = []
        info = {}
        for h in a.one_cells(D, E):
            hf, hg = a.hcomp1[(h, f)], a.hcomp1[(h, g)]
            for gam in a.two_cells_between(hf, hg):
                if need_inv and not a.is_invertible_2cell(gam):
                    continue
                o = f"({h},{gam})"
                objs.append(o)
                info[o] = (h, gam)
        arrows, identity, compose = {}, {}, {}
        for o, (h, gam) in info.items():
            for o2, (h2, gam2) in info.items():
                for eta in a.two_cells_between(h, h2):
                    # compatibility with the connecting cells
                    lhs = a.vcomp(a.hcomp2[(eta, a.id2(g))], gam)
                    rhs = a.vcomp(gam2, a.hcomp2[(eta, a.id2(f))])
                    if lhs == rhs:
                        arrows[f"{eta}@{o}->{o2}"] = (o, o2)
            identity[o] = f"{a.id2(h)}@{o}->{o}"
        for n1, (o1, o2) in arrows.items():
            e1 = n1.split("@")[0]
            for n2, (o2b, o3) in arrows.items():
                if o2b != o2:
                    continue
                e2 = n2.split("@")[0]
                compose[(n2, n1)] = f"{a.vcomp(e2, e1)}@{o1}->{o3}"
        return mk_fincat(objs, arrows, identity, compose)
    # which == 3
    alpha, beta = T.map2["th"], T.map2["et"]
    objs = []
    for h in a.one_cells(D, E):
        idh = a.id2(h)
        if a.hcomp2[(idh, alpha)] == a.hcomp2[(idh, beta)]:
            objs.append(h)
    arrows, identity, compose = {}, {}, {}
    for h in objs:
        for h2 in objs:
            for eta in a.two_cells_between(h, h2):
                arrows[f"{eta}@{h}->{h2}"] = (h, h2)
        identity[h] = f"{a.id2(h)}@{h}->{h}"
    for n1, (o1, o2) in arrows.items():
        e1 = n1.split("@")[0]
        for n2, (o2b, o3) in arrows.items():
            if o2b != o2:
                continue
            e2 = n2.split("@")[0]
            compose[(n2, n1)] = f"{a.vcomp(e2, e1)}@{o1}->{o3}"
    return mk_fincat(objs, arrows, identity, compose)


def split_two(name: str) -> tuple[str, str]:
    depth = 0
    for i, ch in enumerate(name):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 1:
            return name[1:i], name[i + 1:-1]
    raise ValueError(name)


def cone_category_equiv(sd: ShapeDiagram, E: str, which: int, m: Marked2Cat,
                        meter: Meter | None = None):
    """Search for an equivalence between the enumerated cone category and
    its explicit description.  Returns (cone category, explicit, functor)."""
    meter = meter or Meter()
    cat, _cones = cocone_category(sd, E, meter)
    explicit = explicit_shape_category(sd, E, which, m)
    for F in enumerate_functors(cat, explicit, meter):
        if is_equivalence(F).verdict:
            return cat, explicit, F
    return cat, explicit, None


def cofinal_via_ff(T: TwoFunctor, sigma_prime: WideSub,
                   meter: Meter | None = None) -> FilterednessReport:
    """Filteredness and cofinality transported along a nice embedding.

    Hypotheses: the target is filtered for its marking, T is hom-wise an
    equivalence, the first cofinality axiom holds, and the source
    marking is the preimage.  The conclusion is then re-verified by the
    direct checkers rather than assumed.
    """
    meter = meter or Meter()
    cp = T.target
    rep_target = check_sigma_filtered(Marked2Cat(cp, sigma_prime), meter)
    if not rep_target.verdict:
        raise PreconditionFailed("target is not filtered for its marking")
    for A in T.source.objects:
        for B in T.source.objects:
            src_cells = T.source.one_cells(A, B)
            hom_src = T.source.hom[(A, B)]
            hom_tgt = cp.hom[(T.obj_map[A], T.obj_map[B])]
            F = Functor(hom_src, hom_tgt,
                        {f: T.map1[f] for f in hom_src.objects},
                        {x: T.map2[x] for x in hom_src.arrows})
            if not is_equivalence(F).verdict:
                raise PreconditionFailed("functor is not hom-wise an equivalence")
    # C0 by direct search
    sigma = WideSub(T.source, frozenset(
        f for f in T.source.all_one_cells() if T.map1[f] in sigma_prime.arrows))
    for Cp in cp.objects:
        hit = any(f in sigma_prime.arrows
                  for C in T.source.objects
                  for f in cp.one_cells(Cp, T.obj_map[C]))
        if not hit:
            raise PreconditionFailed(f"no marked arrow from {Cp} into the image")
    rep_src = check_sigma_filtered(Marked2Cat(T.source, sigma), meter)
    if not rep_src.verdict:
        return rep_src
    return check_sigma_cofinal(T, sigma, sigma_prime, meter)