"""Conical and weighted relative colimits, bilimits, pointwise computation."""

import pytest

from sigmacat.config import Meter
from sigmacat.errors import CertificateFailure
from sigmacat.fincat import (Functor, NatTransf, arrow_category,
                             categories_equivalent, compose_functors,
                             find_isomorphism, functor_category,
                             functor_category_full, identity_functor,
                             is_equivalence, iso_pair_category,
                             parallel_pair_category, product_category,
                             terminal_category, validate_category)
from sigmacat.fixtures import (arrow_2cat, diagram_collapse,
                               diagram_on_free2cell, diagram_pick0,
                               diamond_2cat, idn, weight_constant_terminal_op,
                               weight_on_op_arrow)
from sigmacat.two_cat import (WideSub, free_2cell_2cat, op_dual, pair_name,
                              pi0, terminal_2cat, two_cat_product,
                              wide_all, wide_identities)
from sigmacat.transforms import (LAX, PSEUDO, STRICT, CatDiagram,
                                 constant_diagram, hom_eps, sigma_flavor)
from sigmacat.colimits import (SigmaCone, bilimit_cat, check_sigma_cone,
                               coend_eps, cones_sigma, conical_sigma_colimit,
                               default_test_family, hom_into_diagram,
                               induced_from_colimit, interchange_check,
                               pointwise_limit_check, weighted_limit_cat,
                               weighted_sigma_colimit)


@pytest.fixture(scope="module")
def base():
    return arrow_2cat()


# ---------------------------------------------------------------------------
# Conical colimits


def test_one_object_conical_colimit_returns_the_value():
    t2 = terminal_2cat()
    C = iso_pair_category()
    res = conical_sigma_colimit(constant_diagram(t2, C), wide_identities(t2))
    assert res.finite
    assert all(ok for _, ok in res.certificate)
    assert find_isomorphism(res.category, C) is not None


def test_conical_colimit_over_arrow_base_certifies(base):
    P = diagram_pick0()
    for marking in (wide_all(base), wide_identities(base)):
        res = conical_sigma_colimit(P, marking)
        assert res.finite
        assert all(ok for _, ok in res.certificate)
        assert check_sigma_cone(res.cone).ok


def test_identity_marking_only_inverts_isos():
    # with only identities marked, the colimit is the components category
    # of the dual construction: the nontrivial 2-cell still merges arrows
    fc = free_2cell_2cat()
    Q = diagram_on_free2cell()
    res = conical_sigma_colimit(Q, wide_identities(fc))
    assert res.finite
    assert all(ok for _, ok in res.certificate)


def test_undecided_colimit_propagates():
    # constant terminal diagram over the parallel pair with everything
    # marked localizes to the group of integers
    from sigmacat.fixtures import parallel_2cat
    p2 = parallel_2cat()
    Q = constant_diagram(p2, terminal_category())
    res = conical_sigma_colimit(Q, wide_all(p2), cap=8)
    assert res.status == "undecided-at-cap"
    assert res.category is None
    assert res.certificate == []


def test_induced_functor_out_of_colimit(base):
    # the colimit maps canonically to any other cone vertex
    P = diagram_pick0()
    res = conical_sigma_colimit(P, wide_all(base))
    # target cone: collapse everything to the terminal category
    one = terminal_category()
    comps, structural = {}, {}
    for A in base.objects:
        PA = P.on_obj[A]
        comps[A] = Functor(PA, one, {x: "*" for x in PA.objects},
                           {a: "id_*" for a in PA.arrows})
    for f in base.all_one_cells():
        A, B = base.src1(f), base.tgt1(f)
        src = compose_functors(comps[B], P.on_1[f])
        structural[f] = NatTransf(src, comps[A],
                                  {x: "id_*" for x in P.on_obj[A].objects})
    cone = SigmaCone(P, frozenset(wide_all(base).arrows), one, comps, structural)
    assert check_sigma_cone(cone).ok
    F = induced_from_colimit(res, cone)
    assert all(F.obj_map[o] == "*" for o in res.category.objects)


# ---------------------------------------------------------------------------
# Weighted colimits


WEIGHTED_FIXTURES = [
    ("w-arrow/pick0/all", weight_on_op_arrow, diagram_pick0, "all"),
    ("w-arrow/collapse/all", weight_on_op_arrow, diagram_collapse, "all"),
    ("k1/pick0/all", weight_constant_terminal_op, diagram_pick0, "all"),
    ("k1/pick0/ids", weight_constant_terminal_op, diagram_pick0, "ids"),
]


@pytest.mark.parametrize("label,mkW,mkP,marking", WEIGHTED_FIXTURES)
def test_weighted_colimit_certificates(label, mkW, mkP, marking):
    base = arrow_2cat()
    W, P = mkW(), mkP()
    sig = wide_all(base) if marking == "all" else wide_identities(base)
    res = weighted_sigma_colimit(W, P, sig)
    assert res.status == "finite"
    assert all(ok for _, ok in res.certificate)
    assert all(ok for _, ok in res.conical.certificate)


def test_terminal_weight_reduces_to_conical(base):
    W = weight_constant_terminal_op()
    P = diagram_pick0()
    res_w = weighted_sigma_colimit(W, P, wide_all(base), test_family=[])
    res_c = conical_sigma_colimit(P, wide_all(base), test_family=[])
    assert find_isomorphism(res_w.category, res_c.category) is not None


def test_two_pipeline_symmetry(base):
    # the roles of weight and argument can be exchanged; the results are
    # equivalent categories
    W = weight_on_op_arrow()
    P = diagram_pick0()
    lhs = weighted_sigma_colimit(W, P, wide_all(base), test_family=[])
    opb = op_dual(base)
    rhs = weighted_sigma_colimit(P, W, wide_all(opb), test_family=[])
    assert lhs.status == rhs.status == "finite"
    assert categories_equivalent(lhs.category, rhs.category)


def test_empty_weight_gives_empty_colimit(base):
    from sigmacat.fincat import empty_category, mk_fincat
    empty = empty_category()
    opb = op_dual(base)
    bang = Functor(empty, empty, {}, {})
    W = CatDiagram(opb, {"0": empty, "1": empty},
                   {f: Functor(empty, empty, {}, {})
                    for f in opb.all_one_cells()},
                   {x: NatTransf(Functor(empty, empty, {}, {}),
                                 Functor(empty, empty, {}, {}), {})
                    for x in opb.all_two_cells()})
    P = diagram_pick0()
    res = weighted_sigma_colimit(W, P, wide_all(base), test_family=[])
    assert res.status == "finite"
    assert res.category.objects == ()


def test_lemma_cone_surjectivity(base):
    # every object of the realized colimit is hit by a cone component
    P = diagram_pick0()
    res = conical_sigma_colimit(P, wide_all(base), test_family=[])
    hit = set()
    for A in base.objects:
        for x in P.on_obj[A].objects:
            hit.add(res.cone.components[A].obj_map[x])
    assert hit == set(res.category.objects)


# ---------------------------------------------------------------------------
# Weighted limits


def test_weighted_limit_over_terminal_base_is_functor_category():
    t2 = terminal_2cat()
    W = constant_diagram(t2, arrow_category())
    P = constant_diagram(t2, iso_pair_category())
    h = weighted_limit_cat(W, P, PSEUDO)
    fc = functor_category(arrow_category(), iso_pair_category())
    assert find_isomorphism(h.cat, fc) is not None


def test_representables_come_out_of_the_second_variable(base):
    # maps out of a fixed category into the weighted limit agree with the
    # limit of the mapped diagram
    W = constant_diagram(base, terminal_category())
    P = diagram_pick0()
    B = arrow_category()
    lhs = functor_category(B, weighted_limit_cat(W, P, LAX).cat)
    from sigmacat.transforms import cotensor_diagram
    rhs = weighted_limit_cat(W, cotensor_diagram(B, P), LAX)
    assert len(lhs.objects) == len(rhs.cat.objects)
    assert find_isomorphism(lhs, rhs.cat) is not None


# ---------------------------------------------------------------------------
# Bilimits


def test_biproduct_is_the_product():
    from sigmacat.fincat import discrete_category
    from sigmacat.two_cat import two_cat_from_cat
    d2 = two_cat_from_cat(discrete_category(["a", "b"]))
    C, D = arrow_category(), iso_pair_category()
    F = CatDiagram(d2, {"a": C, "b": D},
                   {d2.id1["a"]: identity_functor(C),
                    d2.id1["b"]: identity_functor(D)},
                   {d2.id2(d2.id1["a"]): idn(identity_functor(C)),
                    d2.id2(d2.id1["b"]): idn(identity_functor(D))})
    W = constant_diagram(d2, terminal_category())
    h = bilimit_cat(W, F)
    assert find_isomorphism(h.cat, product_category(C, D)) is not None


def _inserter_data():
    two = arrow_category()
    const1 = Functor(two, two, {"0": "1", "1": "1"},
                     {a: "id_1" for a in two.arrows})
    return two, identity_functor(two), const1


def explicit_inserter(C, D, F, G, invertible):
    """Objects (c, gamma: F c -> G c); arrows compatible h: c -> c'."""
    from sigmacat.fincat import mk_fincat
    objs, info = [], {}
    for c in C.objects:
        for gam in D.hom(F.obj_map[c], G.obj_map[c]):
            if invertible and not D.is_iso(gam):
                continue
            o = f"({c},{gam})"
            objs.append(o)
            info[o] = (c, gam)
    arrows, identity, compose = {}, {}, {}
    for o, (c, gam) in info.items():
        for o2, (c2, gam2) in info.items():
            for h in C.hom(c, c2):
                if D.compose[(gam2, F.arr_map[h])] == \
                        D.compose[(G.arr_map[h], gam)]:
                    arrows[f"{h}@{o}>{o2}"] = (o, o2)
        identity[o] = f"{C.identity[c]}@{o}>{o}"
    for n1, (o1, o2) in arrows.items():
        h1 = n1.split("@")[0]
        for n2, (o2b, o3) in arrows.items():
            if o2b != o2:
                continue
            h2 = n2.split("@")[0]
            compose[(n2, n1)] = f"{C.compose[(h2, h1)]}@{o1}>{o3}"
    return mk_fincat(objs, arrows, identity, compose)


def test_biinserter_matches_explicit_description():
    from sigmacat.cli import _inserter_like
    two, F, G = _inserter_data()
    h = _inserter_like(F, G, "biinserter", None)
    explicit = explicit_inserter(two, two, F, G, invertible=False)
    assert validate_category(explicit).ok
    assert categories_equivalent(h.cat, explicit)


def test_biequalizer_is_the_invertible_inserter():
    from sigmacat.cli import _inserter_like
    two, F, G = _inserter_data()
    heq = _inserter_like(F, G, "biequalizer", None)
    explicit = explicit_inserter(two, two, F, G, invertible=True)
    assert categories_equivalent(heq.cat, explicit)
    # and on a parallel pair of equal functors both notions collapse
    hid = _inserter_like(F, F, "biequalizer", None)
    assert categories_equivalent(
        hid.cat, explicit_inserter(two, two, F, F, invertible=True))


# ---------------------------------------------------------------------------
# Pointwise limits and interchange


def _product_diagram_from(P, left, right):
    """Spread a diagram on the left base constantly along the right base."""
    prod = two_cat_product(left, right)
    on_obj, on_1, on_2 = {}, {}, {}
    for A in left.objects:
        for B in right.objects:
            on_obj[pair_name(A, B)] = P.on_obj[A]
    for f in left.all_one_cells():
        for g in right.all_one_cells():
            on_1[pair_name(f, g)] = P.on_1[f]
    for x in left.all_two_cells():
        for y in right.all_two_cells():
            on_2[pair_name(x, y)] = P.on_2[x]
    return CatDiagram(prod, on_obj, on_1, on_2)


def test_pointwise_limits_on_trivial_and_arrow_base(base):
    P = diagram_pick0()
    t2 = terminal_2cat()
    W = constant_diagram(base, terminal_category())
    T1 = _product_diagram_from(P, base, t2)
    res1 = pointwise_limit_check(T1, base, t2, W, PSEUDO)
    assert all(ok for _, ok in res1)
    T2 = _product_diagram_from(P, base, base)
    res2 = pointwise_limit_check(T2, base, base, W, PSEUDO)
    assert all(ok for _, ok in res2)
    res3 = pointwise_limit_check(T2, base, base, W, LAX)
    assert all(ok for _, ok in res3)


def test_interchange_on_two_fixtures(base):
    P = diagram_pick0()
    T = _product_diagram_from(P, base, base)
    k1 = constant_diagram(base, terminal_category())
    ok, nl, nr = interchange_check(k1, k1, T, base, base, PSEUDO, PSEUDO)
    assert ok and nl == nr
    ok2, nl2, nr2 = interchange_check(k1, k1, T, base, base, LAX, PSEUDO)
    assert ok2
    # degenerate: a diagram valued at the empty category on one side
    from sigmacat.fincat import empty_category
    E = constant_diagram(base, empty_category())
    TE = _product_diagram_from(E, base, base)
    ok3, nl3, nr3 = interchange_check(k1, k1, TE, base, base, PSEUDO, PSEUDO)
    assert ok3 and nl3 == nr3


# ---------------------------------------------------------------------------
# Coends


def test_coend_over_one_object_base():
    t2 = terminal_2cat()
    C = arrow_category()
    prod = two_cat_product(op_dual(t2), t2)
    T = CatDiagram(prod, {pair_name("*", "*"): C},
                   {pair_name("id_*", "id_*"): identity_functor(C)},
                   {pair_name("i2_id_*", "i2_id_*"): idn(identity_functor(C))})
    out, cert = coend_eps(T, t2, PSEUDO)
    assert out.finite
    assert all(ok for _, ok in cert)
    assert find_isomorphism(out.realization, C) is not None


def _tensor_diagram(W, P, base):
    prod = two_cat_product(op_dual(base), base)

    def split(o):
        depth = 0
        for i, ch in enumerate(o):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 1:
                return o[1:i], o[i + 1:-1]

    on_obj, on_1, on_2 = {}, {}, {}
    for A in base.objects:
        for B in base.objects:
            on_obj[pair_name(A, B)] = product_category(W.on_obj[A], P.on_obj[B])
    for f in base.all_one_cells():
        for g in base.all_one_cells():
            A2, A = base.src1(f), base.tgt1(f)
            B, B2 = base.src1(g), base.tgt1(g)
            src = on_obj[pair_name(A, B)]
            tgt = on_obj[pair_name(A2, B2)]
            om = {o: pair_name(W.on_1[f].obj_map[split(o)[0]],
                               P.on_1[g].obj_map[split(o)[1]])
                  for o in src.objects}
            am = {a: pair_name(W.on_1[f].arr_map[split(a)[0]],
                               P.on_1[g].arr_map[split(a)[1]])
                  for a in src.arrows}
            on_1[pair_name(f, g)] = Functor(src, tgt, om, am)
    for x in base.all_two_cells():
        for y in base.all_two_cells():
            f, f2 = base.src2(x), base.tgt2(x)
            g, g2 = base.src2(y), base.tgt2(y)
            comps = {o: pair_name(W.on_2[x].components[split(o)[0]],
                                  P.on_2[y].components[split(o)[1]])
                     for o in on_1[pair_name(f, g)].source.objects}
            on_2[pair_name(x, y)] = NatTransf(on_1[pair_name(f, g)],
                                              on_1[pair_name(f2, g2)], comps)
    return CatDiagram(prod, on_obj, on_1, on_2)


def test_coend_of_tensor_matches_weighted_colimit(base):
    W = weight_on_op_arrow()
    P = diagram_pick0()
    T = _tensor_diagram(W, P, base)
    out, cert = coend_eps(T, base, PSEUDO)
    assert out.finite and all(ok for _, ok in cert)
    res = weighted_sigma_colimit(W, P, wide_all(base), test_family=[])
    assert find_isomorphism(out.realization, res.category) is not None


def test_coend_over_empty_base_is_empty():
    from sigmacat.fincat import empty_category
    from sigmacat.two_cat import mk_fin2cat
    e2 = mk_fin2cat((), {}, {}, {}, {})
    prod = two_cat_product(op_dual(e2), e2)
    T = CatDiagram(prod, {}, {}, {})
    out, cert = coend_eps(T, e2, PSEUDO, test_family=[])
    assert out.finite
    assert out.realization.objects == ()


# ---------------------------------------------------------------------------
# Commutation of filtered colimits with finite limits, one instance


def test_filtered_colimit_commutes_with_finite_limit_one_instance():
    # index: the walking arrow with everything marked; base for the limit:
    # the one-object 2-category; weight: the walking arrow category
    t2 = terminal_2cat()
    base = arrow_2cat()
    C = arrow_category()
    X0, X1 = terminal_category(), arrow_category()
    pick0 = Functor(X0, X1, {"*": "0"}, {"id_*": "id_0"})
    # diagram i -> Cat(C, X_i) with action by postcomposition
    fc0 = functor_category_full(C, X0)
    fc1 = functor_category_full(C, X1)
    om = {}
    am = {}
    for name, H in fc0.functors.items():
        om[name] = fc1.name_of_functor(compose_functors(pick0, H))
    for name, n in fc0.transfs.items():
        from sigmacat.fincat import whisker_functor_nat
        am[name] = fc1.name_of_transf(whisker_functor_nat(pick0, n))
    act = Functor(fc0.cat, fc1.cat, om, am)
    lhs_diag = CatDiagram(base, {"0": fc0.cat, "1": fc1.cat},
                          {"id_0": identity_functor(fc0.cat),
                           "id_1": identity_functor(fc1.cat), "f": act},
                          {"i2_id_0": idn(identity_functor(fc0.cat)),
                           "i2_id_1": idn(identity_functor(fc1.cat)),
                           "i2_f": idn(act)})
    lhs = conical_sigma_colimit(lhs_diag, wide_all(base), test_family=[])
    assert lhs.finite
    # pointwise colimit of the X_i, then maps from C into it
    inner_diag = CatDiagram(base, {"0": X0, "1": X1},
                            {"id_0": identity_functor(X0),
                             "id_1": identity_functor(X1), "f": pick0},
                            {"i2_id_0": idn(identity_functor(X0)),
                             "i2_id_1": idn(identity_functor(X1)),
                             "i2_f": idn(pick0)})
    inner = conical_sigma_colimit(inner_diag, wide_all(base), test_family=[])
    assert inner.finite
    rhs = functor_category_full(C, inner.category)
    # canonical comparison out of the colimit of hom categories
    comps, structural = {}, {}
    for A in base.objects:
        fcA = fc0 if A == "0" else fc1
        lam = inner.cone.components[A]
        om = {name: rhs.name_of_functor(compose_functors(lam, H))
              for name, H in fcA.functors.items()}
        am = {}
        for name, n in fcA.transfs.items():
            from sigmacat.fincat import whisker_functor_nat
            am[name] = rhs.name_of_transf(whisker_functor_nat(lam, n))
        comps[A] = Functor(fcA.cat, rhs.cat, om, am)
    for f in base.all_one_cells():
        A, B = base.src1(f), base.tgt1(f)
        fcA = fc0 if A == "0" else fc1
        src = compose_functors(comps[B], lhs_diag.on_1[f])
        comp = {}
        for name, H in fcA.functors.items():
            from sigmacat.fincat import whisker_nat_functor
            cell = whisker_nat_functor(inner.cone.structural[f], H)
            comp[name] = rhs.name_of_transf(cell)
        structural[f] = NatTransf(src, comps[A], comp)
    cone = SigmaCone(lhs_diag, frozenset(wide_all(base).arrows), rhs.cat,
                     comps, structural)
    assert check_sigma_cone(cone).ok
    comparison = induced_from_colimit(lhs, cone)
    assert is_equivalence(comparison).verdict
