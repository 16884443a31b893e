"""Finite 2-categories with total horizontal-composition tables.

A Fin2Cat keeps one FinCat per hom (its objects are the 1-cells, its
arrows the 2-cells), a chosen identity 1-cell per object, and the whole
horizontal composition table on 1-cells and on 2-cells.  1-cell and
2-cell names are globally unique across homs so the tables can be flat.
Whiskering is not stored; it is derived from the 2-cell table with
identity 2-cells.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fincat import (FinCat, ValidationReport, mk_fincat, product_category,
                     validate_category)
from .errors import Inconsistency, ValidationError


@dataclass(frozen=True)
class Fin2Cat:
    objects: tuple[str, ...]
    hom: dict  # (A, B) -> FinCat
    id1: dict  # object -> 1-cell name
    hcomp1: dict  # (g, f) -> 1-cell name of g∘f
    hcomp2: dict  # (beta, alpha) -> 2-cell name of beta*alpha

    # -- locating cells

    def hom_of_1cell(self, f: str) -> tuple[str, str]:
        return self._cell1_home[f]

    def hom_of_2cell(self, a: str) -> tuple[str, str]:
        return self._cell2_home[a]

    def __post_init__(self):
        c1, c2 = {}, {}
        for pair, h in self.hom.items():
            for f in h.objects:
                if f in c1:
                    raise ValidationError(f"1-cell name {f} reused across homs")
                c1[f] = pair
            for a in h.arrows:
                if a in c2:
                    raise ValidationError(f"2-cell name {a} reused across homs")
                c2[a] = pair
        object.__setattr__(self, "_cell1_home", c1)
        object.__setattr__(self, "_cell2_home", c2)

    def one_cells(self, A: str, B: str) -> list[str]:
        h = self.hom.get((A, B))
        return sorted(h.objects) if h else []

    def all_one_cells(self) -> list[str]:
        return sorted(self._cell1_home)

    def all_two_cells(self) -> list[str]:
        return sorted(self._cell2_home)

    def two_cells_between(self, f: str, g: str) -> list[str]:
        """2-cells f => g (f, g parallel 1-cells)."""
        pair = self._cell1_home[f]
        return self.hom[pair].hom(f, g)

    def src1(self, f: str) -> str:
        return self._cell1_home[f][0]

    def tgt1(self, f: str) -> str:
        return self._cell1_home[f][1]

    def src2(self, a: str) -> str:
        pair = self._cell2_home[a]
        return self.hom[pair].src(a)

    def tgt2(self, a: str) -> str:
        pair = self._cell2_home[a]
        return self.hom[pair].tgt(a)

    def id2(self, f: str) -> str:
        pair = self._cell1_home[f]
        return self.hom[pair].identity[f]

    def vcomp(self, b: str, a: str) -> str:
        """Vertical composite b∘a (a first)."""
        pair = self._cell2_home[a]
        return self.hom[pair].compose[(b, a)]

    def comp1(self, g: str, f: str) -> str:
        return self.hcomp1[(g, f)]

    def comp2(self, b: str, a: str) -> str:
        return self.hcomp2[(b, a)]

    def whisker_l(self, g: str, a: str) -> str:
        """g acting on a: the 2-cell g*a for a 1-cell g after 2-cell a."""
        return self.hcomp2[(self.id2(g), a)]

    def whisker_r(self, b: str, f: str) -> str:
        """b acting on f: the 2-cell b*f for a 2-cell b after 1-cell f."""
        return self.hcomp2[(b, self.id2(f))]

    def is_invertible_2cell(self, a: str) -> bool:
        pair = self._cell2_home[a]
        return self.hom[pair].is_iso(a)

    def is_identity_2cell(self, a: str) -> bool:
        pair = self._cell2_home[a]
        return self.hom[pair].is_identity(a)


def mk_fin2cat(objects, hom, id1, hcomp1, hcomp2) -> Fin2Cat:
    return Fin2Cat(
        objects=tuple(sorted(objects)),
        hom={k: hom[k] for k in sorted(hom)},
        id1=dict(sorted(id1.items())),
        hcomp1=dict(sorted(hcomp1.items())),
        hcomp2=dict(sorted(hcomp2.items())),
    )


# ---------------------------------------------------------------------------
# Validation


def validate_2category(a: Fin2Cat) -> ValidationReport:
    """Exhaustive scan of all strict 2-category laws."""
    rep = ValidationReport("Fin2Cat")
    for pair, h in a.hom.items():
        sub = validate_category(h)
        for v in sub.violations:
            rep.add(f"hom{pair}:{v.code}", v.cells, v.detail)
    for A in a.objects:
        i = a.id1.get(A)
        if i is None or i not in a._cell1_home or a._cell1_home[i] != (A, A):
            rep.add("id1", (A,), f"object {A} lacks a well-typed identity 1-cell")
    if not rep.ok:
        return rep

    cells1 = a.all_one_cells()
    # hcomp1 totality and typing
    for g in cells1:
        for f in cells1:
            if a.src1(g) != a.tgt1(f):
                continue
            if (g, f) not in a.hcomp1:
                rep.add("hcomp1-missing", (g, f), "composable 1-cells have no entry")
                continue
            gf = a.hcomp1[(g, f)]
            if a._cell1_home.get(gf) != (a.src1(f), a.tgt1(g)):
                rep.add("hcomp1-typing", (g, f, gf), "composite 1-cell mistyped")
    if not rep.ok:
        return rep
    # hcomp2 totality and typing
    cells2 = a.all_two_cells()
    for b in cells2:
        for x in cells2:
            if a.src1(a.src2(b)) != a.tgt1(a.src2(x)):
                continue
            if (b, x) not in a.hcomp2:
                rep.add("hcomp2-missing", (b, x), "composable 2-cells have no entry")
                continue
            bx = a.hcomp2[(b, x)]
            want_src = a.hcomp1[(a.src2(b), a.src2(x))]
            want_tgt = a.hcomp1[(a.tgt2(b), a.tgt2(x))]
            if a.src2(bx) != want_src or a.tgt2(bx) != want_tgt:
                rep.add("hcomp2-typing", (b, x, bx), "composite 2-cell mistyped")
    if not rep.ok:
        return rep
    # units
    for f in cells1:
        A, B = a._cell1_home[f]
        if a.hcomp1[(a.id1[B], f)] != f or a.hcomp1[(f, a.id1[A])] != f:
            rep.add("unit1", (f,), f"identity 1-cells are not units at {f}")
    for x in cells2:
        f = a.src2(x)
        A, B = a._cell1_home[f]
        if a.hcomp2[(a.id2(a.id1[B]), x)] != x or a.hcomp2[(x, a.id2(a.id1[A]))] != x:
            rep.add("unit2", (x,), f"identity 2-cells of identity 1-cells are not units at {x}")
    # associativity of 1-cell composition
    for h in cells1:
        for g in cells1:
            if a.src1(h) != a.tgt1(g):
                continue
            for f in cells1:
                if a.src1(g) != a.tgt1(f):
                    continue
                if a.hcomp1[(a.hcomp1[(h, g)], f)] != a.hcomp1[(h, a.hcomp1[(g, f)])]:
                    rep.add("assoc1", (h, g, f), "1-cell composition not associative")
    # associativity of 2-cell horizontal composition
    for z in cells2:
        for y in cells2:
            if a.src1(a.src2(z)) != a.tgt1(a.src2(y)):
                continue
            for x in cells2:
                if a.src1(a.src2(y)) != a.tgt1(a.src2(x)):
                    continue
                if a.hcomp2[(a.hcomp2[(z, y)], x)] != a.hcomp2[(z, a.hcomp2[(y, x)])]:
                    rep.add("assoc2", (z, y, x), "2-cell horizontal composition not associative")
    # functoriality of hcomp: identities and interchange
    for g in cells1:
        for f in cells1:
            if a.src1(g) != a.tgt1(f):
                continue
            if a.hcomp2[(a.id2(g), a.id2(f))] != a.id2(a.hcomp1[(g, f)]):
                rep.add("hcomp-id", (g, f), "horizontal composite of identity 2-cells wrong")
    for pairL, hL in a.hom.items():
        for pairR, hR in a.hom.items():
            if pairR[1] != pairL[0]:
                continue
            for b2 in sorted(hL.arrows):
                for b1 in sorted(hL.arrows):
                    if hL.tgt(b1) != hL.src(b2):
                        continue
                    for a2 in sorted(hR.arrows):
                        for a1 in sorted(hR.arrows):
                            if hR.tgt(a1) != hR.src(a2):
                                continue
                            lhs = a.hcomp2[(hL.compose[(b2, b1)], hR.compose[(a2, a1)])]
                            rhs_cat = a.hom[(pairR[0], pairL[1])]
                            rhs = rhs_cat.compose[(a.hcomp2[(b2, a2)], a.hcomp2[(b1, a1)])]
                            if lhs != rhs:
                                rep.add("interchange", (b2, b1, a2, a1),
                                        "interchange law fails")
    return rep


def require_valid_2cat(a: Fin2Cat, what: str = "2-category") -> None:
    rep = validate_2category(a)
    if not rep.ok:
        raise ValidationError(f"invalid {what}: {rep.violations[0].detail}")


# ---------------------------------------------------------------------------
# Wide subcategories and markings


@dataclass(frozen=True)
class WideSub:
    parent: Fin2Cat
    arrows: frozenset  # 1-cell names

    def __contains__(self, f: str) -> bool:
        return f in self.arrows


def validate_wide_sub(w: WideSub) -> ValidationReport:
    rep = ValidationReport("WideSub")
    a = w.parent
    for f in w.arrows:
        if f not in a._cell1_home:
            rep.add("unknown-1cell", (f,), f"{f} is not a 1-cell of the parent")
    if not rep.ok:
        return rep
    for A in a.objects:
        if a.id1[A] not in w.arrows:
            rep.add("missing-identity", (A,), f"identity of {A} not in the subcategory")
    for g in sorted(w.arrows):
        for f in sorted(w.arrows):
            if a.src1(g) == a.tgt1(f) and a.hcomp1[(g, f)] not in w.arrows:
                rep.add("not-closed", (g, f), f"composite {a.hcomp1[(g, f)]} missing")
    return rep


def wide_all(a: Fin2Cat) -> WideSub:
    """The underlying category: every 1-cell is marked."""
    return WideSub(a, frozenset(a.all_one_cells()))


def wide_identities(a: Fin2Cat) -> WideSub:
    """Only the identity 1-cells are marked."""
    return WideSub(a, frozenset(a.id1.values()))


def wide_from(a: Fin2Cat, arrows) -> WideSub:
    w = WideSub(a, frozenset(arrows) | frozenset(a.id1.values()))
    rep = validate_wide_sub(w)
    if not rep.ok:
        raise ValidationError(f"not a wide subcategory: {rep.violations[0].detail}")
    return w


@dataclass(frozen=True)
class Marked2Cat:
    cat: Fin2Cat
    sigma: WideSub

    def __post_init__(self):
        if self.sigma.parent is not self.cat and self.sigma.parent != self.cat:
            raise ValidationError("sigma is not a subcategory of this 2-category")


# ---------------------------------------------------------------------------
# Duals and pi0


def op_dual(a: Fin2Cat) -> Fin2Cat:
    """Reverse 1-cells, keep 2-cells.  Involutive on the nose."""
    return mk_fin2cat(
        objects=a.objects,
        hom={(B, A): h for (A, B), h in a.hom.items()},
        id1=dict(a.id1),
        hcomp1={(f, g): h for (g, f), h in a.hcomp1.items()},
        hcomp2={(x, y): z for (y, x), z in a.hcomp2.items()},
    )


def co_dual(a: Fin2Cat) -> Fin2Cat:
    """Reverse 2-cells, keep 1-cells.  Involutive on the nose."""
    return mk_fin2cat(
        objects=a.objects,
        hom={pair: h.op() for pair, h in a.hom.items()},
        id1=dict(a.id1),
        hcomp1=dict(a.hcomp1),
        hcomp2=dict(a.hcomp2),
    )


def transport_sigma(w: WideSub, b: Fin2Cat) -> WideSub:
    """Reinterpret a marking in a dual with the same 1-cell names."""
    return WideSub(b, w.arrows)


def pi0(a: Fin2Cat) -> FinCat:
    """Collapse each hom to its connected components.

    Composition is induced on component classes and its well-definedness
    is verified; a violation means the input tables were inconsistent.
    """
    cls_of = {}
    class_names = {}
    for pair in sorted(a.hom):
        h = a.hom[pair]
        parent = {f: f for f in h.objects}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for arr, (s, t) in h.arrows.items():
            rs, rt = find(s), find(t)
            if rs != rt:
                parent[max(rs, rt)] = min(rs, rt)
        groups = {}
        for f in h.objects:
            groups.setdefault(find(f), set()).add(f)
        for members in groups.values():
            name = f"[{min(members)}]"
            class_names[(pair, name)] = frozenset(members)
            for f in members:
                cls_of[f] = name

    arrows = {}
    for (pair, name), members in class_names.items():
        arrows[name] = pair
    identity = {A: cls_of[a.id1[A]] for A in a.objects}
    compose = {}
    for (pairG, gname), gmem in class_names.items():
        for (pairF, fname), fmem in class_names.items():
            if pairF[1] != pairG[0]:
                continue
            results = {cls_of[a.hcomp1[(g, f)]] for g in gmem for f in fmem}
            if len(results) != 1:
                raise Inconsistency(
                    f"pi0 composition ill-defined on ({gname},{fname})")
            compose[(gname, fname)] = results.pop()
    return mk_fincat(a.objects, arrows, identity, compose)


def pi0_class_map(a: Fin2Cat) -> dict:
    """1-cell -> component-class arrow name of pi0(a)."""
    out = {}
    for pair in sorted(a.hom):
        h = a.hom[pair]
        parent = {f: f for f in h.objects}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for arr, (s, t) in h.arrows.items():
            rs, rt = find(s), find(t)
            if rs != rt:
                parent[max(rs, rt)] = min(rs, rt)
        groups = {}
        for f in h.objects:
            groups.setdefault(find(f), set()).add(f)
        for members in groups.values():
            name = f"[{min(members)}]"
            for f in members:
                out[f] = name
    return out


# ---------------------------------------------------------------------------
# Constructions


def two_cat_from_cat(c: FinCat) -> Fin2Cat:
    """A 1-category viewed as a 2-category with only identity 2-cells."""
    hom = {}
    for A in c.objects:
        for B in c.objects:
            cells = c.hom(A, B)
            arrows = {f"i2_{f}": (f, f) for f in cells}
            hom[(A, B)] = mk_fincat(cells, arrows,
                                    {f: f"i2_{f}" for f in cells},
                                    {(f"i2_{f}", f"i2_{f}"): f"i2_{f}" for f in cells})
    hcomp1 = dict(c.compose)
    hcomp2 = {(f"i2_{g}", f"i2_{f}"): f"i2_{h}" for (g, f), h in c.compose.items()}
    return mk_fin2cat(c.objects, hom, dict(c.identity), hcomp1, hcomp2)


def terminal_2cat() -> Fin2Cat:
    from .fincat import terminal_category
    return two_cat_from_cat(terminal_category())


def two_cat_product(a: Fin2Cat, b: Fin2Cat) -> Fin2Cat:
    """Cartesian product; cells are pair strings built by product_category."""
    objects = [pair_name(A, B) for A in sorted(a.objects) for B in sorted(b.objects)]
    hom = {}
    for A1 in a.objects:
        for A2 in a.objects:
            for B1 in b.objects:
                for B2 in b.objects:
                    hom[(pair_name(A1, B1), pair_name(A2, B2))] = product_category(
                        a.hom[(A1, A2)], b.hom[(B1, B2)])
    id1 = {pair_name(A, B): pair_name(a.id1[A], b.id1[B])
           for A in a.objects for B in b.objects}
    hcomp1 = {}
    for (g1, f1), h1 in a.hcomp1.items():
        for (g2, f2), h2 in b.hcomp1.items():
            hcomp1[(pair_name(g1, g2), pair_name(f1, f2))] = pair_name(h1, h2)
    hcomp2 = {}
    for (y1, x1), z1 in a.hcomp2.items():
        for (y2, x2), z2 in b.hcomp2.items():
            hcomp2[(pair_name(y1, y2), pair_name(x1, x2))] = pair_name(z1, z2)
    return mk_fin2cat(objects, hom, id1, hcomp1, hcomp2)


def pair_name(x: str, y: str) -> str:
    return f"({x},{y})"


def split_pair_name(name: str) -> tuple[str, str]:
    depth = 0
    for i, ch in enumerate(name):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 1:
            return name[1:i], name[i + 1:-1]
    raise ValidationError(f"not a pair name: {name}")


def free_2cell_2cat() -> Fin2Cat:
    """Two objects, parallel 1-cells u, v : a -> b, one 2-cell th : u => v."""
    from .fincat import mk_fincat as _mk
    hom_ab = _mk(("u", "v"),
                 {"i2_u": ("u", "u"), "i2_v": ("v", "v"), "th": ("u", "v")},
                 {"u": "i2_u", "v": "i2_v"},
                 {("i2_u", "i2_u"): "i2_u", ("i2_v", "i2_v"): "i2_v",
                  ("th", "i2_u"): "th", ("i2_v", "th"): "th"})
    hom_aa = _mk(("id_a",), {"i2_id_a": ("id_a", "id_a")}, {"id_a": "i2_id_a"},
                 {("i2_id_a", "i2_id_a"): "i2_id_a"})
    hom_bb = _mk(("id_b",), {"i2_id_b": ("id_b", "id_b")}, {"id_b": "i2_id_b"},
                 {("i2_id_b", "i2_id_b"): "i2_id_b"})
    hom_ba = _mk((), {}, {}, {})
    hom = {("a", "a"): hom_aa, ("a", "b"): hom_ab, ("b", "a"): hom_ba, ("b", "b"): hom_bb}
    hcomp1 = {}
    hcomp2 = {}
    for f in ("u", "v"):
        hcomp1[(f, "id_a")] = f
        hcomp1[("id_b", f)] = f
    hcomp1[("id_a", "id_a")] = "id_a"
    hcomp1[("id_b", "id_b")] = "id_b"
    for x in ("i2_u", "i2_v", "th"):
        hcomp2[(x, "i2_id_a")] = x
        hcomp2[("i2_id_b", x)] = x
    hcomp2[("i2_id_a", "i2_id_a")] = "i2_id_a"
    hcomp2[("i2_id_b", "i2_id_b")] = "i2_id_b"
    return mk_fin2cat(("a", "b"), hom, {"a": "id_a", "b": "id_b"}, hcomp1, hcomp2)


def two_parallel_2cells_2cat() -> Fin2Cat:
    """Two objects, 1-cells u, v : a -> b, two 2-cells th, et : u => v.

    The free shape for equifier-style diagrams; homs are free on the
    generating 2-cells (no composites arise: th and et are parallel and
    not composable with each other).
    """
    from .fincat import mk_fincat as _mk
    hom_ab = _mk(("u", "v"),
                 {"i2_u": ("u", "u"), "i2_v": ("v", "v"),
                  "th": ("u", "v"), "et": ("u", "v")},
                 {"u": "i2_u", "v": "i2_v"},
                 {("i2_u", "i2_u"): "i2_u", ("i2_v", "i2_v"): "i2_v",
                  ("th", "i2_u"): "th", ("i2_v", "th"): "th",
                  ("et", "i2_u"): "et", ("i2_v", "et"): "et"})
    hom_aa = _mk(("id_a",), {"i2_id_a": ("id_a", "id_a")}, {"id_a": "i2_id_a"},
                 {("i2_id_a", "i2_id_a"): "i2_id_a"})
    hom_bb = _mk(("id_b",), {"i2_id_b": ("id_b", "id_b")}, {"id_b": "i2_id_b"},
                 {("i2_id_b", "i2_id_b"): "i2_id_b"})
    hom_ba = _mk((), {}, {}, {})
    hom = {("a", "a"): hom_aa, ("a", "b"): hom_ab, ("b", "a"): hom_ba, ("b", "b"): hom_bb}
    hcomp1 = {("id_a", "id_a"): "id_a", ("id_b", "id_b"): "id_b"}
    hcomp2 = {("i2_id_a", "i2_id_a"): "i2_id_a", ("i2_id_b", "i2_id_b"): "i2_id_b"}
    for f in ("u", "v"):
        hcomp1[(f, "id_a")] = f
        hcomp1[("id_b", f)] = f
    for x in ("i2_u", "i2_v", "th", "et"):
        hcomp2[(x, "i2_id_a")] = x
        hcomp2[("i2_id_b", x)] = x
    return mk_fin2cat(("a", "b"), hom, {"a": "id_a", "b": "id_b"}, hcomp1, hcomp2)
