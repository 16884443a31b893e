"""Finite categories given by total composition tables.

A FinCat stores its objects, its arrows with source and target, a chosen
identity arrow per object, and the *entire* composition table.  Nothing
is presented or lazily derived, so every categorical law is a finite
loop and validation is exhaustive.  All values are immutable after
construction and every operation here is a pure function of its inputs;
enumeration order is fixed (lexicographic by identifier) so that reports
and generated categories are reproducible run to run.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .config import Meter
from .errors import ValidationError


# ---------------------------------------------------------------------------
# Core value types


@dataclass(frozen=True)
class FinCat:
    """A finite category: objects, typed arrows, identities, full table.

    ``compose[(g, f)]`` is the composite ``g after f`` and is defined for
    exactly the pairs with ``tgt(f) == src(g)``.
    """

    objects: tuple[str, ...]
    arrows: dict  # name -> (src, tgt)
    identity: dict  # object -> arrow name
    compose: dict  # (g, f) -> arrow name

    def src(self, a: str) -> str:
        return self.arrows[a][0]

    def tgt(self, a: str) -> str:
        return self.arrows[a][1]

    def arrow_names(self) -> list[str]:
        return sorted(self.arrows)

    def hom(self, x: str, y: str) -> list[str]:
        return sorted(a for a, (s, t) in self.arrows.items() if s == x and t == y)

    def comp(self, g: str, f: str) -> str:
        return self.compose[(g, f)]

    def comp_path(self, path: list[str]) -> str:
        """Composite of a path listed first-to-last; path must be nonempty."""
        out = path[0]
        for a in path[1:]:
            out = self.compose[(a, out)]
        return out

    def is_identity(self, a: str) -> bool:
        return self.identity.get(self.src(a)) == a

    def is_iso(self, a: str) -> bool:
        return self.inverse(a) is not None

    def inverse(self, a: str) -> str | None:
        s, t = self.arrows[a]
        for b in self.hom(t, s):
            if self.compose[(b, a)] == self.identity[s] and \
               self.compose[(a, b)] == self.identity[t]:
                return b
        return None

    def op(self) -> "FinCat":
        """Same arrow names, sources and targets swapped."""
        return FinCat(
            objects=self.objects,
            arrows={a: (t, s) for a, (s, t) in self.arrows.items()},
            identity=dict(self.identity),
            compose={(f, g): h for (g, f), h in self.compose.items()},
        )


def mk_fincat(objects, arrows, identity, compose) -> FinCat:
    """Normalize constructor: sorts object order, copies tables."""
    return FinCat(
        objects=tuple(sorted(objects)),
        arrows={a: (s, t) for a, (s, t) in sorted(arrows.items())},
        identity=dict(sorted(identity.items())),
        compose=dict(sorted(compose.items())),
    )


@dataclass(frozen=True)
class Functor:
    source: FinCat
    target: FinCat
    obj_map: dict  # object -> object
    arr_map: dict  # arrow -> arrow

    def on_obj(self, x: str) -> str:
        return self.obj_map[x]

    def on_arr(self, a: str) -> str:
        return self.arr_map[a]

    def key(self) -> tuple:
        return (tuple(sorted(self.obj_map.items())),
                tuple(sorted(self.arr_map.items())))


@dataclass(frozen=True)
class NatTransf:
    source: Functor
    target: Functor
    components: dict  # object of source.source -> arrow of target cat

    def at(self, x: str) -> str:
        return self.components[x]

    def key(self) -> tuple:
        return tuple(sorted(self.components.items()))


# ---------------------------------------------------------------------------
# Validation


@dataclass(frozen=True)
class Violation:
    code: str
    cells: tuple
    detail: str


@dataclass
class ValidationReport:
    subject: str
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, code: str, cells, detail: str) -> None:
        self.violations.append(Violation(code, tuple(cells), detail))

    def __bool__(self) -> bool:
        return self.ok


def validate_category(c: FinCat) -> ValidationReport:
    """Exhaustive law scan.  Empty report iff ``c`` is a category."""
    rep = ValidationReport("FinCat")
    for x in c.objects:
        i = c.identity.get(x)
        if i is None:
            rep.add("identity-missing", (x,), f"object {x} has no identity arrow")
        elif i not in c.arrows:
            rep.add("identity-unknown", (x, i), f"identity {i} is not an arrow")
        elif c.arrows[i] != (x, x):
            rep.add("identity-typing", (x, i), f"identity {i} is not an endo of {x}")
    for a, (s, t) in c.arrows.items():
        if s not in c.objects or t not in c.objects:
            rep.add("arrow-typing", (a,), f"arrow {a} has unknown endpoints")
    names = set(c.arrows)
    for (g, f), h in c.compose.items():
        if g not in names or f not in names:
            rep.add("compose-unknown", (g, f), "table entry over unknown arrows")
            continue
        if c.tgt(f) != c.src(g):
            rep.add("compose-untyped", (g, f), "pair is not composable")
        elif h not in names:
            rep.add("compose-unknown-result", (g, f, h), "result is not an arrow")
        elif c.arrows[h] != (c.src(f), c.tgt(g)):
            rep.add("compose-result-typing", (g, f, h),
                    f"{g}∘{f}={h} has the wrong endpoints")
    for g in sorted(names):
        for f in sorted(names):
            if c.tgt(f) == c.src(g) and (g, f) not in c.compose:
                rep.add("compose-missing", (g, f), "composable pair has no entry")
    if not rep.ok:
        return rep
    for a in sorted(names):
        s, t = c.arrows[a]
        if c.compose[(a, c.identity[s])] != a:
            rep.add("identity-law", (a, c.identity[s]), f"{a}∘id != {a}")
        if c.compose[(c.identity[t], a)] != a:
            rep.add("identity-law", (c.identity[t], a), f"id∘{a} != {a}")
    for h in sorted(names):
        for g in sorted(names):
            if c.tgt(g) != c.src(h):
                continue
            for f in sorted(names):
                if c.tgt(f) != c.src(g):
                    continue
                if c.compose[(c.compose[(h, g)], f)] != c.compose[(h, c.compose[(g, f)])]:
                    rep.add("associativity", (h, g, f),
                            f"(h∘g)∘f != h∘(g∘f) at ({h},{g},{f})")
    return rep


def require_valid(c: FinCat, what: str = "category") -> None:
    rep = validate_category(c)
    if not rep.ok:
        raise ValidationError(f"invalid {what}: {rep.violations[0].detail}")


def validate_functor(F: Functor) -> ValidationReport:
    rep = ValidationReport("Functor")
    c, d = F.source, F.target
    for x in c.objects:
        if F.obj_map.get(x) not in d.objects:
            rep.add("obj-map", (x,), f"object {x} is not mapped into the target")
    for a, (s, t) in c.arrows.items():
        fa = F.arr_map.get(a)
        if fa not in d.arrows:
            rep.add("arr-map", (a,), f"arrow {a} is not mapped")
            continue
        if d.arrows[fa] != (F.obj_map[s], F.obj_map[t]):
            rep.add("arr-typing", (a, fa), f"image of {a} has wrong endpoints")
    if not rep.ok:
        return rep
    for x in c.objects:
        if F.arr_map[c.identity[x]] != d.identity[F.obj_map[x]]:
            rep.add("preserves-identity", (x,), f"identity of {x} not preserved")
    for (g, f), h in c.compose.items():
        if F.arr_map[h] != d.compose[(F.arr_map[g], F.arr_map[f])]:
            rep.add("preserves-compose", (g, f), f"F({g}∘{f}) != F({g})∘F({f})")
    return rep


def validate_nat_transf(n: NatTransf) -> ValidationReport:
    rep = ValidationReport("NatTransf")
    F, G = n.source, n.target
    c, d = F.source, F.target
    for x in c.objects:
        a = n.components.get(x)
        if a not in d.arrows:
            rep.add("component-missing", (x,), f"no component at {x}")
        elif d.arrows[a] != (F.obj_map[x], G.obj_map[x]):
            rep.add("component-typing", (x, a), f"component at {x} is mistyped")
    if not rep.ok:
        return rep
    for a, (s, t) in sorted(c.arrows.items()):
        lhs = d.compose[(n.components[t], F.arr_map[a])]
        rhs = d.compose[(G.arr_map[a], n.components[s])]
        if lhs != rhs:
            rep.add("naturality", (a,), f"naturality square fails at {a}")
    return rep


# ---------------------------------------------------------------------------
# Functor and transformation algebra


def identity_functor(c: FinCat) -> Functor:
    return Functor(c, c, {x: x for x in c.objects}, {a: a for a in c.arrows})


def compose_functors(G: Functor, F: Functor) -> Functor:
    """G after F."""
    assert F.target == G.source
    return Functor(
        F.source, G.target,
        {x: G.obj_map[y] for x, y in F.obj_map.items()},
        {a: G.arr_map[b] for a, b in F.arr_map.items()},
    )


def constant_functor(c: FinCat, d: FinCat, y: str) -> Functor:
    return Functor(c, d, {x: y for x in c.objects},
                   {a: d.identity[y] for a in c.arrows})


def identity_nat(F: Functor) -> NatTransf:
    return NatTransf(F, F, {x: F.target.identity[F.obj_map[x]] for x in F.source.objects})


def vcomp_nat(b: NatTransf, a: NatTransf) -> NatTransf:
    """Vertical composite b∘a (a first)."""
    assert a.target.key() == b.source.key()
    d = a.source.target
    return NatTransf(a.source, b.target,
                     {x: d.compose[(b.components[x], a.components[x])]
                      for x in a.components})


def whisker_functor_nat(G: Functor, n: NatTransf) -> NatTransf:
    """G applied after n: the transformation G∘F ⇒ G∘F'."""
    return NatTransf(compose_functors(G, n.source), compose_functors(G, n.target),
                     {x: G.arr_map[a] for x, a in n.components.items()})


def whisker_nat_functor(n: NatTransf, F: Functor) -> NatTransf:
    """n restricted along F: the transformation G∘F ⇒ G'∘F."""
    return NatTransf(compose_functors(n.source, F), compose_functors(n.target, F),
                     {x: n.components[F.obj_map[x]] for x in F.source.objects})


def hcomp_nat(b: NatTransf, a: NatTransf) -> NatTransf:
    """Horizontal composite of b : G⇒G' with a : F⇒F' (a on the inside)."""
    return vcomp_nat(whisker_nat_functor(b, a.target), whisker_functor_nat(b.source, a))


def nat_is_invertible(n: NatTransf) -> bool:
    d = n.source.target
    return all(d.is_iso(a) for a in n.components.values())


def nat_is_identity(n: NatTransf) -> bool:
    d = n.source.target
    return all(d.is_identity(a) for a in n.components.values())


def invert_nat(n: NatTransf) -> NatTransf:
    d = n.source.target
    return NatTransf(n.target, n.source,
                     {x: d.inverse(a) for x, a in n.components.items()})


# ---------------------------------------------------------------------------
# Enumeration (deterministic order, budget guarded)


def enumerate_functors(c: FinCat, d: FinCat, meter: Meter | None = None) -> list[Functor]:
    """All functors c -> d, lexicographic in the object then arrow choices."""
    meter = meter or Meter()
    objs = sorted(c.objects)
    non_id = [a for a in c.arrow_names() if not c.is_identity(a)]
    out = []
    for combo in itertools.product(*(sorted(d.objects) for _ in objs)):
        meter.tick()
        om = dict(zip(objs, combo))
        pools = []
        feasible = True
        for a in non_id:
            s, t = c.arrows[a]
            pool = d.hom(om[s], om[t])
            if not pool:
                feasible = False
                break
            pools.append(pool)
        if not feasible:
            continue
        for arrs in itertools.product(*pools):
            meter.tick()
            am = dict(zip(non_id, arrs))
            for x in c.objects:
                am[c.identity[x]] = d.identity[om[x]]
            F = Functor(c, d, om, am)
            if _functorial(F):
                out.append(F)
    out.sort(key=lambda F: F.key())
    return out


def _functorial(F: Functor) -> bool:
    d = F.target
    for (g, f), h in F.source.compose.items():
        if d.compose[(F.arr_map[g], F.arr_map[f])] != F.arr_map[h]:
            return False
    return True


def enumerate_nat_transfs(F: Functor, G: Functor,
                          meter: Meter | None = None) -> list[NatTransf]:
    """All natural transformations F ⇒ G, lexicographic in components."""
    meter = meter or Meter()
    c, d = F.source, F.target
    objs = sorted(c.objects)
    pools = [d.hom(F.obj_map[x], G.obj_map[x]) for x in objs]
    if any(not p for p in pools):
        return []
    out = []
    non_id = [a for a in c.arrow_names() if not c.is_identity(a)]
    for combo in itertools.product(*pools):
        meter.tick()
        comp = dict(zip(objs, combo))
        if all(d.compose[(comp[c.tgt(a)], F.arr_map[a])]
               == d.compose[(G.arr_map[a], comp[c.src(a)])] for a in non_id):
            out.append(NatTransf(F, G, comp))
    return out


# ---------------------------------------------------------------------------
# Constructions


@dataclass(frozen=True)
class FunctorCategory:
    cat: FinCat
    functors: dict  # object name -> Functor
    transfs: dict  # arrow name -> NatTransf

    def name_of_functor(self, F: Functor) -> str:
        k = F.key()
        for name, G in self.functors.items():
            if G.key() == k:
                return name
        raise KeyError("functor not an object of this functor category")

    def name_of_transf(self, n: NatTransf) -> str:
        src = self.name_of_functor(n.source)
        tgt = self.name_of_functor(n.target)
        k = n.key()
        for name, m in self.transfs.items():
            if m.key() == k and self.name_of_functor(m.source) == src \
                    and self.name_of_functor(m.target) == tgt:
                return name
        raise KeyError("transformation not an arrow of this functor category")


def functor_category_full(c: FinCat, d: FinCat,
                          meter: Meter | None = None) -> FunctorCategory:
    """The category of all functors c -> d and all natural transformations."""
    meter = meter or Meter()
    fs = enumerate_functors(c, d, meter)
    fname = {i: f"F{i}" for i in range(len(fs))}
    objects = [fname[i] for i in range(len(fs))]
    arrows, identity, compose = {}, {}, {}
    transfs = {}
    nats = {}  # (i, j) -> list of NatTransf
    for i, F in enumerate(fs):
        for j, G in enumerate(fs):
            nats[(i, j)] = enumerate_nat_transfs(F, G, meter)
    counter = 0
    name_of = {}
    for (i, j), ns in sorted(nats.items()):
        for n in ns:
            if i == j and nat_is_identity(n):
                name = f"1_{fname[i]}"
                identity[fname[i]] = name
            else:
                name = f"n{counter}"
                counter += 1
            arrows[name] = (fname[i], fname[j])
            transfs[name] = n
            name_of[(i, j, n.key())] = name
    for (i, j), ns in sorted(nats.items()):
        for (j2, k), ms in sorted(nats.items()):
            if j2 != j:
                continue
            for n in ns:
                for m in ms:
                    meter.tick()
                    comp = vcomp_nat(m, n)
                    g = name_of[(j, k, m.key())]
                    f = name_of[(i, j, n.key())]
                    compose[(g, f)] = name_of[(i, k, comp.key())]
    cat = mk_fincat(objects, arrows, identity, compose)
    return FunctorCategory(cat, {fname[i]: fs[i] for i in range(len(fs))}, transfs)


def functor_category(c: FinCat, d: FinCat, meter: Meter | None = None) -> FinCat:
    return functor_category_full(c, d, meter).cat


def product_category(c: FinCat, d: FinCat) -> FinCat:
    objects = [f"({x},{y})" for x in sorted(c.objects) for y in sorted(d.objects)]
    arrows = {}
    identity = {}
    compose = {}
    for a, (s, t) in sorted(c.arrows.items()):
        for b, (u, v) in sorted(d.arrows.items()):
            arrows[f"({a},{b})"] = (f"({s},{u})", f"({t},{v})")
    for x in c.objects:
        for y in d.objects:
            identity[f"({x},{y})"] = f"({c.identity[x]},{d.identity[y]})"
    for (g, f), h in c.compose.items():
        for (k, l), m in d.compose.items():
            compose[(f"({g},{k})", f"({f},{l})")] = f"({h},{m})"
    return mk_fincat(objects, arrows, identity, compose)


def product_projections(p: FinCat, c: FinCat, d: FinCat) -> tuple[Functor, Functor]:
    """Projections out of product_category(c, d), recovered from pair names."""
    def split(name):
        depth = 0
        for i, ch in enumerate(name):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 1:
                return name[1:i], name[i + 1:-1]
        raise ValueError(name)

    om1 = {o: split(o)[0] for o in p.objects}
    om2 = {o: split(o)[1] for o in p.objects}
    am1 = {a: split(a)[0] for a in p.arrows}
    am2 = {a: split(a)[1] for a in p.arrows}
    return Functor(p, c, om1, am1), Functor(p, d, om2, am2)


def connected_components(c: FinCat) -> list[frozenset]:
    """Partition of objects under the zig-zag closure of arrows."""
    parent = {x: x for x in c.objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, (s, t) in c.arrows.items():
        rs, rt = find(s), find(t)
        if rs != rt:
            parent[max(rs, rt)] = min(rs, rt)
    groups = {}
    for x in c.objects:
        groups.setdefault(find(x), set()).add(x)
    return sorted((frozenset(v) for v in groups.values()), key=lambda s: sorted(s))


# ---------------------------------------------------------------------------
# Equivalence checking


@dataclass
class EquivalenceReport:
    verdict: bool
    full: bool
    faithful: bool
    essentially_surjective: bool
    witness: str

    def __bool__(self) -> bool:
        return self.verdict


def iso_classes(c: FinCat) -> list[frozenset]:
    parent = {x: x for x in c.objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in c.arrows:
        if c.is_iso(a):
            s, t = c.arrows[a]
            rs, rt = find(s), find(t)
            if rs != rt:
                parent[max(rs, rt)] = min(rs, rt)
    groups = {}
    for x in c.objects:
        groups.setdefault(find(x), set()).add(x)
    return sorted((frozenset(v) for v in groups.values()), key=lambda s: sorted(s))


def is_equivalence(F: Functor) -> EquivalenceReport:
    """Full + faithful + essentially surjective, each checked by enumeration."""
    c, d = F.source, F.target
    full, faithful, witness = True, True, ""
    for x in sorted(c.objects):
        for y in sorted(c.objects):
            image = [F.arr_map[a] for a in c.hom(x, y)]
            target = d.hom(F.obj_map[x], F.obj_map[y])
            if len(set(image)) < len(image):
                faithful = False
                witness = witness or f"hom({x},{y}) is not mapped injectively"
            if set(image) != set(target):
                full = False
                witness = witness or f"hom({x},{y}) is not mapped onto " \
                    f"hom({F.obj_map[x]},{F.obj_map[y]})"
    hit = {F.obj_map[x] for x in c.objects}
    ess = True
    for cls in iso_classes(d):
        if not (cls & hit):
            ess = False
            witness = witness or \
                f"object {sorted(cls)[0]} is not isomorphic to any image"
            break
    return EquivalenceReport(full and faithful and ess, full, faithful, ess, witness)


def quasi_inverse_search(F: Functor, meter: Meter | None = None) -> Functor | None:
    """Brute-force search for G with GF ≅ id and FG ≅ id.

    Independent of is_equivalence; used to cross-check it on small inputs.
    """
    meter = meter or Meter()
    for G in enumerate_functors(F.target, F.source, meter):
        if enumerate_iso_transfs(compose_functors(G, F), identity_functor(F.source), meter) \
                and enumerate_iso_transfs(compose_functors(F, G), identity_functor(F.target), meter):
            return G
    return None


def enumerate_iso_transfs(F: Functor, G: Functor, meter: Meter | None = None) -> list[NatTransf]:
    return [n for n in enumerate_nat_transfs(F, G, meter) if nat_is_invertible(n)]


# ---------------------------------------------------------------------------
# Isomorphism search between finite categories


def find_isomorphism(c: FinCat, d: FinCat, meter: Meter | None = None) -> Functor | None:
    """Deterministic backtracking search for an isomorphism of categories.

    Objects are matched on local invariants (endo count, in/out degrees)
    before arrows are matched; the first witness in lexicographic order
    is returned.
    """
    meter = meter or Meter()
    if len(c.objects) != len(d.objects) or len(c.arrows) != len(d.arrows):
        return None

    def obj_sig(cat, x):
        outs = sorted(len(cat.hom(x, y)) for y in cat.objects)
        ins = sorted(len(cat.hom(y, x)) for y in cat.objects)
        return (len(cat.hom(x, x)), tuple(outs), tuple(ins))

    csig = {x: obj_sig(c, x) for x in c.objects}
    dsig = {y: obj_sig(d, y) for y in d.objects}
    if sorted(csig.values()) != sorted(dsig.values()):
        return None

    cobjs = sorted(c.objects)

    def extend_objects(i, om, used):
        if i == len(cobjs):
            yield dict(om)
            return
        x = cobjs[i]
        for y in sorted(d.objects):
            if y in used or dsig[y] != csig[x]:
                continue
            if not all(len(c.hom(x, x2)) == len(d.hom(y, om[x2])) and
                       len(c.hom(x2, x)) == len(d.hom(om[x2], y))
                       for x2 in om):
                continue
            om[x] = y
            yield from extend_objects(i + 1, om, used | {y})
            del om[x]

    carrs = [a for a in sorted(c.arrows) if not c.is_identity(a)]
    by_arrow = {}
    for (g, f), h in c.compose.items():
        for a in {g, f, h}:
            by_arrow.setdefault(a, []).append((g, f, h))

    def consistent(am, a):
        for (g, f, h) in by_arrow.get(a, ()):
            if g in am and f in am and h in am:
                if d.compose[(am[g], am[f])] != am[h]:
                    return False
        return True

    for om in extend_objects(0, {}, set()):
        am = {c.identity[x]: d.identity[om[x]] for x in c.objects}
        # iterative backtracking over nonidentity arrows
        choices = []  # stack of iterators
        j = 0
        pools = {}
        while True:
            meter.tick()
            if j == len(carrs):
                F = Functor(c, d, dict(om), dict(am))
                if _functorial(F) and len(set(am.values())) == len(am):
                    return F
                j -= 1
                if j < 0:
                    break
                continue
            a = carrs[j]
            if j == len(choices):
                s, t = c.arrows[a]
                used = set(am.values())
                pools[j] = iter([b for b in d.hom(om[s], om[t]) if b not in used])
                choices.append(a)
            advanced = False
            for b in pools[j]:
                if b in am.values():
                    continue
                am[a] = b
                if consistent(am, a):
                    j += 1
                    advanced = True
                    break
                del am[a]
            if not advanced:
                am.pop(a, None)
                choices.pop()
                pools.pop(j)
                j -= 1
                if j < 0:
                    break
                # retry the previous level with its next candidate
                prev = carrs[j]
                am.pop(prev, None)
    return None


def skeleton(c: FinCat) -> FinCat:
    """Full subcategory on one representative per isomorphism class."""
    reps = {}
    for cls in iso_classes(c):
        rep = min(cls)
        for x in cls:
            reps[x] = rep
    keep = sorted(set(reps.values()))
    arrows = {a: (s, t) for a, (s, t) in c.arrows.items()
              if s in keep and t in keep}
    identity = {x: c.identity[x] for x in keep}
    compose = {(g, f): h for (g, f), h in c.compose.items()
               if g in arrows and f in arrows}
    return mk_fincat(keep, arrows, identity, compose)


def categories_equivalent(c: FinCat, d: FinCat,
                          meter: Meter | None = None) -> bool:
    """Equivalence of finite categories via isomorphism of skeletons."""
    return find_isomorphism(skeleton(c), skeleton(d), meter) is not None


# ---------------------------------------------------------------------------
# Standard small categories


def empty_category() -> FinCat:
    return mk_fincat((), {}, {}, {})


def terminal_category() -> FinCat:
    return mk_fincat(("*",), {"id_*": ("*", "*")}, {"*": "id_*"},
                     {("id_*", "id_*"): "id_*"})


def arrow_category() -> FinCat:
    """The walking arrow 0 -> 1."""
    arrows = {"id_0": ("0", "0"), "id_1": ("1", "1"), "f": ("0", "1")}
    compose = {
        ("id_0", "id_0"): "id_0", ("id_1", "id_1"): "id_1",
        ("f", "id_0"): "f", ("id_1", "f"): "f",
    }
    return mk_fincat(("0", "1"), arrows, {"0": "id_0", "1": "id_1"}, compose)


def iso_pair_category() -> FinCat:
    """The walking isomorphism: two objects, one invertible arrow pair."""
    arrows = {"id_0": ("0", "0"), "id_1": ("1", "1"),
              "u": ("0", "1"), "u_inv": ("1", "0")}
    compose = {
        ("id_0", "id_0"): "id_0", ("id_1", "id_1"): "id_1",
        ("u", "id_0"): "u", ("id_1", "u"): "u",
        ("u_inv", "id_1"): "u_inv", ("id_0", "u_inv"): "u_inv",
        ("u_inv", "u"): "id_0", ("u", "u_inv"): "id_1",
    }
    return mk_fincat(("0", "1"), arrows, {"0": "id_0", "1": "id_1"}, compose)


def parallel_pair_category() -> FinCat:
    """Two objects, two parallel arrows u, v : a -> b."""
    arrows = {"id_a": ("a", "a"), "id_b": ("b", "b"),
              "u": ("a", "b"), "v": ("a", "b")}
    compose = {
        ("id_a", "id_a"): "id_a", ("id_b", "id_b"): "id_b",
        ("u", "id_a"): "u", ("id_b", "u"): "u",
        ("v", "id_a"): "v", ("id_b", "v"): "v",
    }
    return mk_fincat(("a", "b"), arrows, {"a": "id_a", "b": "id_b"}, compose)


def discrete_category(names) -> FinCat:
    names = tuple(sorted(names))
    arrows = {f"id_{x}": (x, x) for x in names}
    compose = {(f"id_{x}", f"id_{x}"): f"id_{x}" for x in names}
    return mk_fincat(names, arrows, {x: f"id_{x}" for x in names}, compose)


def group_z2_category() -> FinCat:
    """One object with a single nonidentity involution."""
    arrows = {"e": ("*", "*"), "s": ("*", "*")}
    compose = {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"}
    return mk_fincat(("*",), arrows, {"*": "e"}, compose)
