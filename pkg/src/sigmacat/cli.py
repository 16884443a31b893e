"""Command-line front end.

Machine-readable JSON goes to standard output, human prose to standard
error.  Exit codes: 0 a verdict was computed, 1 an internal consistency
or certificate check failed (always a bug), 2 the input was invalid or
over budget, 3 the answer is undecided at the configured cap.  Identical
inputs produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import sys

from .config import DEFAULT_CAP, Meter
from .errors import (CertificateFailure, Inconsistency, ParseError,
                     PreconditionFailed, SizeLimitExceeded, UndecidedAtCap,
                     ValidationError)
from . import io as sio
from .fincat import FinCat, validate_category
from .two_cat import (Fin2Cat, Marked2Cat, WideSub, validate_2category,
                      wide_from)
from .transforms import (CatDiagram, LAX, PSEUDO, STRICT, TwoFunctor,
                         hom_eps, sigma_flavor)
from .colimits import (bilimit_cat, conical_sigma_colimit, default_test_family,
                       weighted_limit_cat, weighted_sigma_colimit)
from .elements import cart_sigma, elements_of, elements_of_pseudo
from .filteredness import (check_sigma_cofiltered, check_sigma_cofinal,
                           check_sigma_filtered)
from .flatness import (check_flat, check_flat_pseudo, check_left_exact,
                       generate_bilimit_cones, strictify, yoneda_check)

EXIT_OK = 0
EXIT_BUG = 1
EXIT_INVALID = 2
EXIT_UNDECIDED = 3


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit(doc) -> None:
    sys.stdout.write(sio.dumps(doc))


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _parse_sigma_names(raw: str) -> list[str]:
    return [s for s in raw.split(",") if s]


def _flavor_from_args(args):
    name = getattr(args, "flavor", None) or "p"
    if name == "s":
        return STRICT
    if name == "p":
        return PSEUDO
    if name in ("l", "lax"):
        return LAX
    if name == "sigma":
        return None  # resolved later against the base
    raise ParseError(f"unknown flavor {name!r}")


def _report_filteredness(rep) -> dict:
    doc = {"verdict": rep.verdict,
           "witnesses": [{"axiom": w.axiom,
                          "instance": list(w.instance),
                          "data": list(w.data)} for w in rep.witnesses]}
    if rep.counterexample is not None:
        doc["counterexample"] = {"axiom": rep.counterexample.axiom,
                                 "instance": list(rep.counterexample.instance)}
    else:
        doc["counterexample"] = None
    return doc


# ---------------------------------------------------------------------------
# Commands


def cmd_validate(args) -> int:
    value = sio.parse_document(_read(args.file))
    kind = type(value).__name__
    _emit({"command": "validate", "kind": kind, "verdict": "valid"})
    _say(f"{args.file}: valid {kind}")
    return EXIT_OK


def cmd_hom(args) -> int:
    P = sio.parse_document(_read(args.source))
    Q = sio.parse_document(_read(args.target))
    if not isinstance(P, CatDiagram) or not isinstance(Q, CatDiagram):
        raise ValidationError("hom expects two diagram documents")
    fl = _flavor_from_args(args)
    if fl is None:
        fl = sigma_flavor(wide_from(P.source, _parse_sigma_names(args.sigma or "")))
    h = hom_eps(P, Q, fl, Meter(args.budget))
    _emit({"command": "hom", "flavor": sio.flavor_to_doc(fl),
           "objects": len(h.cat.objects), "arrows": len(h.cat.arrows),
           "category": sio.fincat_to_doc(h.cat)})
    _say(f"{len(h.cat.objects)} transformations, {len(h.cat.arrows)} modifications")
    return EXIT_OK


def cmd_elements(args) -> int:
    P = sio.parse_document(_read(args.file))
    if isinstance(P, CatDiagram):
        pass
    else:
        raise ValidationError("elements expects a diagram document")
    meter = Meter(args.budget)
    if args.pseudo:
        from .transforms import reinterpret_as_pseudo
        if not P.is_pseudo:
            P = reinterpret_as_pseudo(P)
        el = elements_of_pseudo(P, meter)
    else:
        el = elements_of(P, meter)
    doc = {"command": "elements",
           "category": sio.fin2cat_to_doc(el.cat),
           "cart": sorted(el.cart.arrows)}
    if args.sigma is not None:
        sig = wide_from(P.source, _parse_sigma_names(args.sigma))
        doc["cart_sigma"] = sorted(cart_sigma(el, sig).arrows)
    _emit(doc)
    _say(f"{len(el.cat.objects)} objects, {len(el.cart.arrows)} cartesian arrows")
    return EXIT_OK


def cmd_limit(args) -> int:
    W = sio.parse_document(_read(args.weight))
    P = sio.parse_document(_read(args.diagram))
    fl = _flavor_from_args(args)
    if fl is None:
        fl = sigma_flavor(wide_from(P.source, _parse_sigma_names(args.sigma or "")))
    h = weighted_limit_cat(W, P, fl, Meter(args.budget))
    _emit({"command": "limit", "flavor": sio.flavor_to_doc(fl),
           "category": sio.fincat_to_doc(h.cat)})
    _say(f"weighted limit has {len(h.cat.objects)} objects")
    return EXIT_OK


def cmd_colimit(args) -> int:
    P = sio.parse_document(_read(args.diagram))
    if not isinstance(P, CatDiagram):
        raise ValidationError("colimit expects a diagram document")
    meter = Meter(args.budget)
    if args.weight is not None:
        W = sio.parse_document(_read(args.weight))
        sig = wide_from(P.source, _parse_sigma_names(args.sigma or ""))
        res = weighted_sigma_colimit(W, P, sig, args.cap, meter)
        conical = res.conical
        cert = res.certificate
    else:
        sig = wide_from(P.source, _parse_sigma_names(args.sigma or ""))
        conical = conical_sigma_colimit(P, sig, args.cap, meter)
        res = conical
        cert = conical.certificate
    doc = {"command": "colimit", "status": conical.status,
           "certificate": [{"test": label, "ok": ok} for label, ok in cert]}
    if conical.finite:
        doc["category"] = sio.fincat_to_doc(conical.category)
    _emit(doc)
    if not conical.finite:
        _say(f"undecided at cap {args.cap}")
        return EXIT_UNDECIDED
    _say(f"colimit has {len(conical.category.objects)} objects; certificate passed")
    return EXIT_OK


def cmd_bilimit(args) -> int:
    from .fincat import (arrow_category, iso_pair_category, product_category,
                         terminal_category, Functor, identity_functor)
    from .two_cat import two_cat_from_cat
    from .fixtures import idn
    from .fincat import NatTransf
    meter = Meter(args.budget)
    shape = args.shape
    if shape == "biproduct":
        C = sio.parse_document(_read(args.args[0]))
        D = sio.parse_document(_read(args.args[1]))
        if not isinstance(C, FinCat) or not isinstance(D, FinCat):
            raise ValidationError("biproduct expects two category documents")
        from .fincat import discrete_category
        base = two_cat_from_cat(discrete_category(["a", "b"]))
        from .transforms import CatDiagram as CD
        one = terminal_category()
        F = CD(base, {"a": C, "b": D},
               {base.id1["a"]: identity_functor(C), base.id1["b"]: identity_functor(D)},
               {base.id2(base.id1["a"]): idn(identity_functor(C)),
                base.id2(base.id1["b"]): idn(identity_functor(D))})
        from .transforms import constant_diagram
        W = constant_diagram(base, one)
        h = bilimit_cat(W, F, meter)
    elif shape in ("biinserter", "biequalizer"):
        Ff = sio.parse_document(_read(args.args[0]))
        Gg = sio.parse_document(_read(args.args[1]))
        h = _inserter_like(Ff, Gg, shape, meter)
    elif shape == "biequifier":
        al = sio.parse_document(_read(args.args[0]))
        be = sio.parse_document(_read(args.args[1]))
        h = _equifier(al, be, meter)
    else:
        raise ParseError(f"unknown shape {shape!r}")
    _emit({"command": "bilimit", "shape": shape,
           "category": sio.fincat_to_doc(h.cat)})
    _say(f"{shape} has {len(h.cat.objects)} objects")
    return EXIT_OK


def _inserter_like(F, G, shape, meter):
    from .fincat import (Functor, arrow_category, identity_functor,
                         iso_pair_category, terminal_category)
    from .two_cat import two_cat_from_cat
    from .fincat import parallel_pair_category
    from .transforms import CatDiagram as CD
    from .fixtures import idn
    if F.source != G.source or F.target != G.target:
        raise ValidationError("expected parallel functor documents")
    base = two_cat_from_cat(parallel_pair_category())
    C, D = F.source, F.target
    diag = CD(base, {"a": C, "b": D},
              {"id_a": identity_functor(C), "id_b": identity_functor(D),
               "u": F, "v": G},
              {"i2_id_a": idn(identity_functor(C)),
               "i2_id_b": idn(identity_functor(D)),
               "i2_u": idn(F), "i2_v": idn(G)})
    one = terminal_category()
    wcat = arrow_category() if shape == "biinserter" else iso_pair_category()
    pick0 = Functor(one, wcat, {"*": "0"}, {"id_*": wcat.identity["0"]})
    pick1 = Functor(one, wcat, {"*": "1"}, {"id_*": wcat.identity["1"]})
    W = CD(base, {"a": one, "b": wcat},
           {"id_a": identity_functor(one), "id_b": identity_functor(wcat),
            "u": pick0, "v": pick1},
           {"i2_id_a": idn(identity_functor(one)),
            "i2_id_b": idn(identity_functor(wcat)),
            "i2_u": idn(pick0), "i2_v": idn(pick1)})
    return bilimit_cat(W, diag, meter)


def _equifier(al, be, meter):
    from .fincat import Functor, NatTransf, arrow_category, identity_functor, \
        terminal_category
    from .two_cat import two_parallel_2cells_2cat
    from .transforms import CatDiagram as CD
    from .fixtures import idn
    if al.source.key() != be.source.key() or al.target.key() != be.target.key():
        raise ValidationError("expected parallel transformation documents")
    F, G = al.source, al.target
    base = two_parallel_2cells_2cat()
    C, D = F.source, F.target
    diag = CD(base, {"a": C, "b": D},
              {"id_a": identity_functor(C), "id_b": identity_functor(D),
               "u": F, "v": G},
              {"i2_id_a": idn(identity_functor(C)),
               "i2_id_b": idn(identity_functor(D)),
               "i2_u": idn(F), "i2_v": idn(G),
               "th": al, "et": be})
    one = terminal_category()
    two = arrow_category()
    pick0 = Functor(one, two, {"*": "0"}, {"id_*": "id_0"})
    pick1 = Functor(one, two, {"*": "1"}, {"id_*": "id_1"})
    step = NatTransf(pick0, pick1, {"*": "f"})
    W = CD(base, {"a": one, "b": two},
           {"id_a": identity_functor(one), "id_b": identity_functor(two),
            "u": pick0, "v": pick1},
           {"i2_id_a": idn(identity_functor(one)),
            "i2_id_b": idn(identity_functor(two)),
            "i2_u": idn(pick0), "i2_v": idn(pick1),
            "th": step, "et": step})
    return bilimit_cat(W, diag, meter)


def cmd_filtered(args) -> int:
    value = sio.parse_document(_read(args.file))
    if isinstance(value, Marked2Cat):
        m = value
        if args.sigma is not None:
            m = Marked2Cat(m.cat, wide_from(m.cat, _parse_sigma_names(args.sigma)))
    elif isinstance(value, Fin2Cat):
        sig = wide_from(value, _parse_sigma_names(args.sigma or ""))
        m = Marked2Cat(value, sig)
    else:
        raise ValidationError("filtered expects a 2-category document")
    meter = Meter(args.budget)
    rep = check_sigma_cofiltered(m, meter) if args.co else \
        check_sigma_filtered(m, meter)
    doc = {"command": "filtered", "co": bool(args.co)}
    doc.update(_report_filteredness(rep))
    _emit(doc)
    _say(f"verdict: {rep.verdict}")
    return EXIT_OK


def cmd_cofinal(args) -> int:
    T = sio.parse_document(_read(args.file))
    if not isinstance(T, TwoFunctor):
        raise ValidationError("cofinal expects a 2-functor document")
    sig = wide_from(T.source, _parse_sigma_names(args.sigma or ""))
    sigp = wide_from(T.target, _parse_sigma_names(args.sigma_prime or ""))
    rep = check_sigma_cofinal(T, sig, sigp, Meter(args.budget))
    doc = {"command": "cofinal"}
    doc.update(_report_filteredness(rep))
    _emit(doc)
    _say(f"verdict: {rep.verdict}")
    return EXIT_OK


def cmd_flat(args) -> int:
    P = sio.parse_document(_read(args.file))
    if not isinstance(P, CatDiagram):
        raise ValidationError("flat expects a diagram document")
    meter = Meter(args.budget)
    v = check_flat_pseudo(P, meter) if (args.pseudo or P.is_pseudo) \
        else check_flat(P, meter)
    doc = {"command": "flat", "verdict": v.verdict, "route": v.route}
    if hasattr(v.evidence, "verdict"):
        doc["evidence"] = _report_filteredness(v.evidence)
    _emit(doc)
    _say(f"verdict: {v.verdict}")
    return EXIT_OK


def cmd_exact(args) -> int:
    P = sio.parse_document(_read(args.file))
    if not isinstance(P, CatDiagram):
        raise ValidationError("exact expects a diagram document")
    meter = Meter(args.budget)
    if args.cones == "generated":
        cones = generate_bilimit_cones(P.source, meter)
    else:
        raise ParseError("only --cones generated is supported from the CLI")
    rep = check_left_exact(P, cones, meter)
    _emit({"command": "exact", "verdict": rep.verdict,
           "no_evidence": rep.no_evidence,
           "per_shape": [{"shape": label, "ok": ok}
                         for label, ok in rep.per_shape]})
    _say(f"verdict: {rep.verdict} over {len(rep.per_shape)} shapes")
    return EXIT_OK


def cmd_strictify(args) -> int:
    P = sio.parse_document(_read(args.file))
    if not isinstance(P, CatDiagram):
        raise ValidationError("strictify expects a diagram document")
    tilde, eta, eps = strictify(P, Meter(args.budget))
    out_doc = sio.diagram_to_doc(tilde)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(sio.dumps(out_doc))
        _emit({"command": "strictify", "written": args.output,
               "objects": {A: len(tilde.on_obj[A].objects)
                           for A in sorted(tilde.source.objects)}})
    else:
        _emit({"command": "strictify", "diagram": out_doc})
    _say("strictified diagram computed")
    return EXIT_OK


def cmd_yoneda(args) -> int:
    base_doc = sio.parse_document(_read(args.file))
    Q = sio.parse_document(_read(args.against))
    if not isinstance(Q, CatDiagram):
        raise ValidationError("yoneda expects a diagram via --against")
    base = base_doc.cat if isinstance(base_doc, Marked2Cat) else base_doc
    if Q.source != base:
        raise ValidationError("diagram does not live on the given base")
    rep = yoneda_check(Q, args.object, Meter(args.budget))
    _emit({"command": "yoneda", "object": args.object, "verdict": rep.verdict,
           "witness": rep.witness})
    _say(f"verdict: {rep.verdict}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="sigmacat",
        description="finite 2-categories, relative limits, and flatness")
    p.add_argument("--budget", type=int, default=None,
                   help="enumeration budget (candidates)")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("validate", help="parse and validate a document")
    q.add_argument("file")
    q.set_defaults(fn=cmd_validate)

    q = sub.add_parser("hom", help="category of transformations P => Q")
    q.add_argument("source")
    q.add_argument("target")
    q.add_argument("--flavor", default="p", choices=["s", "p", "sigma", "lax"])
    q.add_argument("--sigma", default=None, help="comma-separated 1-cells")
    q.set_defaults(fn=cmd_hom)

    q = sub.add_parser("elements", help="the 2-category of elements")
    q.add_argument("file")
    q.add_argument("--pseudo", action="store_true")
    q.add_argument("--sigma", default=None)
    q.set_defaults(fn=cmd_elements)

    q = sub.add_parser("limit", help="weighted limit of a diagram")
    q.add_argument("weight")
    q.add_argument("diagram")
    q.add_argument("--flavor", default="p", choices=["s", "p", "sigma", "lax"])
    q.add_argument("--sigma", default=None)
    q.set_defaults(fn=cmd_limit)

    q = sub.add_parser("colimit", help="conical or weighted relative colimit")
    q.add_argument("diagram")
    q.add_argument("--sigma", default=None)
    q.add_argument("--weight", default=None)
    q.add_argument("--cap", type=int, default=DEFAULT_CAP)
    q.set_defaults(fn=cmd_colimit)

    q = sub.add_parser("bilimit", help="one of the four generating bilimits")
    q.add_argument("--shape", required=True,
                   choices=["biproduct", "biequalizer", "biinserter",
                            "biequifier"])
    q.add_argument("args", nargs=2)
    q.set_defaults(fn=cmd_bilimit)

    q = sub.add_parser("filtered", help="filteredness of a marked 2-category")
    q.add_argument("file")
    q.add_argument("--sigma", default=None)
    q.add_argument("--co", action="store_true")
    q.set_defaults(fn=cmd_filtered)

    q = sub.add_parser("cofinal", help="cofinality of a 2-functor")
    q.add_argument("file")
    q.add_argument("--sigma", default=None)
    q.add_argument("--sigma-prime", dest="sigma_prime", default=None)
    q.set_defaults(fn=cmd_cofinal)

    q = sub.add_parser("flat", help="flatness of a diagram")
    q.add_argument("file")
    q.add_argument("--pseudo", action="store_true")
    q.set_defaults(fn=cmd_flat)

    q = sub.add_parser("exact", help="left exactness against bilimit cones")
    q.add_argument("file")
    q.add_argument("--cones", default="generated")
    q.set_defaults(fn=cmd_exact)

    q = sub.add_parser("strictify", help="strictify a pseudofunctor")
    q.add_argument("file")
    q.add_argument("-o", "--output", default=None)
    q.set_defaults(fn=cmd_strictify)

    q = sub.add_parser("yoneda", help="the Yoneda comparison at an object")
    q.add_argument("file")
    q.add_argument("--object", required=True)
    q.add_argument("--against", required=True)
    q.set_defaults(fn=cmd_yoneda)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INVALID if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (Inconsistency, CertificateFailure) as e:
        _emit({"command": args.command, "error": "consistency",
               "detail": str(e)})
        _say(f"consistency failure: {e}")
        return EXIT_BUG
    except UndecidedAtCap as e:
        _emit({"command": args.command, "error": "undecided", "detail": str(e)})
        _say(f"undecided: {e}")
        return EXIT_UNDECIDED
    except (ParseError, ValidationError, PreconditionFailed,
            SizeLimitExceeded, FileNotFoundError) as e:
        _emit({"command": args.command, "error": "invalid-input",
               "detail": str(e)})
        _say(f"invalid input: {e}")
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
