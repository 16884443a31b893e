"""Finite 2-categories, relative (sigma) limits, and flat diagrams.

A desk-scale kernel: every category, 2-category, and diagram is given by
total tables, every law is validated by exhaustive loops, Hom categories
of transformations are enumerated, conical relative colimits are built
by localization with a word-length cap, and flatness of a Cat-valued
diagram is decided through filteredness of its 2-category of elements.
"""

from .errors import (CertificateFailure, Inconsistency, ParseError,
                     PreconditionFailed, SizeLimitExceeded, UndecidedAtCap,
                     ValidationError)
from .config import Meter, DEFAULT_BUDGET, DEFAULT_CAP
from .fincat import (FinCat, Functor, NatTransf, ValidationReport,
                     EquivalenceReport, connected_components, find_isomorphism,
                     functor_category, is_equivalence, mk_fincat,
                     product_category, validate_category)
from .presented import PresentedCategory, localize
from .two_cat import (Fin2Cat, Marked2Cat, WideSub, co_dual, mk_fin2cat,
                      op_dual, pi0, two_cat_from_cat, validate_2category,
                      wide_all, wide_from, wide_identities)
from .transforms import (CatDiagram, Flavor, LAX, Modification, PSEUDO, STRICT,
                         Transformation, TwoFunctor, check_dicone,
                         check_modification, check_transformation,
                         constant_diagram, end_eps, flavor_inclusions, hom_eps,
                         sigma_flavor, validate_diagram)
from .elements import (ElementsResult, cart_sigma, elements_of,
                       elements_of_pseudo, gamma_dual, lax_dense_transport,
                       lax_pullback_factor, t_eta, t_h)
from .colimits import (BaseCone, ColimitResult, SigmaCone, bilimit_cat,
                       coend_eps, comparison_functor, conical_sigma_colimit,
                       interchange_check, is_bilimit_cone,
                       pointwise_limit_check, preserves_bilimit,
                       weighted_limit_cat, weighted_sigma_colimit)
from .filteredness import (FilterednessReport, check_sigma_cofiltered,
                           check_sigma_cofinal, check_sigma_filtered,
                           cofinal_via_ff, cone_category_equiv, cone_existence)
from .flatness import (CanonicalExpression, FlatnessVerdict,
                       canonical_expression, check_flat, check_flat_pseudo,
                       check_left_exact, exact_implies_cofiltered_check,
                       generate_bilimit_cones, representable, strictify,
                       yoneda_check)
