"""fibercalc: exact base-change calculus for finite fibered categories.

Finite categories with certified composition tables, exhaustive adjoint
search, Beck-Chevalley mates, smooth/proper/acyclic/localic classification
relative to explicit ambients, functor-class analyzers, and a corpus of
golden table verifications.
"""

from .fincat import (FinCategory, FinFunctor, NatTransform, FinSetObj,
                     SetDiagram, build_category, build_functor, comma,
                     set_limit_colimit, pullback, extremal_object,
                     is_equivalence, quasi_inverse, is_connected,
                     terminal_category, interval_category, chain_category,
                     discrete_category, parallel_pair_category,
                     poset_category, product_category, identity_functor,
                     constant_functor, compose_functors, identity_transform,
                     vertical_compose, is_natural_iso, cat_pullback,
                     verify_pullback_square, FinCatError, MissingComposite,
                     NonAssociative, IdentityLawViolation, DanglingEndpoint,
                     NotFunctorial, NotNatural, NoPullback, SizeCapExceeded)
from .adjunction import (Adjunction, NoAdjoint, find_adjoint, universal_arrow,
                         natural_iso_between, FunctorSquare, MateReport, mate)
from .fibred import (IndexedCategory, TabularIndexed, constant_indexed,
                     Fibration, grothendieck, base_change, fiber_of_total,
                     Calibration, make_calibration, constant_calibration,
                     universe_calibration, slice_category, pullback_functor,
                     SelfIndexing, CalibrationIndexed, FamIndexed,
                     fam_construction, delta, Scope, NotStable, NotPointed,
                     NotStrict)
from .classify import (MapClassification, Classifier, classify_map,
                       beck_chevalley, BCReport, square_mate_component,
                       strict_check, ForgetfulMap, is_exponentiable,
                       FactorizationSystem, check_factorization_system,
                       wfs_pullback_criterion, regular_iff_sums,
                       MissingPullback, MissingAdjoint, NotSmooth, NotProper,
                       NotExponentiable, NotOrthogonal)
from .catclasses import (FunctorClassReport, analyze_functor,
                         discrete_fibration_check, grothendieck_fibration_check,
                         is_conduche, initial_final_check, fully_faithful,
                         comma_factorization, groth_of_diagram,
                         dof_fiber_diagram, diagram_category,
                         restriction_functor, lan_pointwise,
                         pullback_stability_of_class)
from .props import run_property_suites, SUITES
from .report import render, render_text, render_json

__version__ = "0.1.0"
