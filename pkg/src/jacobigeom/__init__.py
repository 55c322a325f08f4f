"""Exact symbolic verification for Jacobi structures, generalized Lie
bialgebroids and Jacobi groupoids on coordinate patches."""
from .algebroid import AlgebroidStructure, Multisection, linear_structures_on_dual, tm_times_r
from .bialgebroid import (GenLieBialgebroid, bialgebroidize, canonical_pair,
                          induced_base_jacobi, verify_compatibility)
from .groupoid import (ConcreteGroupoid, JacobiGroupoidInstance, banal, base_morphism_check,
                       builtin_examples, contact_groupoid_check, cotangent_contact_groupoid,
                       derive_gen_bialgebroid, dual_bundle_abelian, jacobi_lie_group,
                       linear_dual_check, pair_groupoid, semidirect, structural_properties,
                       tangent_cotangent, verify_groupoid, verify_jacobi_groupoid, verify_p38)
from .jacobi import (JacobiStructure, contact_to_jacobi, jacobi_bracket, poissonize,
                     poissonize_bivector, verify_jacobi)
from .multivec import DifferentialForm, Multivector, schouten_bracket, wedge
from .symring import KERNEL, ExpPoly, Interval, PatchVars, exp_enclosure
from .verdict import Verdict

__version__ = "0.1.0"
