"""Exact computations in polynomial rings graded by finitely generated abelian groups.

Hilbert functions and Hasse-Hilbert diagrams, apolarity and annihilators,
Cox-Gorenstein and Poincare-duality tests, Artinian and Gorenstein reductions,
toric Lefschetz checks through mixed Hessians, and reconstruction of the toric
variety (rays, fan, irrelevant ideal) behind a grading.
"""

from .algebra import (AlgebraSupport, DegreeSliceBasis, IdealPresentation,
                      annihilator_generators, artinian_certify, artinianize,
                      colon_slice, cyclic_module_slice, gorensteinize,
                      hilbert_function, ideal_slice, inverse_system_slice,
                      is_cox_gorenstein, multiplication_matrix, poincare_pairing,
                      socle_slice)
from .errors import MathError, SpecParseError
from .grading import (GroupElement, GroupSpec, OrderSpec, PositivityCertificate,
                      cover_relations, find_positivity_certificate, leq)
from .hasse import build_diagram, symmetry_check, to_dot
from .lefschetz import (comparability_graph, dual_basis, euler_identity_check,
                        hessian_criterion_verify, maximal_rank_witness, mixed_hessian,
                        tslp_check, twlp_check)
from .polyring import (GradedRing, Polynomial, apply_diff, catalecticant,
                       monomials_of_degree, parse_polynomial)
from .specfile import load_spec, parse_spec
from .toric import (anticanonical_class, ci_socle_check, divisor_polytope,
                    irrelevant_ideal, nef_check, normal_fan, rays_from_grading,
                    reconstruct)

__version__ = "0.1.0"
