"""Exact Mukai-lattice arithmetic, central charges and stability data on K3 surfaces."""
from ._scan import BACKEND as SCAN_BACKEND
from .construct import (ExtensionProblem, ExtensionSolution, bridgerem_sprime, e_threshold, least_positive_chi_sprime,
                        solve_extension_lemma)
from .exceptions import HypothesisViolation, K3LatticeError, ValidationError
from .isometry import (ExponentialForm, MukaiIsometry, apply, compose, fixes_point_class, invert,
                       line_twist, normalize_exponential, reduce_to_coprime, spherical_twist_O)
from .lattice import (Lattice, content_split, hyperbolic_plane, intersect, is_primitive,
                      positive_cone_check, rank_one)
from .mukai import (ChernData, MukaiVector, crucform_check, euler_chi, fine_moduli_check, from_chern, is_isotropic,
                    is_spherical, mukai_pair)
from .partners import PartnerCandidate, Rank1Surface, enumerate_candidates, partner_class_count
from .stability import (ComplexifiedClass, FormalSheaf, IrrationalBeta, NumericalComplex,
                        central_charge, decompose, heart_membership, hn_mu_max, hn_mu_min,
                        im_Z_formula, minimal_candidate, phase, quadric_membership,
                        spherical_scan, torsion_pair_membership)

__version__ = "0.1.0"
