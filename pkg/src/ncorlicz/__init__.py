"""Orlicz-norm calculus over finite-dimensional trace algebras.

Blockwise matrix algebras with weighted traces, their spectral and
polar toolkit, GNS/standard-form modular theory, Luxemburg gauge norms
for arbitrary Young functions, a step-valued model of the weighted
half-line extension carrying the canonical rescaling trace, and
isometry verification for block isomorphisms.
"""

from .algebra import (AlgebraDescriptor, Element, Functional, Reduction, Spectrum,
                      absolute, eigen_spectrum, functional_polar, make_algebra,
                      operator_norm, polar_decompose, power_on_support,
                      reduce_to_support, spectral_calculus, support_projection, trace)
from .core_model import (CoreElement, Interval, canonical_trace, core_luxemburg_norm,
                         core_luxemburg_report, core_modular_value, dual_action, embed,
                         interval, weighted_trace)
from .errors import ConvergenceError, InputError, ValidationError
from .functorial import (Isomorphism, IsometryReport, apply_isomorphism, compose,
                         identity_isomorphism, lift_to_core, norm_ratio_diagnostic,
                         verify_isometry)
from .modular import (GNSData, ModularOperator, StandardForm, connes_cocycle, gns,
                      modular_flow, radon_nikodym_sqrt, relative_modular, standard_form)
from .orliczfn import (CoshMinusOne, ExpMinusOne, JumpFunction, OrliczFunction,
                       PowerFunction, TabulatedFunction, check_delta2, check_n_function,
                       midpoint_convexity_gap, numeric_conjugate_value, registry,
                       young_conjugate)
from .sampling import SplitMix64
from .trace_orlicz import (MembershipFlags, NormReport, RearrangementFunction,
                           dual_pairing, e_space_gauge, fk_integral, luxemburg_norm,
                           luxemburg_report, membership, modular_value, rearrangement,
                           rearrangement_csv)

__version__ = "0.1.0"
