"""Exact algebra for constant mean curvature tests on polynomial level sets."""

from .cmc import (CmcContext, CriticalPointError, MembershipCertificate, NotTangentError,
                  cmc_residual, curvature_data, exact_H_squared, g_element, mean_curvature_at,
                  membership_certificate, second_fundamental_at)
from .groebner import (GroebnerBasis, ResourceGuardError, buchberger, ideal_equal, ideal_member,
                       normal_form, reduce_basis, s_pair_audit, s_polynomial)
from .orders import MonomialOrder
from .parse import ParseDiagnostic, ParseError, parse_poly, read_generator_file, render_poly
from .poly import Poly, Rational, VarSet, divide_by, standard_varset, to_rational
from .radical import RadicalElement, embed, tangential

__version__ = "0.1.0"
