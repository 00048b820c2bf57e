"""Ruled surfaces built on an angle-tilted osculating director field."""

from .errors import (OtruledError, OutOfDomain, CurvatureVanishes, SingularPoint,
                     CylindricalDirection, DegenerateMetric, InsufficientSamples,
                     NotUnitSpeed, ConfigParseError)
from .curves import (CurveSpec, FrenetData, HelixReport, frenet, derivative,
                     classify_helix, slant_function, reparametrize_by_arclength)
from .catalog import (helix_ex1, slant_ex2, salkowski_ex3, salkowski_general,
                      circle, line, get_curve, curve_from_expressions)
from .otframe import (AngleFunction, OTFrameData, constant_angle, linear_angle,
                      custom_angle, angle_from_expression, neg_integral_kappa,
                      make_angle, ot_frame, frame_derivative_matrix,
                      frenet_from_ot, slant_function_ot)
from .surface import (OTSurface, SurfaceJet, CurvatureData, SingularReport,
                      SurfaceClassification, BaseCurveStatus, position, jet,
                      gauss_map, fundamental_forms, curvatures, weingarten,
                      singular_set, striction_line, classify_surface,
                      base_curve_status)
from .oncurve import (SurfaceCurve, CurveInvariants, ruling_curve,
                      s_parameter_curve, linear_curve, curve_from_t_expressions,
                      unit_speed_coefficients, invariants_closed_form,
                      geodesic_curvature_exact, invariants_oracle,
                      case_invariants, principal_ratio, classify_curve)
from .verify import (GenericRuledSurface, GenericForms, RuledFrame, SlantReport,
                     DiscrepancyRow, DiscrepancyReport, from_ot,
                     generic_fundamental_forms, generic_K_H, developability_det,
                     ruled_frame, slant_ruled_detect, compare_closed_forms)

__version__ = "0.1.0"
