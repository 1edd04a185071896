"""Schwarzian curvatures of holomorphic curves in complex projective space."""

from .errors import (
    BasePointMismatch,
    ChartEscape,
    CriticalPoint,
    CriticalReparameterization,
    DegenerateCurve,
    DivisionByZeroJet,
    EvaluationError,
    JetError,
    KappaError,
    NonFiniteJet,
    OrderExceeded,
    ParseError,
)
from .expr import CurveSpec, eval_jet, lift, parse, to_string
from .frame import CurvatureResult, FrameData, build_frame, kappa_from_lifting, kappa_general
from .jets import Jet, jet_const, jet_var
from .lowdim import kappa0_n1, kappa_n2, schwarzian
from .transform import (
    AffineMap,
    CoordinateChange,
    apply_affine,
    reparametrized_kappa,
    transform_law_n1,
    transform_law_n2,
)

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "BasePointMismatch",
    "ChartEscape",
    "CoordinateChange",
    "CriticalPoint",
    "CriticalReparameterization",
    "CurvatureResult",
    "CurveSpec",
    "DegenerateCurve",
    "DivisionByZeroJet",
    "EvaluationError",
    "FrameData",
    "Jet",
    "JetError",
    "KappaError",
    "NonFiniteJet",
    "OrderExceeded",
    "ParseError",
    "apply_affine",
    "build_frame",
    "eval_jet",
    "jet_const",
    "jet_var",
    "kappa0_n1",
    "kappa_from_lifting",
    "kappa_general",
    "kappa_n2",
    "lift",
    "parse",
    "reparametrized_kappa",
    "schwarzian",
    "to_string",
    "transform_law_n1",
    "transform_law_n2",
]
