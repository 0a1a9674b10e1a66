"""Curve geometry in isotropic and pseudo-isotropic space.

Dual and Lorentz numbers, the two degenerate metric spaces with their motion
groups, Frenet and rotation-minimizing frames, osculating spheres and a
classifier for spherical and plane curves.
"""

from .classify import ClassifyConfig, Verdict, classify_curve, classify_frames
from .curve import Curve, admissibility, arclength_reparametrize, curve_from_spec, load_curve
from .errors import (DegenerateSphereError, InsufficientDataError, InvalidInputError,
                     IsokitError, NonAdmissibleError, SingularParameterError, SpecError,
                     SpeedError, UnsupportedSpaceError)
from .frames import FrameSet, frenet, rm_frames
from .gcnum import DualNumber, LorentzNumber
from .spaces import IsoMotion, SpaceKind
from .spheres import OsculatingSphere, Sphere, osculating_sphere, osculating_spheres

__version__ = "0.1.0"

__all__ = ["ClassifyConfig", "Verdict", "classify_curve", "classify_frames", "Curve",
           "admissibility", "arclength_reparametrize", "curve_from_spec", "load_curve",
           "DegenerateSphereError", "InsufficientDataError", "InvalidInputError", "IsokitError",
           "NonAdmissibleError", "SingularParameterError", "SpecError", "SpeedError",
           "UnsupportedSpaceError", "FrameSet", "frenet", "rm_frames", "DualNumber",
           "LorentzNumber", "IsoMotion", "SpaceKind", "OsculatingSphere", "Sphere",
           "osculating_sphere", "osculating_spheres"]
