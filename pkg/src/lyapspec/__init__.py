"""Lyapunov spectra of piecewise linear expanding maps via the pressure function."""

__version__ = "0.1.0"

from .errors import (
    DegenerateSpectrum,
    LyapSpecError,
    NotTwoBranch,
    OutOfDomain,
    OutOfRange,
    ParseError,
    RangeError,
    SingularAtDimension,
    ValidationError,
)
from .inflection import (
    THRESHOLD,
    InflectionPoint,
    InterlacingReport,
    TwoBranchClass,
    TwoBranchVerdict,
    classify_two_branch,
    find_inflections,
    key_lhs_G,
    key_rhs_H,
    phi_minus,
    phi_plus,
    verify_interlacing,
)
from .mapspec import (
    BranchClass,
    Degeneracy,
    MapSpec,
    construct_tn,
    make_two_branch,
    parse_spec,
    preset,
    render_spec,
)
from .pressure import GibbsMoments, alpha_of_s, moments, pressure_p
from .spectrum import (
    DomainInterval,
    SpectrumPoint,
    closed_form_two_branch,
    critical_alpha,
    dimension,
    domain,
    eval_spectrum,
    sample_spectrum,
    tau,
)
