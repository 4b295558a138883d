"""Bohr-Rogosinski radii for concave univalent function families.

The heavy lifting lives in the C++ extension ``bohrlab._core``; this package
re-exports it and adds a couple of keyword-friendly helpers.
"""

from bohrlab._core import (
    CertificationConfig,
    ConcaveFamily,
    CriterionResult,
    EnclosureTooWideError,
    NoSignChangeError,
    RadiusProblem,
    RadiusResult,
    SchwarzFunction,
    SchwarzOrder,
    VanishingOrderSpec,
    VerificationReport,
    Violation,
    __version__,
    classical_br_radius,
    closed_form_radius,
    coeff_a,
    coeff_c,
    extremal_distance,
    f_alpha_eval,
    f_alpha_tail,
    find_radius,
    k_p_eval,
    k_p_tail,
    run_acceptance,
    run_verification,
)


def radius(thm=1, alpha=None, p=None, N=1, m0=1, m1=1, m2=1, h="n", tol=1e-12):
    """Solve one radius problem and return the RadiusResult.

    ``m0``/``m1``/``m2`` accept a positive integer, the string ``"inf"``, or
    ``None`` (same as infinity).
    """
    problem = RadiusProblem(thm=thm, alpha=alpha, p=p, N=N, m0=m0, m1=m1, m2=m2, h=h)
    return find_radius(problem, tol)


__all__ = [
    "CertificationConfig",
    "ConcaveFamily",
    "CriterionResult",
    "EnclosureTooWideError",
    "NoSignChangeError",
    "RadiusProblem",
    "RadiusResult",
    "SchwarzFunction",
    "SchwarzOrder",
    "VanishingOrderSpec",
    "VerificationReport",
    "Violation",
    "__version__",
    "classical_br_radius",
    "closed_form_radius",
    "coeff_a",
    "coeff_c",
    "extremal_distance",
    "f_alpha_eval",
    "f_alpha_tail",
    "find_radius",
    "k_p_eval",
    "k_p_tail",
    "radius",
    "run_acceptance",
    "run_verification",
]
