"""Exact pushforwards and relative Chern classes of hypersurface fibrations."""

from ._relchern import (
    BaseModel,
    BundleSpec,
    ChowPoly,
    ContextError,
    DomainError,
    HypersurfaceSpec,
    ModeError,
    NonUnitError,
    ParseError,
    RelchernError,
    Ring,
    SpecializationError,
    SymbolError,
    UnsupportedDegreeError,
    csm_check,
    csm_route,
    expand_ratio,
    formal_base,
    hypersurface_euler_poly,
    parse_class,
    projective_space,
    run_job,
    specialize,
    z_family,
)

__all__ = [name for name in dir() if not name.startswith("_")]
