# app/models/errors.py
from pydantic import BaseModel
from typing import Optional


class LifetimeFlowError(Exception):
    """Base class for every error raised by this package"""
    error_code: str = "lifetime_flow_error"
    exit_code: int = 1


class ConfigError(LifetimeFlowError, ValueError):
    """Invalid flags, config-file keys or parameter values"""
    error_code = "config_error"
    exit_code = 1


class RingModelError(LifetimeFlowError, ValueError):
    """Invalid node index or self-transmission request"""
    error_code = "ring_model_error"


class LpFormatError(LifetimeFlowError, ValueError):
    """Malformed dimensions or non-finite LP data"""
    error_code = "lp_format_error"


class AnalyticDomainError(LifetimeFlowError, ValueError):
    """Closed form or approximation evaluated outside its domain"""
    error_code = "analytic_domain_error"


class SolverError(LifetimeFlowError, RuntimeError):
    """LP ended infeasible, unbounded or hit the iteration cap where an optimum must exist"""
    error_code = "solver_error"
    exit_code = 2


class InconsistencyError(LifetimeFlowError, RuntimeError):
    """LP and closed form disagree while the equal-depletion solution is valid"""
    error_code = "inconsistency"
    exit_code = 2


class ErrorResponse(BaseModel):
    """Standard error record reported by the CLI"""
    success: bool = False
    error: str
    error_code: Optional[str] = None
    details: Optional[str] = None
    exit_code: int = 1

    @classmethod
    def from_exception(cls, exc: Exception) -> "ErrorResponse":
        if isinstance(exc, LifetimeFlowError):
            return cls(error=str(exc), error_code=exc.error_code, exit_code=exc.exit_code,
                       details=exc.__class__.__name__)
        return cls(error=str(exc), error_code="internal_error", exit_code=2,
                   details=exc.__class__.__name__)
