# app/models/analytic.py
from typing import Optional

from pydantic import BaseModel, ConfigDict


class AnalyticSolution(BaseModel):
    """
    Equal-depletion closed-form solution.

    p, q, w, phi_seq and direct are indexed by node (j = 1..N at position j-1);
    y holds the stepwise flows y_2..y_N (y_j at position j-2), empty when N = 1.
    """
    model_config = ConfigDict(frozen=True)

    p: tuple[float, ...]
    q: tuple[float, ...]
    w: tuple[float, ...]
    phi_seq: tuple[float, ...]
    y: tuple[float, ...]
    direct: tuple[float, ...]
    phi: float
    valid: bool
    infeasibility_reason: Optional[str] = None
    terminal_residual: float = 0.0

    @property
    def n(self) -> int:
        return len(self.p)

    @property
    def lifetime(self) -> float:
        return 1.0 / self.phi

    def stepwise(self, j: int) -> float:
        """Flow from node j to node j-1 (zero for j = 1 and j = N+1)"""
        if j <= 1 or j > self.n:
            return 0.0
        return self.y[j - 2]
