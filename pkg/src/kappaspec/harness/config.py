"""Central tolerance record used by the suites and the acceptance run."""
from __future__ import annotations

from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class Tolerances:
    closed_form: float = 1e-8
    table: float = 1e-8
    eigen: float = 1e-4
    quadrature_ft: float = 1e-7
    key_integral: float = 1e-9
    bracket: float = 1e-8
    perturbation_fd_kappa: float = 1e-2
    perturbation_fd_lambda: float = 5e-2
    p1: float = 1e-9

    def as_dict(self):
        return asdict(self)


DEFAULT = Tolerances()
