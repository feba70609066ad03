"""Seeded randomized identity sweeps over the concrete loop.

Each sweep draws fresh elements per trial from the deterministic
xorshift-star stream and checks one law exactly; a violation count of zero
over a large trial budget is evidence (the symbolic proofs are the actual
proof).  Alternativity and flexibility are swept in product form, e.g.
(x o x) o y = x o (x o y), which is the same statement as the triviality of
the corresponding associator but avoids divisions in the hot loop.
"""

from __future__ import annotations

from dataclasses import dataclass

from .kernel import SWEEP_NAMES
from .loop import Element, Loop, check_seed, default_loop

__all__ = ["SWEEP_NAMES", "SweepResult", "run_sweep", "run_all"]

_DESCRIPTIONS = {
    "moufang": "(x*y)*(z*x) = (x*(y*z))*x",
    "left_alternative": "(x*x)*y = x*(x*y)",
    "right_alternative": "(y*x)*x = y*(x*x)",
    "flexible": "(x*y)*x = x*(y*x)",
    "inverse": "x*x^-1 = x^-1*x = 1",
    "tail_central": "z supported on 11..19 implies x*z = z*x = x+z",
}


@dataclass(frozen=True)
class SweepResult:
    name: str
    law: str
    seed: int
    trials: int
    violations: int
    first_failing_trial: int         # -1 when clean
    witness: tuple | None            # drawn elements of the first violation

    @property
    def ok(self) -> bool:
        return self.violations == 0


def run_sweep(loop: Loop | None, name: str, seed: int = 42,
              trials: int = 1_000_000) -> SweepResult:
    """Run one named sweep; see SWEEP_NAMES for the choices."""
    if name not in SWEEP_NAMES:
        raise ValueError(f"unknown sweep {name!r}; choose from {SWEEP_NAMES}")
    if trials < 0:
        raise ValueError("trials must be >= 0")
    lp = loop if loop is not None else default_loop()
    check_seed(seed)
    violations, first, witness = lp._kernel.sweep(name, seed, trials)
    return SweepResult(name, _DESCRIPTIONS[name], seed, trials,
                       violations, first, witness)


def run_all(loop: Loop | None = None, seed: int = 42,
            trials: int = 1_000_000) -> list:
    """All six sweeps, each restarted from the same seed."""
    return [run_sweep(loop, name, seed, trials) for name in SWEEP_NAMES]
