#
# __init__.py
#
"""
Experiment drivers: family sweeps, Monte Carlo detector comparisons, basis
optimisation, and their CSV/JSON export.
"""
from pyvider.complementarity.experiments.export import export_results, render_json, render_results
from pyvider.complementarity.experiments.montecarlo import (
    DEFAULT_DETECTORS,
    LUR_DETECTORS,
    run_lur_comparison,
    run_montecarlo,
)
from pyvider.complementarity.experiments.optimization import (
    OptimizationSpec,
    OptimizationSummary,
    compare_modes,
    run_basis_optimization,
)
from pyvider.complementarity.experiments.sweep import (
    SweepRow,
    SweepSpec,
    parse_grid,
    parse_measure,
    run_sweep,
)
from pyvider.complementarity.experiments.tally import TallyMatrix

__all__ = [
    "DEFAULT_DETECTORS",
    "LUR_DETECTORS",
    "OptimizationSpec",
    "OptimizationSummary",
    "SweepRow",
    "SweepSpec",
    "TallyMatrix",
    "compare_modes",
    "export_results",
    "parse_grid",
    "parse_measure",
    "render_json",
    "render_results",
    "run_basis_optimization",
    "run_lur_comparison",
    "run_montecarlo",
    "run_sweep",
]

# 🧪📦
