"""2-D cluster variation method on a toroidal zigzag lattice."""

from cvm2d.analytic import analytic_config_vars, delta, estimate_h_range, interpretation_triple
from cvm2d.configvars import ConfigVars, check_equivalences, count_config_vars
from cvm2d.divergence import DivergenceOptions, cvm_divergence, kl_divergence
from cvm2d.errors import CVMError, DomainError, InputError, PatternError
from cvm2d.grid import Lattice, build_envelope, parse_pattern, random_equiprobable, serialize_pattern
from cvm2d.minimizer import MinimizeConfig, best_of_trials, minimize
from cvm2d.sweep import SweepSpec, emit_report, run_sweep
from cvm2d.thermo import EnthalpyParams, enthalpy, entropy, free_energy

__version__ = "0.1.0"
