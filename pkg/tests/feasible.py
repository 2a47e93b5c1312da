"""Directions in configuration-variable space that keep every linear constraint satisfied."""

import numpy as np
from scipy.linalg import null_space

from cvm2d.configvars import KEYS, ConfigVars, relation_residuals


def constraint_matrix():
    """Rows: every normalization/equivalence relation, plus x1 fixed."""
    origin = np.array([float(v) for v in relation_residuals(ConfigVars(*[0.0] * 14)).values()])
    cols = []
    for j in range(len(KEYS)):
        e = ConfigVars(*[1.0 if i == j else 0.0 for i in range(len(KEYS))])
        cols.append(np.array([float(v) for v in relation_residuals(e).values()]) - origin)
    a = np.array(cols).T
    x1_row = np.eye(len(KEYS))[0]
    return np.vstack([a, x1_row])


def feasible_directions():
    """Orthonormal basis (14 x k) of the constraint null space."""
    return null_space(constraint_matrix())
