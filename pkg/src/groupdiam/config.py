"""Budgets and caps; every default can be overridden from the environment."""

import os


def _env_int(name, default):
    value = os.environ.get(name)
    if value is None or value == "":
        return default
    return int(float(value))


MAX_DEGREE = 1 << 16

# elements enumerated by conjugacy class / lattice / exponent computations
ENUMERATION_CAP = _env_int("GROUPDIAM_ENUM_CAP", 10**7)

# states held by one breadth-first search (elements or cosets)
STATE_BUDGET = _env_int("GROUPDIAM_STATE_BUDGET", 20_000_000)

# generating sets examined by the worst-case diameter search
GENSET_BUDGET = _env_int("GROUPDIAM_GENSET_BUDGET", 5_000_000)

# composition series switch from the normal-lattice method to structural reduction
LATTICE_ORDER_CAP = _env_int("GROUPDIAM_LATTICE_CAP", 30_000)

# relative tolerance for real-valued bound comparisons
REL_TOL = 1e-9
