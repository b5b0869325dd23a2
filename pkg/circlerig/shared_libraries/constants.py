"""Constants shared by the circlerig modules."""

# Tolerances.
DEFAULT_TOL = 1e-9
MATRIX_TOL = 1e-12
MOBIUS_HALF_WIDTH = 1e-12
MOBIUS_ERROR_GAIN = 64

# Iteration and search caps.
DEFAULT_MAX_ITER = 10**6
DEFAULT_Q_MAX = 64
FIRST_ORBIT_LENGTH = 64
PRUNE_ORBIT_LENGTH = 4096
SHARP_ORBIT_LENGTH = 2**16
CLASSIFY_GRID = 4096
CLASSIFY_REFINE = 64
IDENTITY_SAMPLES = 100
COMMUTE_GRID = 256
DEFAULT_SAMPLES = 33
CONTRACTION_MAX_POWER = 64
FLOW_EDGE = 1e-14

# Environment variables.
ENV_TOL = "CIRCLERIG_TOL"
ENV_MAX_ITER = "CIRCLERIG_MAX_ITER"
ENV_Q_MAX = "CIRCLERIG_Q_MAX"
ENV_SEED = "CIRCLERIG_SEED"

# JSON keys.
KIND = "kind"
ROTATION = "rotation"
PL = "pl"
MOBIUS = "mobius"
COMPOSITE = "composite"

# Representation relator status.
VERIFIED_EXACT = "verified-exact"
VERIFIED_TOL = "verified-tol"
UNVERIFIED_FREE = "unverified-free"

# Report formatting.
SIGNIFICANT_DIGITS = 12
