"""Configuration for padicwalk CLI."""

import os

# Scale guard for dense oracles
MAX_LEAVES = int(os.getenv("PADICWALK_MAX_LEAVES", "10000"))

# Logging
LOG_LEVEL = os.getenv("PADICWALK_LOG_LEVEL", "WARNING").upper()
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

# Simulation defaults
DEFAULT_PATHS = int(os.getenv("PADICWALK_DEFAULT_PATHS", "100000"))
DEFAULT_SEED = int(os.getenv("PADICWALK_DEFAULT_SEED", "0"))
DEFAULT_TIMES = (0.1, 1.0, 10.0)
DEFAULT_HORIZON = 1.0

# Acceptance thresholds used by `compare` and `basis-check`
SPECTRAL_ORACLE_TOLERANCE = 1e-8
GRAM_TOLERANCE = 1e-10
POTENTIAL_IDENTITY_TOLERANCE = 1e-12
MONTE_CARLO_SIGMAS = 3.0

# Growth diagnostic
DEFAULT_BETA = 2.0
DEFAULT_GROWTH_HORIZON = 200

# Output
FLOAT_FORMAT = ".17g"
OUTPUT_FORMATS = ("csv", "json")

# Exit codes
EXIT_CONFIG_ERROR = 2
EXIT_SCALE_GUARD = 3
EXIT_ACCEPTANCE_BREACH = 4
