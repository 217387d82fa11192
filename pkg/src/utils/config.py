"""
Runtime configuration for the toolkit.

Values are read from the environment; a local .env file is loaded first.
"""

from dotenv import load_dotenv
import math
import os

load_dotenv()

# ------------------------------------------------------------------
# Configuration
# ------------------------------------------------------------------

VERBOSE = os.getenv("TWZ_VERBOSE", "0").strip().lower() in ("1", "true", "yes", "on")

# Depth used by module commands when --depth is not given
DEFAULT_DEPTH = int(os.getenv("TWZ_DEFAULT_DEPTH", "2"))

# Level used when --level is not given
DEFAULT_LEVEL = os.getenv("TWZ_DEFAULT_LEVEL", "1")

# Randomized identity checks (ideal / associativity)
RANDOM_SEED = int(os.getenv("TWZ_RANDOM_SEED", "20240229"))
IDENTITY_SAMPLES = int(os.getenv("TWZ_IDENTITY_SAMPLES", "200"))

RECURSION_LIMIT = int(os.getenv("TWZ_RECURSION_LIMIT", "25"))

EVAL_DATASET = os.getenv("TWZ_EVAL_DATASET", "twisted-zhu-eval")


def zhu_depth(level) -> int:
    """Working depth of the O-span: products up to weight ℓ+1 must fit."""
    return max(math.ceil(level) + 2, 4)
