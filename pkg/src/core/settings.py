import math
import os
from pathlib import Path

from starlette.config import Config

SETTINGS_PATH = Path(os.path.dirname(os.path.abspath(__file__)))
BASE_DIR = Path(os.path.dirname(SETTINGS_PATH))
PROJECT_ROOT_DIR = Path(os.path.dirname(BASE_DIR))

env_file_path = PROJECT_ROOT_DIR / ".env"
config = Config(env_file=(env_file_path if env_file_path.is_file() else None))

SCHEMA_VERSION = "1"
TOOL_VERSION = "0.4.0"

CONFIG_DIR = Path(config("TAPESLICER_CONFIG_DIR", default=str(SETTINGS_PATH / "catalogs")))
TEMPLATE_PATH = BASE_DIR / "templates"
DEFAULT_TAPE = config("DEFAULT_TAPE", default="copper-6.35")
DEFAULT_SUBSTRATE = config("DEFAULT_SUBSTRATE", default="acrylic")
DEFAULT_NOISE_PROFILE = config("DEFAULT_NOISE_PROFILE", default="default")

# geometry
SAMPLE_STEP = config("SAMPLE_STEP", cast=float, default=1e-3)  # 1 mm
GEOMETRY_TOLERANCE = 1e-9
CONFORMAL_MAX_DISTORTION = config("CONFORMAL_MAX_DISTORTION", cast=float, default=0.02)

# planner
SPEED_MIN = config("SPEED_MIN", cast=float, default=0.010)  # m/s
SPEED_MAX = config("SPEED_MAX", cast=float, default=0.100)  # m/s
DEFAULT_SPEED = config("DEFAULT_SPEED", cast=float, default=0.025)
TRAVEL_SPEED = config("TRAVEL_SPEED", cast=float, default=0.100)
MIN_RADIUS = config("MIN_RADIUS", cast=float, default=0.025)  # smallest circle printed: 5 cm
LEAD_IN = config("LEAD_IN", cast=float, default=0.005)
ANCHOR_LENGTH = config("ANCHOR_LENGTH", cast=float, default=0.04)
CUT_DWELL = config("CUT_DWELL", cast=float, default=1.0)  # seconds, zero tool velocity
RETRACT_HEIGHT = config("RETRACT_HEIGHT", cast=float, default=0.010)
DEFAULT_COMPACTION_FORCE = config("DEFAULT_COMPACTION_FORCE", cast=float, default=4.0)
WRIST_ROTATION_RANGE = config("WRIST_ROTATION_RANGE", cast=float, default=3 * math.pi)
WORKSPACE_MIN = (-1.3, -1.3, -0.2)
WORKSPACE_MAX = (1.3, 1.3, 1.3)

# mechanics
REFERENCE_TAPE_WIDTH = 6.35e-3
TENSION_CAP = config("TENSION_CAP", cast=float, default=5.0)  # N
FEED_SLIP = config("FEED_SLIP", cast=float, default=1e-5)  # (pull - feed) / feed
COMPACTION_OPTIMUM = config("COMPACTION_OPTIMUM", cast=float, default=4.0)  # N
COMPACTION_CURVATURE = config("COMPACTION_CURVATURE", cast=float, default=0.05)  # 1/N^2
PEEL_REFERENCE_LENGTH = 0.05  # peel test strip length, m

# control sync
STEPS_PER_METER = config("STEPS_PER_METER", cast=float, default=160_000.0)  # 3200 steps / 20 mm
CUT_CYCLE_DURATION = config("CUT_CYCLE_DURATION", cast=float, default=1.0)

# apps
SENSOR_SATURATION_FORCE = config("SENSOR_SATURATION_FORCE", cast=float, default=4.9)  # ~500 g
SENSOR_SATURATION_LEVEL = config("SENSOR_SATURATION_LEVEL", cast=float, default=0.95)
CIRCUIT_DROP_BUDGET = config("CIRCUIT_DROP_BUDGET", cast=float, default=0.05)

# simulation / output
SIMULATION_WORKERS = config("SIMULATION_WORKERS", cast=int, default=1)
SVG_DEVIATION_SCALE = config("SVG_DEVIATION_SCALE", cast=float, default=20.0)

SENTRY_DSN = config("SENTRY_DSN", default=None)
LOG_LEVEL = config("LOG_LEVEL", default="INFO")
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "standard": {
            "format": "[%(asctime)s] %(levelname)s [%(filename)s:%(lineno)s] %(message)s",
            "datefmt": "%d.%m.%Y %H:%M:%S",
        },
    },
    "handlers": {"console": {"class": "logging.StreamHandler", "formatter": "standard"}},
    "loggers": {
        "modules": {"handlers": ["console"], "level": LOG_LEVEL, "propagate": False},
        "common": {"handlers": ["console"], "level": LOG_LEVEL, "propagate": False},
        "cli": {"handlers": ["console"], "level": LOG_LEVEL, "propagate": False},
    },
}
