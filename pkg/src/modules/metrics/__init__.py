from .quality import *  # noqa:F401,F403
from .stats import *  # noqa:F401,F403
from .studies import *  # noqa:F401,F403
from .schemas import *  # noqa:F401,F403
