from .models import *  # noqa:F401,F403
from .noise import *  # noqa:F401,F403
from .engine import *  # noqa:F401,F403
from .schemas import *  # noqa:F401,F403
from .export import *  # noqa:F401,F403
