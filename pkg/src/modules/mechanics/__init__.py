from .models import *  # noqa:F401,F403
from .forces import *  # noqa:F401,F403
from .catalog import *  # noqa:F401,F403
