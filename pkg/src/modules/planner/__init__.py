from .models import *  # noqa:F401,F403
from .checks import *  # noqa:F401,F403
from .events import *  # noqa:F401,F403
from .compiler import *  # noqa:F401,F403
from .overhang import *  # noqa:F401,F403
