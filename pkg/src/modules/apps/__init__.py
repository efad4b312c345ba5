from .models import *  # noqa:F401,F403
from .sensor import *  # noqa:F401,F403
from .hand import *  # noqa:F401,F403
from .circuit import *  # noqa:F401,F403
