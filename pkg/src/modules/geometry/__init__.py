from .models import *  # noqa:F401,F403
from .generators import *  # noqa:F401,F403
from .curvature import *  # noqa:F401,F403
from .conformal import *  # noqa:F401,F403
from .layers import *  # noqa:F401,F403
