from .models import *  # noqa:F401,F403
from .timeline import *  # noqa:F401,F403
from .coupling import *  # noqa:F401,F403
from .schemas import *  # noqa:F401,F403
