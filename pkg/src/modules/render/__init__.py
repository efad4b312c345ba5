from .svg import *  # noqa:F401,F403
