from ._klrcalc import *  # noqa: F401,F403
