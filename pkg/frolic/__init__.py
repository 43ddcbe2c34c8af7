from .config import GroupSpec, RunConfig
from .workbench import FrolicWorkbench
