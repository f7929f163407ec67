from .experiments import router as experiments
from .instances import router as instances
