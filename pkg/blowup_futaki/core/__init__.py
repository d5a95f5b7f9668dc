from . import models  # re-export for convenience
