from .algebra import *
from .cli import *
from .config import *
from .exceptions import *

__version__ = "0.1.0"
