from .brackets import *
from .cohomology import *
from .linalg import *
from .multilinear import *
from .report import *
from .signs import *
from .structures import *
