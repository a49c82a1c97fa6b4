from .commands import *
from .common import FlavorChoice, PinczonCommand
