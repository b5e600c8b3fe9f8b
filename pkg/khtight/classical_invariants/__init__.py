from .goeritz import *
from .thinness import *
from .quasi_alternating import *
