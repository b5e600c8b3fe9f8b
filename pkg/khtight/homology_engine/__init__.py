from .gf2 import *
from .homology import *
from .reduction import *
from .scanning import *
