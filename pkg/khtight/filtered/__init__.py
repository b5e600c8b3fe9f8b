from .complex import *
from .spectral import *
