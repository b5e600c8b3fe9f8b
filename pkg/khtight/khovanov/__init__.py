from .cube import *
from .complex import *
from .generators import *
from .dump import *
