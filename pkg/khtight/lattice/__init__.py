from .gram import *
from .embedding import *
from .complement import *
