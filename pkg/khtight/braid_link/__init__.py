from .braid_word import *
from .diagram import *
