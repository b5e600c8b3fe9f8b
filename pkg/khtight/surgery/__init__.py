from .diagram import *
from .invariants import *
