from .verdict import *
