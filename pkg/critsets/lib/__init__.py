"""
Generic helpers that have nothing to do with matrices: text formatting of
types and values, small collection utilities, runtime type checks and rich
rendering.
"""

from .collections import *
from .text import *
from .typeguard import satisfies
