# Order of import is reflected in this file to avoid circular imports
from .constants import *
from .exceptions import *
from .serializers import *
from .config import *
from .logger import *
from .dataklasses import *
from .numerics import *
from .polynomial import *
from .oracle import *
from .series import *
from .analysis import *
