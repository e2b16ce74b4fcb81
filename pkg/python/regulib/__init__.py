from . import backend, classical, exactla, forms, g2data, jordan, key, modstruct, report, reptable, state, suites, torusnorm, validate
from .classical import *
from .exactla import *
from .forms import *
from .jordan import *
from .modstruct import *
from .reptable import *
from .state import *
from .torusnorm import *
from .suites import run_suite

__version__ = "0.1.0"
