from .exactla import is_prime, MAX_CHARACTERISTIC

def check_int(value, name):
    if isinstance(value, bool) or not isinstance(value, int):
        raise RuntimeError(f"Parameter '{name}' must be an integer, found {value!r}")
    return value

def check_prime(value, name="p"):
    check_int(value, name)
    if not is_prime(value) or value > MAX_CHARACTERISTIC:
        raise RuntimeError(f"Parameter '{name}' must be a prime at most "
                           f"{MAX_CHARACTERISTIC}, found {value}")
    return value

def check_at_least(value, lo, name):
    check_int(value, name)
    if value < lo:
        raise RuntimeError(f"Parameter '{name}' must be at least {lo}, found {value}")
    return value

def check_odd(value, name):
    check_int(value, name)
    if value % 2 == 0:
        raise RuntimeError(f"Parameter '{name}' must be odd, found {value}")
    return value

def check_even(value, name):
    check_int(value, name)
    if value % 2 != 0:
        raise RuntimeError(f"Parameter '{name}' must be even, found {value}")
    return value

def check_choice(value, choices, name):
    if value not in choices:
        raise RuntimeError(f"Parameter '{name}' must be one of {list(choices)}, found {value!r}")
    return value

def check_char(p, expected, what):
    if p != expected:
        raise RuntimeError(f"{what} is defined in characteristic {expected} only, found p = {p}")
    return p

# Rejects keyword parameters outside the given set, and fills in defaults for
# the missing ones.
def check_kwargs(kwargs, defaults, what):
    unknown = sorted(set(kwargs) - set(defaults))
    if unknown:
        raise RuntimeError(f"Unsupported parameters for {what}: {', '.join(unknown)}")
    out = dict(defaults)
    out.update({k: v for k, v in kwargs.items() if v is not None})
    return out
