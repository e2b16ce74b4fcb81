import os

def _read_int(name, default):
    value = os.getenv(name)
    if value is None or value == "":
        return default
    try:
        return int(value)
    except ValueError:
        raise RuntimeError(f"Environment variable {name} must be an integer, found '{value}'")

seed = _read_int("REGULIB_SEED", 0)
line_cap = _read_int("REGULIB_LINE_CAP", 10 ** 7)
search_cap = _read_int("REGULIB_SEARCH_CAP", 10 ** 6)
timing = bool(os.getenv("REGULIB_TIMING"))

def get_default_seed():
    return seed

def set_default_seed(s):
    global seed
    seed = s

def get_line_cap():
    return line_cap

def set_line_cap(cap):
    global line_cap
    line_cap = cap

def get_search_cap():
    return search_cap

def set_search_cap(cap):
    global search_cap
    search_cap = cap

def get_timing():
    return timing

def set_timing(enabled):
    global timing
    timing = enabled
