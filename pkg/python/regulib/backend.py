import concurrent.futures
import enum
import os
import warnings

class ExecBackend(enum.Enum):
    Auto = "auto"
    Serial = "serial"
    Process = "process"

def cpu_count():
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1

backends = [ExecBackend.Serial, ExecBackend.Process]

def is_enabled(backend):
    if backend == ExecBackend.Serial:
        return True
    elif backend == ExecBackend.Process:
        return cpu_count() > 1
    else:
        raise RuntimeError(f"Unsupported backend {backend}")

# Determine the available backends once, so we do not have to query the CPU
# affinity every time a suite resolves its backend.
available = [b for b in backends if is_enabled(b)]

# Turns a requested job count into a concrete backend. A job count of None or 0
# means 'Auto', which picks the process pool when more than one CPU is
# available, 1 forces serial execution, and anything larger requests the
# process pool explicitly. Requesting processes on a single CPU falls back to
# serial execution with a warning.
def resolve(jobs, item_count=None):
    if jobs is None or jobs == 0:
        backend = ExecBackend.Auto
    elif isinstance(jobs, bool) or not isinstance(jobs, int) or jobs < 0:
        raise RuntimeError(f"The number of jobs must be a non-negative integer, found {jobs!r}")
    elif jobs == 1:
        backend = ExecBackend.Serial
    else:
        backend = ExecBackend.Process
    if item_count is not None and item_count <= 1:
        return ExecBackend.Serial, 1
    if backend == ExecBackend.Auto:
        if ExecBackend.Process in available:
            return ExecBackend.Process, cpu_count()
        return ExecBackend.Serial, 1
    if backend == ExecBackend.Process and ExecBackend.Process not in available:
        warnings.warn(f"Requested {jobs} jobs, but only one CPU is available; "
                      "running serially", category=RuntimeWarning)
        return ExecBackend.Serial, 1
    return backend, (jobs if backend == ExecBackend.Process else 1)

# Maps a module-level function over the items. The output order matches the
# input order for both backends.
def run_items(fn, items, jobs=None, progress=None):
    items = list(items)
    backend, workers = resolve(jobs, len(items))
    if backend == ExecBackend.Serial:
        results = map(fn, items)
        if progress is not None:
            results = progress(results, total=len(items))
        return list(results)
    with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
        results = pool.map(fn, items)
        if progress is not None:
            results = progress(results, total=len(items))
        return list(results)
