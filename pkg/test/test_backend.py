import pytest

from common import *
from regulib import backend
from regulib.backend import ExecBackend, resolve, run_items

@pytest.fixture
def multi_cpu(monkeypatch):
    monkeypatch.setattr(backend, "available", [ExecBackend.Serial, ExecBackend.Process])
    monkeypatch.setattr(backend, "cpu_count", lambda: 4)

@pytest.fixture
def single_cpu(monkeypatch):
    monkeypatch.setattr(backend, "available", [ExecBackend.Serial])
    monkeypatch.setattr(backend, "cpu_count", lambda: 1)

def test_serial_backend_is_always_enabled():
    assert backend.is_enabled(ExecBackend.Serial)
    assert ExecBackend.Serial in backend.available
    with pytest.raises(RuntimeError):
        backend.is_enabled(ExecBackend.Auto)

@pytest.mark.parametrize('jobs,expected', [
    (None, (ExecBackend.Process, 4)),
    (0, (ExecBackend.Process, 4)),
    (1, (ExecBackend.Serial, 1)),
    (3, (ExecBackend.Process, 3)),
])
def test_resolve_with_multiple_cpus(multi_cpu, jobs, expected):
    assert resolve(jobs) == expected

def test_resolve_single_item_runs_serially(multi_cpu):
    assert resolve(8, item_count=1) == (ExecBackend.Serial, 1)

def test_resolve_auto_on_single_cpu(single_cpu):
    assert resolve(None) == (ExecBackend.Serial, 1)

def test_resolve_processes_on_single_cpu_warns(single_cpu):
    with pytest.warns(RuntimeWarning):
        assert resolve(4) == (ExecBackend.Serial, 1)

@pytest.mark.parametrize('jobs', [-1, True, 2.5, "2"])
def test_resolve_rejects_invalid_job_counts(jobs):
    with pytest.raises(RuntimeError):
        resolve(jobs)

def test_run_items_serial_preserves_order():
    assert run_items(abs, [-3, 1, -2], jobs=1) == [3, 1, 2]

def test_run_items_reports_progress():
    seen = []
    def progress(it, total):
        seen.append(total)
        return it
    assert run_items(abs, [-1, -2], jobs=1, progress=progress) == [1, 2]
    assert seen == [2]

@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_run_items_process_pool_preserves_order():
    items = list(range(-20, 0))
    assert run_items(abs, items, jobs=2) == [abs(x) for x in items]

def test_run_items_empty():
    assert run_items(abs, [], jobs=None) == []
