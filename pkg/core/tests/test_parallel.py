"""
Tests du pool de threads déterministe.
"""

import threading

from core.exceptions import InvalidParameterError, MonoidLabError
from core.parallel import ordered_map, resolve_workers, thread_cap


class TestThreadCap:
    def test_default_cap(self, settings):
        settings.MONOID_LAB = {**settings.MONOID_LAB, "THREADS": 1}
        assert thread_cap() == 1
        assert resolve_workers(8) == 1

    def test_cap_clamped(self, settings):
        """Test avec un plafond nul ramené à 1"""
        settings.MONOID_LAB = {**settings.MONOID_LAB, "THREADS": 0}
        assert thread_cap() == 1

    def test_requested_below_cap(self, settings):
        settings.MONOID_LAB = {**settings.MONOID_LAB, "THREADS": 4}
        assert resolve_workers(None) == 4
        assert resolve_workers(2) == 2
        assert resolve_workers(0) == 1


class TestOrderedMap:
    def test_sequential(self):
        assert ordered_map(lambda n: n * n, range(5), workers=1) == [0, 1, 4, 9, 16]

    def test_order_kept_with_threads(self, settings):
        """Test avec des tâches qui finissent dans le désordre"""
        settings.MONOID_LAB = {**settings.MONOID_LAB, "THREADS": 4}
        release = threading.Event()

        def task(n):
            if n == 0:
                release.wait(timeout=5)
            else:
                release.set()
            return n

        assert ordered_map(task, range(6), workers=4) == list(range(6))

    def test_empty(self):
        assert ordered_map(str, [], workers=3) == []

    def test_shared_unpicklable_state(self, settings):
        """Test avec une fermeture sur un verrou (non sérialisable par pickle)"""
        settings.MONOID_LAB = {**settings.MONOID_LAB, "THREADS": 2}
        lock = threading.Lock()
        seen = []

        def task(n):
            with lock:
                seen.append(threading.get_ident())
            return n + 1

        assert ordered_map(task, range(4), workers=2) == [1, 2, 3, 4]
        assert len(seen) == 4


class TestExceptions:
    def test_hierarchy(self):
        """Test avec une erreur du domaine attrapée comme ValueError"""
        error = InvalidParameterError("h")
        assert isinstance(error, MonoidLabError)
        assert isinstance(error, ValueError)
