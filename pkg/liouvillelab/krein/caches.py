# caches.py - cache of spectral decompositions
#
# Copyright 2026 liouvillelab developers.
#
# This file is part of liouvillelab, which is licensed under the Python
# Software Foundation License; for more information, see LICENSE.txt.
import logging
import threading

from .spectral import spectral_decompose

#: Infinity; used to indicate no upper bound on the size of a cache.
INFINITY = float('inf')


class SpectrumCache:
    """An in-memory cache of spectral decompositions keyed by
    ``(string hash, condition at the anchor, xi_max)``.

    When the number of entries reaches `max_size`, entries are removed in the
    order in which they were first added.  Lookups with their hit and miss
    counts, insertion and eviction happen under a lock, so a single cache may
    be shared by worker threads; the decomposition itself runs outside it.

    """

    def __init__(self, max_size=INFINITY):
        # The _keys list maintains the order in which entries were added;
        # it always holds exactly the keys of `self.data`.
        self._keys = []
        self._lock = threading.Lock()
        self.data = {}
        self.max_size = max_size
        self.hits = 0
        self.misses = 0

    def __len__(self):
        return len(self.data)

    def __iter__(self):
        return iter(self.data)

    def __contains__(self, key):
        return key in self.data

    def __getitem__(self, key):
        return self.data[key]

    @staticmethod
    def key(s, bc0, xi_max=None):
        return (s.digest(), bc0, xi_max)

    def get(self, key, default=None):
        return self.data.get(key, default)

    def put(self, key, value):
        logging.debug('Caching spectrum %s', key)
        with self._lock:
            if key not in self.data:
                self._keys.append(key)
            self.data[key] = value
            while len(self._keys) > self.max_size:
                flushed = self._keys.pop(0)
                logging.debug('Flushing spectrum %s from cache', flushed)
                self.data.pop(flushed, None)

    def pop(self, key):
        with self._lock:
            try:
                self._keys.remove(key)
            except ValueError:
                pass
            return self.data.pop(key, None)

    def clear(self):
        with self._lock:
            self._keys.clear()
            self.data.clear()

    def decompose(self, s, bc0, xi_max=None, keep_vectors=None):
        """Return the decomposition of `s`, computing it on a miss."""
        key = self.key(s, bc0, xi_max)
        with self._lock:
            result = self.data.get(key)
            if result is not None and (result.modes is not None
                                       or not keep_vectors):
                self.hits += 1
                return result
            self.misses += 1
        result = spectral_decompose(s, bc0, xi_max, keep_vectors)
        self.put(key, result)
        return result


#: The cache shared by the experiments and the command line.
default_cache = SpectrumCache(max_size=256)


def cached_decompose(s, bc0, xi_max=None, keep_vectors=None,
                     cache=default_cache):
    return cache.decompose(s, bc0, xi_max, keep_vectors)
