import logging
from typing import Dict, Sequence, Tuple

import numpy as np

from uvstat.basis import Basis
from uvstat.common import pairwise_sum

logger = logging.getLogger("uvstat.statistic.power_sums")


class PowerSumTable:
    """
    S_B = n^(-|B|/2) sum_j prod_{i in B} e_i(X_j) for a path, memoized by the sorted block content
    """

    def __init__(self, basis: Basis, path, upto: int):
        self.path = np.asarray(path, dtype=np.float64)
        self.n = self.path.size
        self.upto = int(upto)
        # row k is e_k along the path, k = 0..upto
        self.rows = basis.matrix(np.arange(self.upto + 1), self.path, check=False)
        self._cache: Dict[Tuple[int, ...], float] = {}

    def __len__(self):
        return len(self._cache)

    def normalization(self, size: int) -> float:
        return float(self.n) ** (-size / 2.0)

    def raw(self, content: Sequence[int]) -> float:
        """
        unnormalized sum_j prod e_i(X_j)
        """
        return self.get(content) / self.normalization(len(content))

    def get(self, content: Sequence[int]) -> float:
        key = tuple(sorted(int(i) for i in content))
        value = self._cache.get(key)
        if value is None:
            product = self.rows[key[0]]
            for i in key[1:]:
                product = product * self.rows[i]
            value = float(pairwise_sum(product)) * self.normalization(len(key))
            self._cache[key] = value
        return value

    def block_sums(self, indices: np.ndarray, block: Sequence[int]) -> np.ndarray:
        """
        S_B for every row of a (C, m) multi-index array, taking the columns listed in block
        """
        contents = np.sort(np.asarray(indices)[:, list(block)], axis=1)
        keys = [tuple(row) for row in contents.tolist()]
        missing = sorted({key for key in keys if key not in self._cache})
        if missing:
            table = np.asarray(missing, dtype=np.int64)
            product = self.rows[table[:, 0]]
            for col in range(1, table.shape[1]):
                product = product * self.rows[table[:, col]]
            sums = pairwise_sum(product, axis=-1) * self.normalization(table.shape[1])
            self._cache.update(zip(missing, sums.tolist()))
        return np.asarray([self._cache[key] for key in keys], dtype=np.float64)

    def powers(self, indices: np.ndarray, degree: int) -> np.ndarray:
        """
        normalized P_{k,r} = n^(-r/2) sum_j e_k(X_j)^r for r = 1..degree, shape (degree, K)
        """
        rows = self.rows[np.asarray(indices, dtype=np.int64)]
        out = np.empty((degree, rows.shape[0]))
        current = np.ones_like(rows)
        for r in range(1, degree + 1):
            current = current * rows
            out[r - 1] = pairwise_sum(current, axis=-1) * self.normalization(r)
        return out

    def lagged(self, indices: np.ndarray, lag: int = 1) -> np.ndarray:
        """
        unnormalized sum_{j <= n - lag} e_a(X_j) e_b(X_{j + lag}) for each row (a, b)
        """
        indices = np.asarray(indices, dtype=np.int64)
        if self.n <= lag:
            return np.zeros(indices.shape[0])
        head = self.rows[indices[:, 0], : self.n - lag]
        tail = self.rows[indices[:, 1], lag:]
        return pairwise_sum(head * tail, axis=-1)
