import abc
import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from uvstat.enums import BasisFamily
from uvstat.exceptions import IndexRangeError
from uvstat.marginal import MarginalLaw

logger = logging.getLogger("uvstat.basis")


@dataclass(frozen=True)
class OrthonormalityReport:
    family: BasisFamily
    upto: int
    tol: float
    max_deviation: float
    passed: bool
    gram: np.ndarray = field(repr=False, compare=False)


class Basis:
    """
    orthonormal family {e_k} over a marginal law, with e_0 == 1
    """

    family: BasisFamily
    marginal: MarginalLaw
    default_max_index: int

    def __init__(self, max_index: int = None):
        max_index = self.default_max_index if max_index is None else int(max_index)
        if max_index < 1:
            raise IndexRangeError(f"max_index must be positive, got {max_index}")
        self.max_index = max_index

    def __eq__(self, other):
        return (
            isinstance(other, Basis)
            and self.family == other.family
            and self.max_index == other.max_index
        )

    def __hash__(self):
        return hash((self.family, self.max_index))

    def __repr__(self):
        return f"{type(self).__name__}(max_index={self.max_index})"

    @abc.abstractmethod
    def _values(self, k: np.ndarray, t: np.ndarray) -> np.ndarray:
        """
        e_k(t) for k >= 1, broadcasting k of shape (K, 1) against t of shape (1, T)
        """
        raise NotImplementedError

    def check_index(self, indices):
        indices = np.asarray(indices, dtype=np.int64)
        if indices.size and (indices.min() < 0 or indices.max() > self.max_index):
            raise IndexRangeError(
                f"basis index out of range [0, {self.max_index}]: {indices.min()}..{indices.max()}"
            )
        return indices

    def matrix(self, indices: Sequence[int], t, check: bool = True) -> np.ndarray:
        """
        rows e_k(t) for k in indices, shape (len(indices), len(t))
        """
        indices = self.check_index(indices)
        t = np.atleast_1d(np.asarray(t, dtype=np.float64))
        if check:
            t = self.marginal.check_support(t)
        out = np.ones((indices.size, t.size), dtype=np.float64)
        active = indices > 0
        if np.any(active):
            out[active] = self._values(indices[active][:, None].astype(np.float64), t[None, :])
        return out

    def evaluate(self, k: int, t: float) -> float:
        return float(self.matrix([k], [t])[0, 0])

    def gram_matrix(self, upto: int) -> np.ndarray:
        self.check_index([upto])
        indices = np.arange(upto + 1)
        if self.marginal.discrete:
            cutoff = max(self.marginal.cutoff, upto)
            points = self.marginal.support(cutoff)
            rows = self.matrix(indices, points)
            weighted = rows * self.marginal.mass(points)[None, :]
            gram = weighted @ rows.T
        else:
            gram = np.empty((upto + 1, upto + 1))
            for j in indices:
                for k in indices[j:]:
                    value = self.marginal.expectation(
                        lambda t, j=j, k=k: float(np.prod(self.matrix([j, k], [t], check=False)))
                    )
                    gram[j, k] = gram[k, j] = value
        return gram

    def check_orthonormal(self, upto: int, tol: float) -> OrthonormalityReport:
        gram = self.gram_matrix(upto)
        deviation = float(np.max(np.abs(gram - np.eye(upto + 1))))
        passed = deviation <= tol and tol > 0
        logger.debug(f"{self.family.value} gram upto={upto} max|G-I|={deviation:.3e} passed={passed}")
        return OrthonormalityReport(
            family=self.family,
            upto=upto,
            tol=tol,
            max_deviation=deviation,
            passed=passed,
            gram=gram,
        )
