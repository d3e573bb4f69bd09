import numpy as np

from uvstat.basis import Basis
from uvstat.enums import BasisFamily
from uvstat.marginal import UniformSymmetric

SQRT2 = np.sqrt(2.0)


class SineWienerBasis(Basis):
    """
    e_k(t) = sqrt(2) sin(pi (k - 1/2) t) on [-1, 1] with the uniform marginal,
    eigenfunctions of the kernel sign(ts) min(|t|, |s|)
    """

    family = BasisFamily.sine_wiener
    marginal = UniformSymmetric()
    default_max_index = 200

    def _values(self, k, t):
        return SQRT2 * np.sin(np.pi * (k - 0.5) * t)

    @staticmethod
    def frequency(k) -> np.ndarray:
        return np.pi * (np.asarray(k, dtype=np.float64) - 0.5)
