import numpy as np

from uvstat.basis import Basis
from uvstat.enums import BasisFamily
from uvstat.marginal import SignedGeometric


class DiscreteSignedBasis(Basis):
    """
    e_k(+-k) = +-2^(k/2), zero elsewhere, over the signed geometric law
    """

    family = BasisFamily.discrete_signed
    marginal = SignedGeometric()
    default_max_index = 30

    def _values(self, k, t):
        return np.where(np.abs(t) == k, np.sign(t) * np.exp2(k / 2.0), 0.0)
