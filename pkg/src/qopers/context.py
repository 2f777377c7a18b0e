"""Precision context shared by every numerical routine in the package.

All arithmetic runs on mpmath multiprecision complex numbers.  A Context
fixes the mantissa size once and derives the tolerance ladder from it:

* ``tol``          -- identity / residual acceptance threshold, 2^(-bits/2)
* ``cluster_tol``  -- two roots closer than this are the same root, 2^(-bits/4)
* ``trim_tol``     -- relative size below which a coefficient is noise, 2^(-3 bits/4)

The context travels explicitly through function arguments; nothing in the
package reads mutable global configuration.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import mpmath


@dataclass(frozen=True)
class Context:
    precision_bits: int = 192
    root_of_unity_window: int = 64
    qz_window: int = 64
    pole_margin: float = 1e-3
    seed: int = 0
    qq_shift_convention: str = "qqall"  # or "qqatype"
    tol_override: float | None = None

    @property
    def tol(self) -> mpmath.mpf:
        if self.tol_override is not None:
            return self._mpf(self.tol_override)
        return self._mpf(2) ** (-self.precision_bits // 2)

    @property
    def cluster_tol(self) -> mpmath.mpf:
        return self._mpf(2) ** (-self.precision_bits // 4)

    @property
    def trim_tol(self) -> mpmath.mpf:
        return self._mpf(2) ** (-(3 * self.precision_bits) // 4)

    def _mpf(self, x) -> mpmath.mpf:
        with mpmath.workprec(self.precision_bits):
            return mpmath.mpf(x)

    def workprec(self):
        """mpmath precision guard; wrap any computation in ``with ctx.workprec():``."""
        return mpmath.workprec(self.precision_bits)

    def rng(self, salt: int = 0) -> random.Random:
        """Deterministic RNG derived from the context seed."""
        return random.Random((self.seed, salt))

    def replace(self, **kw) -> "Context":
        data = {f: getattr(self, f) for f in self.__dataclass_fields__}
        data.update(kw)
        return Context(**data)


DEFAULT_CONTEXT = Context()
