"""Small algebras used by the acceptance suite and the command line."""

from __future__ import annotations

from fractions import Fraction

from ..catalog import builtin
from ..trees import Permutation
from .algebra import MultilinearAlgebra


def upper_triangular() -> MultilinearAlgebra:
    """Upper-triangular 2x2 matrices; basis ``e11, e12, e22`` (indices 0, 1, 2)."""
    mu = builtin("As").generator("mu")
    prod = {(0, 0): 0, (0, 1): 1, (1, 2): 1, (2, 2): 2}
    return MultilinearAlgebra(3, [mu], {"mu": {k: {v: Fraction(1)} for k, v in prod.items()}})


def three_lie_4(c=(1, 1, 1, 1)) -> MultilinearAlgebra:
    """Skew ternary bracket on ``e0..e3`` with ``[e_i, e_j, e_k] = c_l e_l`` for
    ``i < j < k`` and ``l`` the missing index."""
    br = builtin("3Lie").generator("br")
    st = {}
    for m in range(4):
        if not c[m]:
            continue
        trip = [i for i in range(4) if i != m]
        for s in Permutation.all(3):
            st[tuple(trip[s(k) - 1] for k in (1, 2, 3))] = {m: Fraction(c[m] * s.sign())}
    return MultilinearAlgebra(4, [br], {"br": st})


def zero_algebra(dim: int, alphabet) -> MultilinearAlgebra:
    return MultilinearAlgebra.zero(dim, list(alphabet))


def builtin_algebra(name: str) -> MultilinearAlgebra:
    """``upper3`` or ``3lie4`` (optionally ``3lie4:1,1,-1,0``)."""
    if name == "upper3":
        return upper_triangular()
    if name.startswith("3lie4"):
        _, _, spec = name.partition(":")
        c = tuple(int(x) for x in spec.split(",")) if spec else (1, 1, 1, 1)
        if len(c) != 4:
            raise ValueError("3lie4 takes four coefficients")
        return three_lie_4(c)
    raise KeyError(f"unknown builtin algebra {name!r}; known: upper3, 3lie4[:c1,c2,c3,c4]")


__all__ = ["upper_triangular", "three_lie_4", "zero_algebra", "builtin_algebra"]
