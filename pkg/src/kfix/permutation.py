"""The computable permutation carrying a self-constructing set onto B.

C = {c_0 < c_1 < ...} is the whole family; A = {c_j : j in B} with B inside
D0 = {3k}. Write D = {3k+1} and E = {3k+2}, enumerated as d_n = 3n + 1 and
e_n = 3n + 2, and let c-bar enumerate the complement of C.

The map that sends c_n to n on D0, to d_{2n} on D and d_{2n+1} on E is not
onto: d_{2n} is only hit when n is in D. Ranking fixes it:

    pi(c_n)     = n                       if n in D0
    pi(c_n)     = d_{2 * rank_D(n)}       if n in D
    pi(c_n)     = d_{2 * rank_E(n) + 1}   if n in E
    pi(cbar_n)  = e_n

where rank_D(n) is the position of n within D. Then D0, D and E are each
covered exactly once, and pi(A) = B.
"""

from __future__ import annotations

from typing import Callable, Optional


def _d(n: int) -> int:
    return 3 * n + 1


def _e(n: int) -> int:
    return 3 * n + 2


class _Family:
    """Rank queries on a strictly increasing sequence c."""

    def __init__(self, c: Callable[[int], int]):
        self.c = c

    def count_below(self, z: int) -> int:
        """#{n : c(n) < z}."""
        c = self.c
        if c(0) >= z:
            return 0
        lo, hi = 0, 1
        while c(hi) < z:
            lo, hi = hi, 2 * hi
        # c(lo) < z <= c(hi)
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if c(mid) < z:
                lo = mid
            else:
                hi = mid
        return hi

    def index_of(self, z: int) -> Optional[int]:
        n = self.count_below(z)
        return n if self.c(n) == z else None

    def complement(self, n: int) -> int:
        """The n-th natural not in C."""
        # least z with at least n + 1 non-members in [0, z]
        lo, hi = n, n
        while hi + 1 - self.count_below(hi + 1) < n + 1:
            hi = 2 * hi + 1
        while lo < hi:
            mid = (lo + hi) // 2
            if mid + 1 - self.count_below(mid + 1) >= n + 1:
                hi = mid
            else:
                lo = mid + 1
        return lo


class RankedPermutation:
    def __init__(self, c: Callable[[int], int]):
        self.family = _Family(c)

    def c(self, n: int) -> int:
        return self.family.c(n)

    def apply(self, z: int) -> int:
        n = self.family.index_of(z)
        if n is None:
            return _e(z - self.family.count_below(z))
        r = n % 3
        if r == 0:
            return n
        if r == 1:
            return _d(2 * (n // 3))
        return _d(2 * (n // 3) + 1)

    def inverse(self, w: int) -> int:
        r = w % 3
        if r == 0:
            return self.c(w)
        if r == 2:
            return self.family.complement((w - 2) // 3)
        m = (w - 1) // 3
        return self.c(3 * (m // 2) + (1 if m % 2 == 0 else 2))


class LiteralPermutation(RankedPermutation):
    """The unranked variant: d_{2n} for n in D, d_{2n+1} for n in E."""

    def apply(self, z: int) -> int:
        n = self.family.index_of(z)
        if n is None:
            return _e(z - self.family.count_below(z))
        r = n % 3
        if r == 0:
            return n
        return _d(2 * n) if r == 1 else _d(2 * n + 1)

    def inverse(self, w: int) -> Optional[int]:
        r = w % 3
        if r == 0:
            return self.c(w)
        if r == 2:
            return self.family.complement((w - 2) // 3)
        m = (w - 1) // 3
        n = m // 2 if m % 2 == 0 else (m - 1) // 2
        want = 1 if m % 2 == 0 else 2
        return self.c(n) if n % 3 == want else None
