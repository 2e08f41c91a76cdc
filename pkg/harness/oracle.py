"""
Memoized engine calls for one suite run.

Suites ask the same question many times (the forward modulus at epsilon
feeds three different checks); CachedOracle answers each (query, arguments)
pair once.
"""
import logging

from expansivity.radii import largest_gamma, n_expansivity_radius, positive_expansivity_radius
from multiplicity.counting import (
    count_at_most,
    decide_unique_h,
    max_shadower_count,
    n_shadow_modulus,
    two_sided_count_at_most,
    unique_s_limit_modulus,
)
from shadowing.deciders import decide
from shadowing.moduli import modulus

logger = logging.getLogger(__name__)


class CachedOracle:
    def __init__(self, sys, budget=None):
        self.sys = sys
        self.budget = budget
        self._cache = {}
        self.hits = 0

    def _memo(self, key, compute):
        if key in self._cache:
            self.hits += 1
            return self._cache[key]
        value = compute()
        self._cache[key] = value
        return value

    def __len__(self):
        return len(self._cache)

    def decide(self, kind, epsilon, delta):
        return self._memo(
            ('decide', kind, epsilon, delta),
            lambda: decide(self.sys, kind, epsilon, delta, self.budget),
        )

    def modulus(self, kind, epsilon, exhaustive=False):
        return self._memo(
            ('modulus', kind, epsilon, exhaustive),
            lambda: modulus(self.sys, kind, epsilon, self.budget, exhaustive=exhaustive),
        )

    def count_at_most(self, n, epsilon, delta):
        return self._memo(
            ('count', n, epsilon, delta),
            lambda: count_at_most(self.sys, n, epsilon, delta, self.budget),
        )

    def two_sided_count_at_most(self, n, epsilon, delta):
        return self._memo(
            ('twosided-count', n, epsilon, delta),
            lambda: two_sided_count_at_most(self.sys, n, epsilon, delta, self.budget),
        )

    def max_shadower_count(self, epsilon, delta, cap):
        return self._memo(
            ('max-count', epsilon, delta, cap),
            lambda: max_shadower_count(self.sys, epsilon, delta, cap=cap, budget=self.budget),
        )

    def unique_h(self, epsilon, delta):
        return self._memo(
            ('unique-h', epsilon, delta),
            lambda: decide_unique_h(self.sys, epsilon, delta, self.budget),
        )

    def n_shadow_modulus(self, n, epsilon):
        return self._memo(
            ('n-shadow-modulus', n, epsilon),
            lambda: n_shadow_modulus(self.sys, n, epsilon, self.budget),
        )

    def unique_s_limit_modulus(self, epsilon):
        return self._memo(
            ('unique-s-limit-modulus', epsilon),
            lambda: unique_s_limit_modulus(self.sys, epsilon, self.budget),
        )

    def positive_radius(self, n):
        return self._memo(('positive-radius', n), lambda: positive_expansivity_radius(self.sys, n))

    def two_sided_radius(self, n):
        return self._memo(
            ('twosided-radius', n), lambda: n_expansivity_radius(self.sys, n, self.budget),
        )

    def largest_gamma(self, r):
        return self._memo(('largest-gamma', r), lambda: largest_gamma(self.sys, r))
