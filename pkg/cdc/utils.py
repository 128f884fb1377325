# cdc/utils.py
"""Numeric helpers."""
import math

from django.core.exceptions import ValidationError


def binary_entropy(p: float) -> float:
    if p <= 0 or p >= 1:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def entropy_bound_check(n: int, k: int) -> bool:
    """
    Evaluate sum_{i<=k} C(n, i) <= 2^(H(k/n) n) numerically.

    Args:
        n: Ground set size
        k: Upper summation limit, 1 <= k < n and 2k <= n

    Returns:
        bool: Whether the inequality holds for these values
    """
    if not (1 <= k < n and 2 * k <= n):
        raise ValidationError('entropy_bound_check needs 1 <= k < n and 2k <= n')
    lhs = sum(math.comb(n, i) for i in range(k + 1))
    rhs = 2 ** (binary_entropy(k / n) * n)
    return lhs <= rhs * (1 + 1e-12)
