from math import gcd, isqrt
from typing import Optional, Set, Tuple

from sympy import factorint

from src.exact_arithmetic.errors import GaloisToolkitError

# e_l^2 + epsilon * e_l + 1 = 0 for l = 3, 4, 6
EPSILON = {3: 1, 4: 0, 6: -1}


class ConditionEPreconditionError(GaloisToolkitError):
    """Exception raised when the unimodularity or coprimality preconditions fail."""
    pass


def epsilon(l: int) -> int:
    try:
        return EPSILON[l]
    except KeyError as e:
        raise ValueError(f"Rotation order must be one of {sorted(EPSILON)}, got {l}") from e


def exists_h(k: int, l: int) -> Optional[int]:
    """
    Smallest h in [0, k) with k | h^2 + epsilon*h + 1.

    Args:
        k: Positive modulus.
        l: Rotation order (3, 4 or 6).

    Returns:
        Optional[int]: The exponent h, or None when no such h exists.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    eps = epsilon(l)
    for h in range(k):
        if (h * h + eps * h + 1) % k == 0:
            return h
    return None


def nonabelian_h(k: int, l: int) -> Optional[int]:
    """Smallest admissible h with h != 1 (mod k); the rotation then acts nontrivially on Z_k."""
    eps = epsilon(l)
    for h in range(k):
        if (h * h + eps * h + 1) % k == 0 and (h - 1) % k != 0:
            return h
    return None


def norm_form_rep(k: int, l: int) -> Optional[Tuple[int, int]]:
    """
    Coprime (a, b) with k = a^2 - epsilon*a*b + b^2, or None.

    The search runs b upwards from 0 and a downwards from the bound
    ceil(sqrt(2k)), so the first hit has the smallest nonnegative b.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    eps = epsilon(l)
    bound = isqrt(2 * k)
    if bound * bound < 2 * k:
        bound += 1
    for b in range(0, bound + 1):
        for a in range(bound, -bound - 1, -1):
            if gcd(a, b) == 1 and a * a - eps * a * b + b * b == k:
                return a, b
    return None


def prime_condition(k: int, l: int) -> bool:
    """Every prime factor p of k has p = 3 or p = 1 mod 3 (l = 3, 6), or p = 2 or p = 1 mod 4 (l = 4)."""
    epsilon(l)
    for p in factorint(k):
        if l == 4:
            if p != 2 and p % 4 != 1:
                return False
        elif p != 3 and p % 3 != 1:
            return False
    return True


def check_condition_e(a: int, b: int, p: int, q: int, r: int, s: int, m: int, k: int, l: int) -> bool:
    """
    Check gcd(ap - bq, bp - eps*bq + aq, mk) = k and gcd(ar - bs, br - eps*bs + as, mk) = 1.

    Raises:
        ConditionEPreconditionError: If gcd(a, b) != 1 or ps - qr != 1.
    """
    if gcd(a, b) != 1:
        raise ConditionEPreconditionError(f"gcd(a, b) = {gcd(a, b)} for (a, b) = ({a}, {b})")
    if p * s - q * r != 1:
        raise ConditionEPreconditionError(f"ps - qr = {p * s - q * r}, expected 1")
    eps = epsilon(l)
    mk = m * k
    first = gcd(gcd(a * p - b * q, b * p - eps * b * q + a * q), mk)
    second = gcd(gcd(a * r - b * s, b * r - eps * b * s + a * s), mk)
    return first == k and second == 1


def admissible_k_set(limit: int, l: int, definition_convention: bool = False) -> Set[int]:
    """
    The k <= limit admitting some h.

    With ``definition_convention`` the sign of epsilon for l = 6 is flipped
    (k | h^2 + h + 1), the other common way of writing the condition.
    """
    eps = epsilon(l)
    if definition_convention and l == 6:
        eps = 1
    return {k for k in range(1, limit + 1)
            if any((h * h + eps * h + 1) % k == 0 for h in range(k))}


def epsilon_convention_sets(limit: int) -> Tuple[Set[int], Set[int]]:
    """
    Admissible k <= limit for l = 6 under both sign conventions.

    h -> h + 1 maps solutions of h^2 - h + 1 = 0 (mod k) to solutions of
    h^2 + h + 1 = 0 (mod k), so the two sets coincide.
    """
    return admissible_k_set(limit, 6), admissible_k_set(limit, 6, definition_convention=True)
