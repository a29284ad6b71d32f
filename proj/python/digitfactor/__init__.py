"""Digit-polynomial factoring toolkit.

Big integers cross into the extension as decimal strings; the wrappers here
accept Python ints and convert.
"""

try:
    from ._digitfactor import (
        bench,
        digits as _digits,
        factorize as _factorize,
        is_prime as _is_prime,
        nu_bruteforce as _nu_bruteforce,
        nu_formula,
        prime_char as _prime_char,
        single_run as _single_run,
    )
except ImportError:  # build-tree layout: extension lives next to the package
    from _digitfactor import (
        bench,
        digits as _digits,
        factorize as _factorize,
        is_prime as _is_prime,
        nu_bruteforce as _nu_bruteforce,
        nu_formula,
        prime_char as _prime_char,
        single_run as _single_run,
    )

__all__ = [
    "factorize",
    "is_prime",
    "digits",
    "nu_bruteforce",
    "nu_formula",
    "prime_char",
    "single_run",
    "bench",
]


def factorize(n):
    """Prime factorization of n as a list of (prime, exponent), ascending."""
    return [(int(p), e) for p, e in _factorize(str(int(n)))]


def is_prime(n):
    return _is_prime(str(int(n)))


def digits(n, b):
    """Base-b digits of n, ascending (the b-adic digit polynomial)."""
    return [int(c) for c in _digits(str(int(n)), str(int(b)))]


def nu_bruteforce(n, coeffs):
    """Count of x in Z_n with 1 < gcd(f(x), n) < n, f given by coefficients."""
    return _nu_bruteforce(str(int(n)), [str(int(c)) for c in coeffs])


def prime_char(n, mode="fermat"):
    return _prime_char(str(int(n)), mode)


def single_run(n):
    """One grid scan of n; returns the outcome record."""
    return _single_run(str(int(n)))
