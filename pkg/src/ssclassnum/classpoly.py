"""Exact Hilbert class polynomials and their roots mod p.

H_D is expanded from numerical j-values at the CM points of the reduced
forms of discriminant D, with enough working precision that every
coefficient rounds unambiguously to an integer. Roots in F_p come from
a direct scan for small p or gcd with X^p - X plus deterministic
splitting for larger p.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import mpmath as mp
import numpy as np

from .arith import is_prime
from .oracles import ReducedForm, forms_class_number, iter_reduced_forms

__all__ = [
    "ClassPolynomial",
    "reduced_forms",
    "j_at_form",
    "class_polynomial",
    "roots_mod_p",
    "CACHE_ENV_VAR",
]

CACHE_ENV_VAR = "SSCLASSNUM_CACHE"
_RETRY_CAP = 6


@dataclass(frozen=True)
class ClassPolynomial:
    """Monic integer polynomial whose roots are the j-invariants with CM
    by the order of discriminant D. coefficients run from the leading 1
    down to the constant term.
    """

    D: int
    coefficients: tuple[int, ...]
    precision_bits: int
    max_rounding_error: float

    def __post_init__(self) -> None:
        if self.coefficients[0] != 1:
            raise ValueError(f"H_{self.D} is not monic")
        if self.precision_bits <= 0:
            raise ValueError("precision_bits must be positive")
        if not 0.0 <= self.max_rounding_error < 0.25:
            raise ValueError(f"rounding error {self.max_rounding_error} not certified")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1


def reduced_forms(D: int) -> list[ReducedForm]:
    """The full primitive reduced system of discriminant D."""
    return list(iter_reduced_forms(D))


def _j_from_q(q: mp.mpc, prec: int) -> mp.mpc:
    """j = E4^3 / Delta evaluated from the q-expansions.

    Series are truncated once |q|^n clears the working precision with a
    margin covering the polynomial factors.
    """
    terms = int((prec + 48) / (-mp.log(abs(q), 2))) + 8
    e4 = mp.mpf(1)
    qn = mp.mpc(1)
    for n in range(1, terms + 1):
        qn *= q
        e4 += 240 * n**3 * qn / (1 - qn)
    delta_prod = mp.mpc(1)
    qn = mp.mpc(1)
    for n in range(1, terms + 1):
        qn *= q
        delta_prod *= (1 - qn) ** 24
    return e4**3 / (q * delta_prod)


def j_at_form(f: ReducedForm, D: int, precision_bits: int) -> mp.mpc:
    """j(tau) at tau = (-b + sqrt(D))/(2a) for the form (a, b, c)."""
    if precision_bits < 64:
        raise ValueError(f"precision_bits={precision_bits} below the 64-bit floor")
    if f.discriminant != D:
        raise ValueError(f"form {f} has discriminant {f.discriminant}, not {D}")
    with mp.workprec(precision_bits + 32):
        tau = mp.mpc(-f.b, mp.sqrt(-D)) / (2 * f.a)
        q = mp.exp(2 * mp.pi * mp.mpc(0, 1) * tau)
        return _j_from_q(q, precision_bits)


def _initial_precision(D: int, forms: list[ReducedForm]) -> int:
    """Coefficient sizes are driven by the largest j, of magnitude about
    e^(pi sqrt(|D|)/a) per form; sum the logs and pad generously.
    """
    est = math.pi * math.sqrt(-D) * sum(1.0 / f.a for f in forms) / math.log(2)
    return math.ceil(est) + 10 * len(forms) + 64


_memo: dict[int, ClassPolynomial] = {}


def _cache_lookup(D: int) -> tuple[int, ...] | None:
    path = os.environ.get(CACHE_ENV_VAR)
    if not path or not os.path.exists(path):
        return None
    with open(path) as fh:
        for line in fh:
            parts = line.split()
            if len(parts) >= 3 and int(parts[0]) == D:
                degree = int(parts[1])
                coeffs = tuple(int(s) for s in parts[2:])
                if len(coeffs) != degree + 1:
                    raise ValueError(f"cache record for D={D} is malformed")
                return coeffs
    return None


def _cache_append(D: int, coeffs: tuple[int, ...]) -> None:
    path = os.environ.get(CACHE_ENV_VAR)
    if not path:
        return
    body = " ".join(str(c) for c in coeffs)
    with open(path, "a") as fh:
        fh.write(f"{D} {len(coeffs) - 1} {body}\n")


def class_polynomial(D: int, bound: int = 10**6) -> ClassPolynomial:
    """H_D with certified integer coefficients.

    Expands prod(X - j_i) at the scheduled precision and rounds; any
    coefficient farther than 0.25 from an integer doubles the precision
    and retries. Cached in memory and, when SSCLASSNUM_CACHE is set, in
    an append-only file of exact records.
    """
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"{D} is not a negative discriminant")
    if -D > bound:
        raise ValueError(f"|D|={-D} exceeds the bound {bound}")
    if D in _memo:
        return _memo[D]
    cached = _cache_lookup(D)
    if cached is not None:
        if len(cached) - 1 != forms_class_number(D):
            raise ValueError(f"cache record for D={D} has the wrong degree")
        # exact integers; the certification fields describe load, not compute
        poly = ClassPolynomial(D, cached, 64, 0.0)
        _memo[D] = poly
        return poly

    forms = reduced_forms(D)
    prec = _initial_precision(D, forms)
    last_err = None
    for _ in range(_RETRY_CAP):
        with mp.workprec(prec + 32):
            js = [j_at_form(f, D, prec) for f in forms]
            coeffs = [mp.mpc(1)]
            for j in js:
                coeffs = [mp.mpc(0)] + coeffs
                for k in range(len(coeffs) - 1):
                    coeffs[k] -= j * coeffs[k + 1]
            coeffs.reverse()  # leading first
            rounded = []
            worst = 0.0
            for z in coeffs:
                n = int(mp.nint(mp.re(z)))
                worst = max(worst, float(abs(z - n)))
                rounded.append(n)
        if worst < 0.25:
            poly = ClassPolynomial(D, tuple(rounded), prec, worst)
            _memo[D] = poly
            _cache_append(D, poly.coefficients)
            return poly
        last_err = worst
        prec *= 2
    raise RuntimeError(
        f"H_{D}: coefficients did not stabilize below error 0.25 "
        f"(last error {last_err} at {prec // 2} bits)"
    )


def _poly_mod(coeffs: tuple[int, ...], p: int) -> list[int]:
    """Ascending-power dense representation of H mod p, normalized."""
    out = [c % p for c in reversed(coeffs)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _pmul(u: list[int], v: list[int], p: int) -> list[int]:
    out = [0] * (len(u) + len(v) - 1)
    for i, ui in enumerate(u):
        if ui:
            for k, vk in enumerate(v):
                out[i + k] = (out[i + k] + ui * vk) % p
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _pmod(u: list[int], v: list[int], p: int) -> list[int]:
    """Remainder of u by v, both ascending, v nonzero."""
    dv = len(v) - 1
    if dv == 0:
        return [0]
    u = u[:]
    inv = pow(v[-1], -1, p)
    while len(u) - 1 >= dv and any(u):
        if u[-1] == 0:
            u.pop()
            continue
        shift = len(u) - 1 - dv
        factor = u[-1] * inv % p
        for k in range(dv + 1):
            u[shift + k] = (u[shift + k] - factor * v[k]) % p
        u.pop()
    while len(u) > 1 and u[-1] == 0:
        u.pop()
    return u


def _pgcd(u: list[int], v: list[int], p: int) -> list[int]:
    while v != [0]:
        u, v = v, _pmod(u, v, p)
    inv = pow(u[-1], -1, p)
    return [c * inv % p for c in u]


def _ppowmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    out = [1]
    acc = _pmod(base, mod, p)
    while e:
        if e & 1:
            out = _pmod(_pmul(out, acc, p), mod, p)
        acc = _pmod(_pmul(acc, acc, p), mod, p)
        e >>= 1
    return out


def _split_linear(g: list[int], p: int) -> set[int]:
    """Roots of a monic product of distinct linear factors over F_p,
    by deterministic shifts: gcd((X+k)^((p-1)/2) - 1, g) for k = 0,1,...
    """
    deg = len(g) - 1
    if deg == 0:
        return set()
    if deg == 1:
        return {-g[0] * pow(g[1], -1, p) % p}
    for k in range(p):
        w = _ppowmod([k, 1], (p - 1) // 2, g, p)
        w = w[:]
        w[0] = (w[0] - 1) % p
        f1 = _pgcd(g, w, p)
        if 0 < len(f1) - 1 < deg:
            f2 = _pmod(g, f1, p)
            assert f2 == [0], "split factor does not divide"
            quotient = _pdiv(g, f1, p)
            return _split_linear(f1, p) | _split_linear(quotient, p)
    raise ArithmeticError(f"no splitting shift found for degree {deg} mod {p}")


def _pdiv(u: list[int], v: list[int], p: int) -> list[int]:
    """Exact quotient u / v, ascending, remainder known to be zero."""
    u = u[:]
    dv = len(v) - 1
    inv = pow(v[-1], -1, p)
    out = [0] * (len(u) - dv)
    for shift in range(len(u) - 1 - dv, -1, -1):
        factor = u[shift + dv] * inv % p
        out[shift] = factor
        if factor:
            for k in range(dv + 1):
                u[shift + k] = (u[shift + k] - factor * v[k]) % p
    return out


_SCAN_LIMIT = 10**5


def roots_mod_p(H: ClassPolynomial, p: int) -> set[int]:
    """All r in F_p with H(r) = 0 mod p.

    Small p: vectorized Horner scan over the whole field. Larger p:
    g = gcd(X^p - X, H mod p) collects the F_p-rational part, then
    deterministic equal-degree splitting extracts the roots.
    """
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if p <= _SCAN_LIMIT:
        return _roots_by_scan(H, p)
    return _roots_by_gcd(H, p)


def _roots_by_scan(H: ClassPolynomial, p: int) -> set[int]:
    r = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in H.coefficients:
        acc = (acc * r + c % p) % p
    return set(int(v) for v in r[acc == 0])


def _roots_by_gcd(H: ClassPolynomial, p: int) -> set[int]:
    hm = _poly_mod(H.coefficients, p)
    if len(hm) == 1:
        return set()
    xp = _ppowmod([0, 1], p, hm, p)
    xp = xp[:] + [0] * (2 - len(xp))
    xp[1] = (xp[1] - 1) % p
    while len(xp) > 1 and xp[-1] == 0:
        xp.pop()
    if xp == [0]:
        g = hm[:]  # X^p - X = 0 mod H: every root is rational
        inv = pow(g[-1], -1, p)
        g = [c * inv % p for c in g]
    else:
        g = _pgcd(hm, xp, p)
    return _split_linear(g, p)
