"""Number-theoretic invariants and finite-level models for the p-adic application.

Everything here is exact integer/rational arithmetic except :func:`fourier_probe`,
which conjugates the averaging action by a complex DFT.

The groups G_{p,q} and Z_p x Z_q are replaced by the finite quotients
Z/M and Z/p^k x Z/q^l, M = p^k q^l.  At that level the Fourier transform of
β_(m,n) is the fibre average

    (α_(m,n) f)(x, y) = N^{-1} Σ_{N x' = x, N y' = y} f(x', y'),   N = p^m q^n,

which is f(x/N, y/N) on functions pulled back from the coarser level and 0
off N(Z/p^k) x N(Z/q^l).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np


class DomainError(ValueError):
    pass


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple:
    """Prime factorisation as sorted ((prime, exponent), ...) by trial division."""
    if n < 1:
        raise DomainError("factorize needs n >= 1")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == ((n, 1),)


def carmichael(n: int) -> int:
    """Exponent of the unit group U(Z/n)."""
    lam = 1
    for p, e in factorize(n):
        if p == 2:
            part = 1 if e == 1 else (2 if e == 2 else 2 ** (e - 2))
        else:
            part = p ** (e - 1) * (p - 1)
        lam = math.lcm(lam, part)
    return lam


def mult_order(m: int, n: int) -> int:
    """Least t >= 1 with m^t = 1 (mod n)."""
    if n < 2:
        raise DomainError("modulus must be >= 2")
    if math.gcd(m, n) != 1:
        raise DomainError(f"gcd({m}, {n}) != 1")
    t = carmichael(n)
    for f, _ in factorize(t) if t > 1 else ():
        while t % f == 0 and pow(m, t // f, n) == 1:
            t //= f
    return t


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise DomainError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _check_pair(p, q):
    if not is_prime(p) or p == 2:
        raise DomainError(f"p = {p} must be an odd prime")
    if not is_prime(q) or q == p:
        raise DomainError(f"q = {q} must be a prime different from p")


def stability_exponent(p: int, q: int) -> int:
    """L = max{l : ord_{p^l}(q) = ord_p(q)}, computed as v_p(q^{ord_p(q)} - 1).

    Cross-checked against direct orders for l <= L + 2.
    """
    _check_pair(p, q)
    d = mult_order(q, p)
    L = valuation(q ** d - 1, p)
    for ell in range(1, L + 3):
        expected = d if ell <= L else p ** (ell - L) * d
        if mult_order(q, p ** ell) != expected:
            raise ArithmeticError(f"order of {q} mod {p}^{ell} disagrees with the valuation formula")
    return L


@dataclass(frozen=True)
class SupernaturalNumber:
    finite: int
    infinite: tuple = ()

    def format(self, ascii_inf=False) -> str:
        inf = "inf" if ascii_inf else "∞"
        return "·".join([str(self.finite)] + [f"{p}^{inf}" for p in self.infinite])

    def __str__(self):
        return self.format()


@dataclass(frozen=True)
class BdInvariants:
    p: int
    q: int
    ord: int
    L: int
    count: int
    supernatural: SupernaturalNumber

    def to_json(self):
        return {"p": self.p, "q": self.q, "ord": self.ord, "L": self.L, "count": self.count,
                "supernatural": self.supernatural.format(ascii_inf=True)}


def bd_invariants(p: int, q: int) -> BdInvariants:
    """Order, stability exponent, number of Bunce-Deddens summands and their supernatural number."""
    L = stability_exponent(p, q)
    d = mult_order(q, p)
    num = p ** (L - 1) * (p - 1)
    if num % d:
        raise ArithmeticError("summand count is not an integer")
    return BdInvariants(p, q, d, L, num // d, SupernaturalNumber(d, (p,)))


def coset_count(p: int, k: int, q: int) -> int:
    """Index of <q> in U(Z/p^k)."""
    if not is_prime(p) or p == 2 or k < 1 or math.gcd(p, q) != 1:
        raise DomainError("coset_count needs an odd prime p, k >= 1 and gcd(p, q) = 1")
    n = p ** k
    return (p ** (k - 1) * (p - 1)) // mult_order(q, n)


def cosets(p: int, k: int, q: int) -> list:
    """Explicit cosets x<q> partitioning U(Z/p^k); brute force, for small moduli."""
    n = p ** k
    seen, out = set(), []
    for x in range(1, n):
        if x % p == 0 or x in seen:
            continue
        orbit, y = [], x
        while y not in seen:
            seen.add(y)
            orbit.append(y)
            y = (y * q) % n
        out.append(sorted(orbit))
    return out


# -- odometer ----------------------------------------------------------------

@dataclass(frozen=True)
class OdometerPoint:
    """Digits (d_0, ..., d_D) with radices (d, p, ..., p)."""

    digits: tuple
    d: int
    p: int

    def __post_init__(self):
        for i, a in enumerate(self.digits):
            if not 0 <= a < self.radix(i):
                raise DomainError(f"digit {i} = {a} outside radix {self.radix(i)}")

    def radix(self, i):
        return self.d if i == 0 else self.p

    @classmethod
    def zero(cls, d, p, depth):
        return cls((0,) * (depth + 1), d, p)


def odometer_step(pt: OdometerPoint) -> OdometerPoint:
    """Add (1, 0, 0, ...) with carry to the right; overflow wraps to zero."""
    digits = list(pt.digits)
    for i in range(len(digits)):
        digits[i] += 1
        if digits[i] < pt.radix(i):
            break
        digits[i] = 0
    return OdometerPoint(tuple(digits), pt.d, pt.p)


def odometer_orbit(start: OdometerPoint, steps: int) -> list:
    out = [start]
    for _ in range(steps):
        out.append(odometer_step(out[-1]))
    return out


def orbit_length(start: OdometerPoint) -> int:
    pt, n = odometer_step(start), 1
    while pt != start:
        pt, n = odometer_step(pt), n + 1
    return n


# -- averaging action on C[Z/M] ----------------------------------------------

@dataclass(frozen=True)
class BetaContext:
    p: int
    q: int
    k: int
    l: int

    def __post_init__(self):
        if self.p == self.q or not is_prime(self.p) or not is_prime(self.q):
            raise DomainError("context needs distinct primes p, q")
        if self.k < 0 or self.l < 0:
            raise DomainError("exponents must be non-negative")

    @property
    def M(self):
        return self.p ** self.k * self.q ** self.l

    def scale(self, mn) -> int:
        m, n = mn
        if m < 0 or n < 0:
            raise DomainError("(m, n) must lie in N^2")
        return self.p ** m * self.q ** n

    def grid(self):
        return itertools.product(range(self.p ** self.k), range(self.q ** self.l))

    def crt(self, j):
        return j % self.p ** self.k, j % self.q ** self.l


@dataclass
class GroupAlgebraElement:
    """Σ c_r u_r in C[Z/M] with rational coefficients."""

    M: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for r, c in self.coeffs.items():
            r = r % self.M
            clean[r] = clean.get(r, 0) + Fraction(c)
        self.coeffs = {r: c for r, c in clean.items() if c}

    @classmethod
    def u(cls, M, r):
        return cls(M, {r: 1})

    def __eq__(self, other):
        return isinstance(other, GroupAlgebraElement) and self.M == other.M and self.coeffs == other.coeffs

    def __add__(self, other):
        out = dict(self.coeffs)
        for r, c in other.coeffs.items():
            out[r] = out.get(r, 0) + c
        return GroupAlgebraElement(self.M, out)

    def __mul__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return GroupAlgebraElement(self.M, {r: c * Fraction(other) for r, c in self.coeffs.items()})
        if other.M != self.M:
            raise DomainError("moduli differ")
        out = {}
        for (r, a), (s, b) in itertools.product(self.coeffs.items(), other.coeffs.items()):
            key = (r + s) % self.M
            out[key] = out.get(key, 0) + a * b
        return GroupAlgebraElement(self.M, out)

    __rmul__ = __mul__

    def to_json(self):
        from .bp import format_rational
        return {str(r): format_rational(c) for r, c in sorted(self.coeffs.items())}


def beta_apply(ctx: BetaContext, mn, elem: GroupAlgebraElement) -> GroupAlgebraElement:
    """β_(m,n)(u_r) = N^{-1} Σ_{N s = r in Z/M} u_s, N = p^m q^n."""
    if elem.M != ctx.M:
        raise DomainError(f"element lives in Z/{elem.M}, context is Z/{ctx.M}")
    M, N = ctx.M, ctx.scale(mn)
    g = math.gcd(N, M)
    step = M // g
    out = {}
    for r, c in elem.coeffs.items():
        if r % g:
            continue
        # one solution of (N/g) s0 = r/g mod M/g, then all lifts s0 + t M/g
        if step == 1:
            s0 = 0
        else:
            s0 = (r // g) * pow(N // g, -1, step) % step
        for t in range(g):
            s = s0 + t * step
            out[s] = out.get(s, 0) + c / N
    return GroupAlgebraElement(M, out)


def alpha_apply(ctx: BetaContext, mn, fn: dict) -> dict:
    """Finite-level pullback along multiplication by N = p^m q^n on Z/p^k x Z/q^l.

    ``fn`` maps (x, y) to rationals (missing keys are 0).  The result at (x, y)
    is N^{-1} times the sum of fn over the solutions of N x' = x, N y' = y; it
    vanishes unless x ∈ N(Z/p^k) and y ∈ N(Z/q^l).
    """
    N = ctx.scale(mn)
    P, Q = ctx.p ** ctx.k, ctx.q ** ctx.l
    pre_x = {}
    for x1 in range(P):
        pre_x.setdefault(N * x1 % P, []).append(x1)
    pre_y = {}
    for y1 in range(Q):
        pre_y.setdefault(N * y1 % Q, []).append(y1)
    out = {}
    for x, xs in pre_x.items():
        for y, ys in pre_y.items():
            total = sum((Fraction(fn.get((a, b), 0)) for a in xs for b in ys), Fraction(0))
            if total:
                out[(x, y)] = total / N
    return out


def beta_matrix(ctx: BetaContext, mn) -> np.ndarray:
    """Matrix of β_(m,n) on the basis u_0..u_{M-1} (column r is β(u_r))."""
    M = ctx.M
    B = np.zeros((M, M))
    for r in range(M):
        for s, c in beta_apply(ctx, mn, GroupAlgebraElement.u(M, r)).coeffs.items():
            B[s, r] = float(c)
    return B


def alpha_matrix(ctx: BetaContext, mn) -> np.ndarray:
    """Matrix of alpha_apply on functions of j ∈ Z/M ≅ Z/p^k x Z/q^l."""
    M = ctx.M
    A = np.zeros((M, M))
    index = {ctx.crt(j): j for j in range(M)}
    for j2 in range(M):
        for key, c in alpha_apply(ctx, mn, {ctx.crt(j2): 1}).items():
            A[index[key], j2] = float(c)
    return A


def fourier_probe(ctx: BetaContext, mn, tol: float = 1e-9) -> dict:
    """Conjugate β by the DFT u_r ↦ (j ↦ e^{2πi rj/M}) and compare with alpha_apply."""
    M = ctx.M
    j = np.arange(M)
    F = np.exp(2j * np.pi * np.outer(j, j) / M)
    Finv = np.conj(F).T / M
    conj = F @ beta_matrix(ctx, mn) @ Finv
    A = alpha_matrix(ctx, mn)
    err = float(np.max(np.abs(conj - A)))
    support_match = bool(np.array_equal(np.abs(conj) > tol, A != 0))
    return {"max_error": err, "support_match": support_match, "ok": err < tol and support_match}
