"""Witness identities: central exponents in the Heisenberg group, torsion
inverse witnesses, and nonnegative-combination inverse certificates on Z."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .groups import (
    GroupElement,
    heisenberg,
    identity,
    invert,
    multiply,
    power,
)

_H = heisenberg()
_A = GroupElement(_H, (1, 0, 0))
_B = GroupElement(_H, (0, 1, 0))


@dataclass(frozen=True)
class NilpotentIdentityResult:
    exponent_pos: int
    exponent_neg: int
    expected_pos: int
    expected_neg: int

    @property
    def holds(self) -> bool:
        return (self.exponent_pos == self.expected_pos
                and self.exponent_neg == self.expected_neg)


def _central_exponent(g: GroupElement) -> int:
    a, b, c = g.payload
    if a != 0 or b != 0:
        raise ValueError(f"product {g.payload} is not central")
    return c


def nilpotent_identity_check(k1: int, k2: int, k3: int, k4: int,
                             n: int, m: int) -> NilpotentIdentityResult:
    """Multiply out c^n d^m e^n f^m and d^m c^n f^m e^n in the Heisenberg group.

    Here z = [a, b] is the central generator, c = a z^k1, d = b z^k2,
    e = a^-1 z^k3, f = b^-1 z^k4. Both products are central; the first must
    have exponent n*m + L and the second -n*m + L, where
    L = (k1 + k3) n + (k2 + k4) m.
    """
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    z = GroupElement(_H, (0, 0, 1))
    c = multiply(_A, power(z, k1))
    d = multiply(_B, power(z, k2))
    e = multiply(invert(_A), power(z, k3))
    f = multiply(invert(_B), power(z, k4))
    cn, dm, en, fm = power(c, n), power(d, m), power(e, n), power(f, m)
    pos = _central_exponent(multiply(multiply(cn, dm), multiply(en, fm)))
    neg = _central_exponent(multiply(multiply(dm, cn), multiply(fm, en)))
    ell = (k1 + k3) * n + (k2 + k4) * m
    return NilpotentIdentityResult(pos, neg, n * m + ell, -n * m + ell)


@dataclass(frozen=True)
class NilpotentGridResult:
    cases: int
    failures: tuple[tuple[int, int, int, int, int, int], ...]

    @property
    def all_hold(self) -> bool:
        return not self.failures


def nilpotent_identity_grid(k_values: Iterable[int],
                            n_values: Iterable[int],
                            m_values: Iterable[int]) -> NilpotentGridResult:
    """Run nilpotent_identity_check over a full (k1..k4, n, m) grid.

    Same group law as nilpotent_identity_check, evaluated on raw integer
    triples with powers shared across the grid so that large grids finish
    in well under a second.
    """

    def mul(p, q):
        return (p[0] + q[0], p[1] + q[1], p[2] + q[2] + p[0] * q[1])

    def powers(base, upto):
        acc = (0, 0, 0)
        out = [acc]
        for _ in range(upto):
            acc = mul(acc, base)
            out.append(acc)
        return out

    ks = sorted(set(int(k) for k in k_values))
    ns = sorted(set(int(n) for n in n_values))
    ms = sorted(set(int(m) for m in m_values))
    if any(n < 1 for n in ns) or any(m < 1 for m in ms):
        raise ValueError("n and m must be positive")
    n_max, m_max = max(ns), max(ms)
    failures: list[tuple[int, int, int, int, int, int]] = []
    cases = 0
    for k1 in ks:
        for k2 in ks:
            for k3 in ks:
                for k4 in ks:
                    cpow = powers((1, 0, k1), n_max)
                    dpow = powers((0, 1, k2), m_max)
                    epow = powers((-1, 0, k3), n_max)
                    fpow = powers((0, -1, k4), m_max)
                    kn, km = k1 + k3, k2 + k4
                    for n in ns:
                        cn, en = cpow[n], epow[n]
                        for m in ms:
                            cases += 1
                            ell = kn * n + km * m
                            p = mul(mul(cn, dpow[m]), mul(en, fpow[m]))
                            q = mul(mul(dpow[m], cn), mul(fpow[m], en))
                            ok = (p[0] == 0 and p[1] == 0 and p[2] == n * m + ell
                                  and q[0] == 0 and q[1] == 0
                                  and q[2] == -n * m + ell)
                            if not ok:
                                failures.append((k1, k2, k3, k4, n, m))
    return NilpotentGridResult(cases, tuple(failures))


@dataclass(frozen=True)
class TorsionInverseWitness:
    k: int
    witness: GroupElement


def torsion_inverse_witness(x: GroupElement, y: GroupElement,
                            max_k: int) -> TorsionInverseWitness | None:
    """Search for the least k <= max_k with (xy)^k = e and return y (xy)^(k-1).

    Whenever such a k exists the returned witness equals x^-1, because
    x * y (xy)^(k-1) = (xy)^k = e. Absence within the budget returns None.
    """
    if max_k < 1:
        raise ValueError("max_k must be positive")
    e = identity(x.descriptor)
    xy = multiply(x, y)
    prev = e  # (xy)^(k-1)
    cur = xy  # (xy)^k
    for k in range(1, max_k + 1):
        if cur == e:
            return TorsionInverseWitness(k, multiply(y, prev))
        prev = cur
        cur = multiply(cur, xy)
    return None


@dataclass(frozen=True)
class ZInverseCertificate:
    """Nonnegative multiplicities (a, b) with a*y + b*x = -x for x, y in Z.

    With x > 0 > y the certificate is a = x copies of y and b = -y - 1
    copies of x; with x < 0 < y it is a = -x copies of y and b = y - 1
    copies of x. Both are sums of semigroup elements equal to -x.
    """

    x: int
    y: int
    y_copies: int
    x_copies: int

    @property
    def combination_value(self) -> int:
        return self.y_copies * self.y + self.x_copies * self.x

    @property
    def holds(self) -> bool:
        return self.combination_value == -self.x


def z_inverse_witness(x: int, y: int) -> ZInverseCertificate:
    """Certificate that -x is a nonnegative combination of x and an opposite-sign y."""
    if x == 0:
        raise ValueError("x must be nonzero")
    if x > 0:
        if y >= 0:
            raise ValueError("x > 0 requires y < 0")
        cert = ZInverseCertificate(x, y, y_copies=x, x_copies=-y - 1)
    else:
        if y <= 0:
            raise ValueError("x < 0 requires y > 0")
        cert = ZInverseCertificate(x, y, y_copies=-x, x_copies=y - 1)
    assert cert.holds
    return cert
