"""Stand-alone re-verification of witness certificates and PSL reports.

Deliberately shares nothing with the construction code: field elements are
plain coefficient lists reduced modulo the stated polynomial, and the
commutator identity is checked as A B = mu B A so no inverses are needed.
"""

from __future__ import annotations

import itertools
import math


class _Field:
    def __init__(self, desc: dict):
        self.p = int(desc["p"])
        self.e = int(desc["e"])
        self.irr = [int(c) for c in desc["irr"]]
        if len(self.irr) != self.e + 1 or self.irr[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        if not _is_prime(self.p):
            raise ValueError("characteristic is not prime")
        if self.e > 1 and not self._irreducible():
            raise ValueError("modulus is reducible")

    def _irreducible(self) -> bool:
        p, e = self.p, self.e
        for d in range(1, e // 2 + 1):
            for tail in itertools.product(range(p), repeat=d):
                div = list(tail) + [1]
                if not any(_poly_rem(self.irr, div, p)):
                    return False
        return True

    def elem(self, coeffs) -> tuple:
        c = [int(x) % self.p for x in coeffs]
        c += [0] * (self.e - len(c))
        return tuple(c[: self.e])

    def zero(self) -> tuple:
        return (0,) * self.e

    def one(self) -> tuple:
        return (1,) + (0,) * (self.e - 1)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def mul(self, a, b):
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        r = _poly_rem(prod, self.irr, self.p)
        r += [0] * (self.e - len(r))
        return tuple(r[: self.e])

    def pow(self, a, k: int):
        out = self.one()
        while k:
            if k & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            k >>= 1
        return out

    def inv(self, a):
        q = self.p**self.e
        return self.pow(a, q - 2)

    def neg(self, a):
        return tuple((-x) % self.p for x in a)


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def _poly_rem(a, m, p):
    a = [x % p for x in a]
    dm = len(m) - 1
    while len(a) - 1 >= dm and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < dm:
            break
        c = a[-1] * pow(m[-1], -1, p) % p
        shift = len(a) - 1 - dm
        for i, y in enumerate(m):
            a[shift + i] = (a[shift + i] - c * y) % p
        a.pop()
    return a


def _matmul(F: _Field, A, B):
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = F.zero()
            for k in range(n):
                acc = F.add(acc, F.mul(A[i][k], B[k][j]))
            row.append(acc)
        out.append(row)
    return out


def _det(F: _Field, M):
    M = [row[:] for row in M]
    n = len(M)
    det = F.one()
    for c in range(n):
        piv = next((r for r in range(c, n) if any(M[r][c])), None)
        if piv is None:
            return F.zero()
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = F.neg(det)
        det = F.mul(det, M[c][c])
        inv = F.inv(M[c][c])
        for r in range(c + 1, n):
            if any(M[r][c]):
                fac = F.mul(M[r][c], inv)
                M[r] = [F.add(x, F.neg(F.mul(fac, y))) for x, y in zip(M[r], M[c])]
    return det


def _order_is(F: _Field, mu, order: int) -> bool:
    if F.pow(mu, order) != F.one():
        return False
    return all(F.pow(mu, order // r) != F.one() for r in _prime_divisors(order))


def _prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def check_witness_json(cert: dict) -> list[str]:
    """Failures found in a commutator-witness certificate (empty if valid)."""
    fails = []
    try:
        F = _Field(cert["field"])
    except (KeyError, ValueError) as exc:
        return [f"bad field: {exc}"]
    m, p, n = int(cert["m"]), int(cert["p"]), int(cert["n"])
    P = p**n
    mu = F.elem(cert["mu"])
    A = [[F.elem(c) for c in row] for row in cert["A"]]
    B = [[F.elem(c) for c in row] for row in cert["B"]]
    if len(A) != m or len(B) != m or any(len(r) != m for r in A + B):
        return ["matrix size does not match m"]
    if m % P:
        fails.append("p^n does not divide m")
    if not _order_is(F, mu, P):
        fails.append("mu does not have order p^n")
    if _det(F, A) != F.one():
        fails.append("det(A) != 1")
    if _det(F, B) != F.one():
        fails.append("det(B) != 1")
    AB = _matmul(F, A, B)
    BA = _matmul(F, B, A)
    if any(AB[i][j] != F.mul(mu, BA[i][j]) for i in range(m) for j in range(m)):
        fails.append("A B != mu B A")
    return fails


def check_report_json(report: dict) -> list[str]:
    """Re-check every certificate in a JSON document, recursively."""
    fails: list[str] = []
    _walk(report, "$", fails)
    return fails


def _walk(node, path: str, fails: list[str]) -> None:
    if isinstance(node, dict):
        kind = node.get("kind")
        if kind == "commutator-witness":
            fails.extend(f"{path}: {f}" for f in check_witness_json(node))
            return
        if kind == "psl-report":
            fails.extend(f"{path}: {f}" for f in _check_psl(node))
        for k, v in node.items():
            _walk(v, f"{path}.{k}", fails)
    elif isinstance(node, list):
        for i, v in enumerate(node):
            _walk(v, f"{path}[{i}]", fails)


def _check_psl(rep: dict) -> list[str]:
    prm = rep["params"]
    n, q, d = int(prm["n"]), int(prm["q"]), int(prm["d"])
    fails = []
    if d != math.gcd(n, q - 1):
        fails.append("d != gcd(n, q-1)")
    if rep["conclusion"] == "b0-trivial-by-commutator-witnesses":
        certs = rep["certificates"]
        primes = sorted(int(r) for r in certs)
        if primes != _prime_divisors(d):
            fails.append("certificates do not cover the primes of d")
        for r, c in certs.items():
            r = int(r)
            k = 0
            dd = d
            while dd % r == 0:
                dd //= r
                k += 1
            if int(c["p"]) != r or int(c["n"]) != k or int(c["m"]) != n:
                fails.append(f"certificate for r = {r} has the wrong shape")
            if c["field"]["p"] ** c["field"]["e"] != q:
                fails.append(f"certificate for r = {r} is over the wrong field")
    elif rep["conclusion"] == "b0-trivial-center-trivial":
        if d != 1:
            fails.append("center-trivial conclusion with d > 1")
    return fails
