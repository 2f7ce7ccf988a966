"""The exact theta-action on atoms and the forward operator P(theta).

theta = x d/dx acts coordinate-wise.  On the atom class:

  theta Delta(k)        = -(k+1) Delta(k)
  theta MonLog(n,p,s)   = n MonLog(n,p,s) + p MonLog(n,p-1,s)      (p >= 1)
  theta MonLog(n,0,s)   = n MonLog(n,0,s)                          (n >= 0)
  theta MonLog(n,0,s)   = n MonLog(n,0,s) + correction             (n <= -1)

with correction sum_{i=0}^{-n-1} ((-1)^i / i!) Delta(i) for s = +1 and
sum_{i=0}^{-n-1} (1 / i!) Delta(i) for s = -1.  The corrections are fixed
by the finite-part convention of the pairing oracle (split at |x| = 1,
Taylor subtraction on the inner interval, s = -1 atoms defined by
reflection); the oracle's adjoint-identity suite certifies every entry.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable

from .atoms import Atom1D, Delta, DistExpr, MonLog, TensorTerm, atom_key, dist
from .errors import DimensionError
from .poly import Polynomial, grlex_key


def apply_theta(j: int, a: Atom1D) -> list[tuple[Fraction, Atom1D]]:
    """Exact action of theta_j on one atom in coordinate j (1-based).

    The rule itself does not depend on j; the index is kept for interface
    symmetry with the expression-level operators.
    """
    if j < 1:
        raise DimensionError(f"coordinate index must be >= 1, got {j}")
    if isinstance(a, Delta):
        return [(Fraction(-(a.k + 1)), a)]
    out: list[tuple[Fraction, Atom1D]] = []
    if a.n != 0:
        out.append((Fraction(a.n), a))
    if a.p >= 1:
        out.append((Fraction(a.p), MonLog(a.n, a.p - 1, a.s)))
    elif a.n <= -1:
        for i in range(-a.n):
            c = Fraction(1, factorial(i))
            if a.s == 1 and i % 2 == 1:
                c = -c
            out.append((c, Delta(i)))
    return out


def apply_theta_expr(j: int, e: DistExpr) -> DistExpr:
    """theta_j applied to a whole expression."""
    if not 1 <= j <= e.dim:
        raise DimensionError(f"coordinate {j} out of range 1..{e.dim}")
    terms = []
    for t in e.terms:
        for c, a in apply_theta(j, t.factors[j - 1]):
            factors = t.factors[: j - 1] + (a,) + t.factors[j:]
            terms.append(TensorTerm(t.coeff * c, factors))
    return dist(e.dim, terms)


def apply_polynomial(P: Polynomial, e: DistExpr) -> DistExpr:
    """The Euler operator P(theta) applied exactly to an expression.

    theta^alpha is iterated factor-wise; intermediate results are shared
    across the monomials of P by walking exponents in graded order.
    """
    if P.dim != e.dim:
        raise DimensionError(f"polynomial dim {P.dim} vs expression dim {e.dim}")
    if P.is_zero() or e.is_zero():
        return DistExpr.zero(e.dim)
    cache: dict[tuple[int, ...], DistExpr] = {(0,) * e.dim: e}

    def theta_power(alpha: tuple[int, ...]) -> DistExpr:
        got = cache.get(alpha)
        if got is not None:
            return got
        j = next(i for i, a in enumerate(alpha) if a > 0)
        prev = alpha[:j] + (alpha[j] - 1,) + alpha[j + 1 :]
        val = apply_theta_expr(j + 1, theta_power(prev))
        cache[alpha] = val
        return val

    collected: list[TensorTerm] = []
    for alpha, c in sorted(P.terms.items(), key=lambda t: grlex_key(t[0])):
        collected.extend(t.scaled(c) for t in theta_power(alpha).terms)
    return dist(e.dim, collected)


def equal(a: DistExpr, b: DistExpr) -> bool:
    """Exact distributional equality within the class (canonical identity)."""
    if a.dim != b.dim:
        raise DimensionError(f"dim mismatch: {a.dim} vs {b.dim}")
    return (a - b).is_zero()


def closure(atoms: Iterable[Atom1D]) -> tuple[Atom1D, ...]:
    """Smallest atom set containing the input and stable under theta (1-D)."""
    seen: set[Atom1D] = set()
    todo = list(atoms)
    while todo:
        a = todo.pop()
        if a in seen:
            continue
        seen.add(a)
        for _, b in apply_theta(1, a):
            if b not in seen:
                todo.append(b)
    return tuple(sorted(seen, key=atom_key))
