"""Independent computations of successive minima, used to cross-check the engine.

Neither oracle builds a joint basis.  The exterior oracle reads partial
sums of minima off exterior powers; the Smith-form oracle treats integer
weight norms as lattices and reads minima off invariant factors.
"""
from __future__ import annotations

import itertools
import json
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from .errors import ModeError, NonIntegerWeights, OutOfRange, SingularMatrix
from .normspace.joint import same_valuation
from .normspace.metrics import successive_minima
from .normspace.norms import FILTRATION, NORM, DiagonalNorm, check_compatible
from .valfield import INF, FieldSpec, common_denominator, det, int_det, inverse, matmul, padic_order

EXTERIOR_MAX_DIM = 8


def _transition(a: DiagonalNorm, b: DiagonalNorm):
    """a's basis vectors as columns in b's coordinates, scaled to integers.

    Returns ``(integer matrix, scale)`` with ``matrix = scale * b^-1 a``.
    """
    M = matmul(inverse(b.basis), a.basis)
    D = common_denominator(x for row in M for x in row)
    return [[int(x * D) for x in row] for row in M], D


def exterior_minima_oracle(a: DiagonalNorm, b: DiagonalNorm, k: int) -> Fraction:
    """Sum of the ``k`` largest successive minima of ``(a, b)``.

    Computed as the largest minimum of the ``k``-th exterior powers, which is
    attained on a wedge of a's basis vectors.
    """
    check_compatible(a, b)
    if not same_valuation(a, b):
        raise ModeError("the exterior oracle needs two norms or two filtrations")
    n = a.dim
    if n > EXTERIOR_MAX_DIM:
        raise OutOfRange(f"exterior oracle limited to dimension {EXTERIOR_MAX_DIM}")
    if not 1 <= k <= n:
        raise OutOfRange(f"k must lie in [1, {n}], got {k}")
    M, D = _transition(a, b)
    scale_val = k * b.coefficient_val(Fraction(D))
    best = None
    subsets = list(itertools.combinations(range(n), k))
    for I in subsets:
        alpha_I = sum((a.weights[i] for i in I), Fraction(0))
        wedge = INF
        for J in subsets:
            minor = int_det([[M[j][i] for i in I] for j in J])
            if minor == 0:
                continue
            w = b.coefficient_val(Fraction(minor)) - scale_val + sum((b.weights[j] for j in J), Fraction(0))
            if w < wedge:
                wedge = w
        if wedge == INF:
            raise SingularMatrix("transition matrix is singular")
        cand = alpha_I - wedge
        if best is None or cand > best:
            best = cand
    return best


def snf_minima_oracle(a: DiagonalNorm, b: DiagonalNorm) -> tuple:
    """Successive minima of two integer-weight p-adic norms via Smith normal form.

    The unit balls are the lattices spanned by ``p^-w_i b_i``; the p-orders of
    the invariant factors of the transition matrix are the minima.
    """
    check_compatible(a, b)
    if a.mode != NORM or b.mode != NORM or a.field.is_trivial:
        raise ModeError("the Smith-form oracle needs two p-adic norms")
    if any(w.denominator != 1 for w in a.weights + b.weights):
        raise NonIntegerWeights("the Smith-form oracle needs integer weights")
    p = a.field.p
    n = a.dim
    A = tuple(tuple(a.basis[i][j] * Fraction(p) ** (-int(a.weights[j])) for j in range(n)) for i in range(n))
    B = tuple(tuple(b.basis[i][j] * Fraction(p) ** (-int(b.weights[j])) for j in range(n)) for i in range(n))
    T = matmul(inverse(A), B)
    D = common_denominator(x for row in T for x in row)
    Tint = DomainMatrix([[ZZ(int(x * D)) for x in row] for row in T], (n, n), ZZ)
    shift = padic_order(D, p)
    factors = invariant_factors(Tint)
    if len(factors) != n or any(f == 0 for f in factors):
        raise SingularMatrix("transition matrix is singular")
    return tuple(sorted((Fraction(padic_order(int(f), p) - shift) for f in factors), reverse=True))


# --- random instances -------------------------------------------------------

MODE_PAIRS = ((NORM, NORM), (NORM, FILTRATION), (FILTRATION, FILTRATION))


def _random_basis(rng: random.Random, n: int):
    while True:
        rows = tuple(tuple(Fraction(rng.randint(-9, 9)) for _ in range(n)) for _ in range(n))
        if det(rows) != 0:
            return rows


def _random_weights(rng: random.Random, n: int, den_bound: int):
    return tuple(Fraction(rng.randint(-3 * den_bound, 3 * den_bound), rng.randint(1, den_bound)) for _ in range(n))


def random_norm(rng: random.Random, field: FieldSpec, n: int, den_bound: int, mode: str) -> DiagonalNorm:
    return DiagonalNorm(field, mode, _random_basis(rng, n), _random_weights(rng, n, den_bound))


def _field(p) -> FieldSpec:
    return FieldSpec.trivial() if p in (None, "trivial") else FieldSpec.padic(int(p))


def random_instance(seed, n: int, p, weight_denominator_bound: int = 4, mode_pair=(NORM, NORM)):
    """Reproducible random pair of norms: integer bases in [-9, 9], bounded weight denominators."""
    if n < 1:
        raise OutOfRange("dimension must be >= 1")
    rng = random.Random(seed)
    field = _field(p)
    ma, mb = mode_pair
    a = random_norm(rng, field, n, weight_denominator_bound, ma)
    b = random_norm(rng, field, n, weight_denominator_bound, mb)
    return a, b


# --- suite ----------------------------------------------------------------------


@dataclass
class OracleReport:
    kind: str
    instance: dict
    engine: list
    oracle: list
    equal: bool
    extra: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def suite_instances(count: int, seed: int = 0, max_dim: int = 6, primes=(2, 3, 5), den_bound: int = 4):
    """Deterministic descriptors for a suite of same-valuation pairs."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(1, max_dim)
        p = rng.choice(primes)
        modes = rng.choice(((NORM, NORM), (FILTRATION, FILTRATION)))
        den = 1 if i % 4 == 0 else den_bound
        out.append({"seed": f"{seed}:{i}", "n": n, "p": p, "den": den, "modes": list(modes)})
    return out


def check_instance(desc: dict) -> list:
    a, b = random_instance(desc["seed"], desc["n"], desc["p"], desc["den"], tuple(desc["modes"]))
    lams = successive_minima(a, b)
    partial = list(itertools.accumulate(lams))
    ext = [exterior_minima_oracle(a, b, k) for k in range(1, a.dim + 1)]
    reports = [OracleReport("exterior", desc, [str(x) for x in partial], [str(x) for x in ext], partial == ext)]
    if a.mode == NORM and desc["den"] == 1:
        snf = list(snf_minima_oracle(a, b))
        reports.append(OracleReport("snf", desc, [str(x) for x in lams], [str(x) for x in snf], list(lams) == snf))
    return reports


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("ULTRANORM_THREADS", "1")))
    except ValueError:
        return 1


def run_suite(descs: Iterable[dict], threads: int | None = None) -> list:
    descs = list(descs)
    threads = threads or thread_count()
    if threads == 1:
        results = [check_instance(d) for d in descs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(check_instance, descs))
    return [r for rs in results for r in rs]


__all__ = [
    "MODE_PAIRS",
    "OracleReport",
    "check_instance",
    "exterior_minima_oracle",
    "random_instance",
    "random_norm",
    "run_suite",
    "snf_minima_oracle",
    "suite_instances",
    "thread_count",
]
