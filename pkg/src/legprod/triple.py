"""Triple products of Legendrian knots."""

from collections import Counter

from .errors import DegenerateTriple, InvalidModel
from .model import require_valid
from .product import perturb_product, product_tb, tau


def triple_tau(a, b, c):
    """2 if (a, b, c) satisfy the strict triangle inequalities, else 0."""
    if a <= 0 or b <= 0 or c <= 0:
        raise ValueError("actions must be positive")
    if a + b == c or abs(a - b) == c or b + c == a or abs(b - c) == a:
        raise DegenerateTriple(f"({a}, {b}, {c}) lies on a triangle-equality hyperplane")
    return 2 if abs(a - b) < c < a + b else 0


def _require_knots(*models):
    require_valid(*models)
    for m in models:
        if m.dim != 1:
            raise InvalidModel([f"triple products need knots (dim 1), got dim {m.dim}"])


def triple_tb(K1, K2, K3):
    """tb(K1 x K2 x K3) for three Legendrian knots by the closed form.

    Equal actions across factors are allowed here: they enter the iterated
    computation only through chords whose contributions cancel in pairs.
    """
    _require_knots(K1, K2, K3)
    total = 0
    for a in K1.chords:
        for b in K2.chords:
            sab = a.sign * b.sign
            for c in K3.chords:
                t = triple_tau(a.action, b.action, c.action)
                if t:
                    total += t * sab * c.sign
    return total


def iterated_tb(K1, K2, K3):
    """tb via two applications of the two-factor formula."""
    inner = perturb_product(K1, K2, strict=True).model
    return product_tb(inner, K3)


def triple_vs_iterated(K1, K2, K3):
    closed = triple_tb(K1, K2, K3)
    iterated = iterated_tb(K1, K2, K3)
    return closed, iterated, closed == iterated


def iterated_tau_contributions(K1, K2, K3):
    """Split the tau-sum of the iterated computation by perturbed-chord kind.

    Returns a Counter ``kind -> sum of tau * sign(p) * sign(c)`` over chords
    p of the strict product K1 x K2 and chords c of K3.
    """
    _require_knots(K1, K2, K3)
    chords, inner = perturb_product(K1, K2, strict=True)
    n, m = inner.dim, K3.dim
    out = Counter({k: 0 for k in "ABCD"})
    for p in chords:
        for c in K3.chords:
            out[p.kind] += tau(p.key, c.key, n, m) * p.sign * c.sign
    return out
