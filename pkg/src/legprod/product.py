"""Legendrian products K x L: closed-form invariants and perturbed chords.

Chord comparisons use ``ReebChord.key``, i.e. actions in Q + Z*eps ordered
lexicographically, so products of strict (generically separated) products
compare correctly. Plain models always have ``epsilon == 0``.
"""

from collections import defaultdict
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import NamedTuple

from .errors import (
    ActionCollision,
    ActionTie,
    BadChordOrder,
    DuplicateProductAction,
    ParityViolation,
    WindowViolation,
)
from .model import (
    LegendrianModel,
    MorseCritical,
    ReebChord,
    _check_sign,
    chord_sum_tb,
    morse_sign,
    require_valid,
    stabilize_with_cancelling_pair,
    whitney,
)
from .rational import format_rational, parse_rational

KINDS = ("A", "B", "C", "D")


def tau(za, zb, n, m):
    """Sign picked by comparing the parent actions of a C-chord.

    ``(-1)**n`` if ``za < zb`` and ``(-1)**m`` if ``za > zb``. Actions may
    be Fractions or ``(action, epsilon)`` keys.
    """
    if za == zb:
        raise ActionTie(f"equal actions {za!r}")
    return (-1) ** n if za < zb else (-1) ** m


def _check_disjoint(K, L):
    keys = {c.key for c in K.chords}
    for c in L.chords:
        if c.key in keys:
            raise ActionCollision(
                f"chord {c.label!r} of L shares action {format_rational(c.action)} with K")


def product_tb(K, L):
    """tb(K x L) by the closed-form formula."""
    require_valid(K, L)
    _check_disjoint(K, L)
    n, m = K.dim, L.dim
    tb_k, tb_l = chord_sum_tb(K), chord_sum_tb(L)
    cross = sum(tau(a.key, b.key, n, m) * a.sign * b.sign
                for a in K.chords for b in L.chords)
    total = tb_k * L.cotangent_euler + K.cotangent_euler * tb_l + tb_k * tb_l + cross
    return (-1) ** (n * m) * total


def maslov_product(K, L):
    """Maslov vector of K x L: the direct sum, keys tagged ``K.`` and ``L.``."""
    out = {f"K.{k}": v for k, v in K.maslov.items()}
    out.update((f"L.{k}", v) for k, v in L.maslov.items())
    return out


@dataclass(frozen=True)
class PerturbedChord:
    kind: str
    parent_k: str
    parent_l: str
    action: Fraction
    sign: int
    epsilon: int = 0

    @property
    def label(self):
        return f"{self.kind}[{self.parent_k},{self.parent_l}]"

    @property
    def key(self):
        return (self.action, self.epsilon)

    def to_chord(self):
        return ReebChord(self.label, self.action, self.sign, self.epsilon)


class Perturbation(NamedTuple):
    chords: list
    model: LegendrianModel


def _sum_key(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _diff_key(a, b):
    hi, lo = (a, b) if a > b else (b, a)
    return (hi[0] - lo[0], hi[1] - lo[1])


def perturbed_chords(K, L):
    """The A/B/C/D chords of the Morse-perturbed product, in canonical order."""
    require_valid(K, L)
    _check_disjoint(K, L)
    n, m = K.dim, L.dim
    eps = (-1) ** (m * n)
    out = []
    for a in K.chords:
        for p in L.morse:
            out.append(PerturbedChord("A", a.label, p.label, a.action,
                                      eps * a.sign * morse_sign(m, p.index), a.epsilon))
    for p in K.morse:
        for b in L.chords:
            out.append(PerturbedChord("B", p.label, b.label, b.action,
                                      eps * morse_sign(n, p.index) * b.sign, b.epsilon))
    for a in K.chords:
        for b in L.chords:
            act, e = _diff_key(a.key, b.key)
            t = tau(a.key, b.key, n, m)
            out.append(PerturbedChord("C", a.label, b.label, act, eps * a.sign * b.sign * t, e))
    for a in K.chords:
        for b in L.chords:
            act, e = _sum_key(a.key, b.key)
            out.append(PerturbedChord("D", a.label, b.label, act, eps * a.sign * b.sign, e))
    out.sort(key=lambda c: (c.kind, c.parent_k, c.parent_l))
    return out


def _separate(chords):
    """Give every chord a distinct infinitesimal offset within its action class.

    Chords sharing a nominal action get offsets 1, 2, ... in canonical
    (kind, parent) order, so no product chord coincides with a plain action.
    """
    seen = defaultdict(int)
    out = []
    for c in chords:
        seen[c.action] += 1
        out.append(replace(c, epsilon=seen[c.action]))
    return out


def perturb_product(K, L, strict=False):
    """Enumerate the perturbed product's chords and assemble its model.

    With ``strict=True`` equal nominal actions are separated symbolically
    (see :func:`_separate`); this needs factors without offsets of their own.
    """
    chords = perturbed_chords(K, L)
    if strict:
        if any(c.epsilon for c in K.chords + L.chords):
            raise DuplicateProductAction(
                "strict separation needs factors without infinitesimal offsets")
        chords = _separate(chords)
    morse = tuple(
        MorseCritical(f"({p.label},{q.label})", p.index + q.index)
        for p in K.morse for q in L.morse
    )
    model = LegendrianModel(
        dim=K.dim + L.dim,
        euler=K.euler * L.euler,
        cotangent_euler=K.cotangent_euler * L.cotangent_euler,
        chords=tuple(c.to_chord() for c in chords),
        morse=morse,
        maslov=maslov_product(K, L),
    )
    return Perturbation(chords, model)


def chords_to_list(chords):
    out = []
    for c in chords:
        item = {"kind": c.kind, "parent_k": c.parent_k, "parent_l": c.parent_l,
                "action": format_rational(c.action), "sign": c.sign}
        if c.epsilon:
            item["epsilon"] = c.epsilon
        out.append(item)
    return out


def chords_from_list(items):
    return [PerturbedChord(i["kind"], i["parent_k"], i["parent_l"],
                           parse_rational(i["action"]), _check_sign(i["sign"]),
                           int(i.get("epsilon", 0)))
            for i in items]


def frontspin(L):
    """Frontspin of L as the product with a Whitney circle of dominant action."""
    require_valid(L)
    top = max((c.action for c in L.chords), default=None)
    big = Fraction(1) if top is None else 1 + 2 * top
    return perturb_product(whitney(1, big, label="w"), L).model


def infinite_family_tb(K, L, e_label, pairs, za, zb, lead_sign):
    """tb of K_i x L where K_i is K with i cancelling pairs around chord e.

    The i-th pair sits at ``(za + i*d, zb - i*d)`` for a small d, so all
    added actions are distinct and stay on their side of every chord of L.
    Consecutive values differ by ``2 * (-1)**(n*m + m) * lead_sign * sign(e)``.
    """
    require_valid(K, L)
    za, zb = parse_rational(za), parse_rational(zb)
    lead_sign = _check_sign(lead_sign)
    if (K.dim + L.dim) % 2 == 0:
        raise ParityViolation("dimensions of K and L must have different parity")
    if pairs < 0:
        raise ValueError("pairs must be nonnegative")
    if not za > zb:
        raise BadChordOrder(f"need za > zb, got {za} <= {zb}")
    e = L.chord(e_label)
    if not za > e.action > zb:
        raise WindowViolation(f"chord {e_label!r} must lie strictly between zb and za")
    others = [c for c in L.chords if c.label != e_label]
    for c in others:
        if zb <= c.action <= za:
            raise WindowViolation(f"chord {c.label!r} of L also lies in [zb, za]")
    gaps = [zb] + [abs(c.action - z) for c in others for z in (za, zb)]
    step = min(gaps) / (2 * (pairs + 1))
    values = [product_tb(K, L)]
    current = K
    for i in range(pairs):
        current = stabilize_with_cancelling_pair(current, za + i * step, zb - i * step, lead_sign)
        values.append(product_tb(current, L))
    return values
