"""Chord-generic Legendrians as combinatorial data.

A :class:`LegendrianModel` records what the invariant computations need: the
dimension, Euler data, the Reeb chords with their actions and signs, the
critical points of an auxiliary Morse function and a Maslov vector over named
basis classes. Actions are exact ``Fraction`` values.
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction
import json

from .errors import (
    BadChordOrder,
    ConstraintViolated,
    InvalidModel,
    ParseError,
    UnknownWhitneySign,
)
from .feasibility import LinearSystem, parse_constraint
from .rational import format_rational, parse_rational

# Chord sign of the Whitney sphere W^n for the dimensions where it is pinned.
# n = 4 is -1, the value forced by tb = -chi(T*S^4)/2 (see tests/test_model.py).
WHITNEY_SIGNS = {1: -1, 2: 1, 4: -1}


def _check_sign(sign):
    if sign not in (1, -1) or isinstance(sign, bool):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    return int(sign)


@dataclass(frozen=True)
class ReebChord:
    """A Reeb chord: label, action and sign.

    ``epsilon`` is an infinitesimal offset: the chord's action is
    ``action + epsilon * eps`` for a positive infinitesimal ``eps``. It is
    zero except on chords produced by a strict (generic) product.
    """

    label: str
    action: Fraction
    sign: int
    epsilon: int = 0

    def __post_init__(self):
        object.__setattr__(self, "action", parse_rational(self.action))
        object.__setattr__(self, "sign", _check_sign(self.sign))

    @property
    def key(self):
        """Action as an element of Q + Z*eps, ordered lexicographically."""
        return (self.action, self.epsilon)


@dataclass(frozen=True)
class MorseCritical:
    label: str
    index: int


def cotangent_euler(dim, euler):
    """Euler number of T*L for an oriented Lagrangian of dimension ``dim``.

    ``(-1)**(dim*(dim+1)/2) * euler``, which gives chi(T*S^2) = -2 and
    chi(T*S^4) = 2.
    """
    if dim < 1:
        raise ValueError("dimension must be positive")
    return (-1) ** (dim * (dim + 1) // 2) * euler


def morse_sign(dim, index):
    """Sign carried by a Morse critical point; these sum to ``cotangent_euler``."""
    return (-1) ** (dim * (dim + 1) // 2 + index)


@dataclass(frozen=True)
class LegendrianModel:
    dim: int
    euler: int
    cotangent_euler: int
    chords: tuple = ()
    morse: tuple = ()
    maslov: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "chords", tuple(self.chords))
        object.__setattr__(self, "morse", tuple(self.morse))
        object.__setattr__(self, "maslov", dict(self.maslov))

    def chord(self, label):
        for c in self.chords:
            if c.label == label:
                return c
        raise KeyError(label)

    @property
    def tb(self):
        return chord_sum_tb(self)


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok


def validate_model(m):
    """Check every model invariant; violations are returned, not raised."""
    problems = []
    if m.dim < 1:
        problems.append("positive dimension")
    labels = [c.label for c in m.chords]
    if len(set(labels)) != len(labels):
        problems.append("distinct chord labels")
    if any(c.key <= (0, 0) for c in m.chords):
        problems.append("positive action")
    if not m.morse:
        problems.append("nonempty morse")
    mlabels = [p.label for p in m.morse]
    if len(set(mlabels)) != len(mlabels):
        problems.append("distinct morse labels")
    if any(not 0 <= p.index <= m.dim for p in m.morse):
        problems.append("morse index range")
    if m.morse and sum((-1) ** p.index for p in m.morse) != m.euler:
        problems.append("Morse-Euler consistency")
    if m.dim >= 1 and m.cotangent_euler != cotangent_euler(m.dim, m.euler):
        problems.append("cotangent consistency")
    if m.dim % 2 == 1 and (m.euler != 0 or m.cotangent_euler != 0):
        problems.append("odd dimension forces euler 0")
    return ValidationReport(tuple(problems))


def require_valid(*models):
    for m in models:
        report = validate_model(m)
        if not report.ok:
            raise InvalidModel(report.violations)


def chord_sum_tb(m):
    """Thurston-Bennequin number as the signed count of Reeb chords."""
    require_valid(m)
    return sum(c.sign for c in m.chords)


def whitney(n, action, sign=None, label="c"):
    """The Whitney sphere W^n: one Reeb chord of the given action.

    The chord sign comes from :data:`WHITNEY_SIGNS` unless ``sign`` is given.
    """
    if sign is None:
        if n not in WHITNEY_SIGNS:
            raise UnknownWhitneySign(f"no built-in chord sign for W^{n}; pass sign=")
        sign = WHITNEY_SIGNS[n]
    euler = 1 + (-1) ** n
    return LegendrianModel(
        dim=n,
        euler=euler,
        cotangent_euler=cotangent_euler(n, euler),
        chords=(ReebChord(label, parse_rational(action), sign),),
        morse=(MorseCritical("m0", 0), MorseCritical(f"m{n}", n)),
        maslov={"x": 0},
    )


def _fresh_label(taken, stem):
    i = 1
    while f"{stem}{i}" in taken:
        i += 1
    return f"{stem}{i}"


def stabilize_with_cancelling_pair(m, za, zb, lead_sign):
    """Append two chords of opposite sign with actions ``za > zb``.

    This models adding a cancelling pair of double points by a local
    Hamiltonian isotopy; tb is unchanged.
    """
    require_valid(m)
    za, zb = parse_rational(za), parse_rational(zb)
    lead_sign = _check_sign(lead_sign)
    if not za > zb:
        raise BadChordOrder(f"need za > zb, got {za} <= {zb}")
    if zb <= 0:
        raise BadChordOrder("actions must be positive")
    taken = {c.label for c in m.chords}
    la = _fresh_label(taken, "p")
    taken.add(la)
    lb = _fresh_label(taken, "q")
    chords = m.chords + (ReebChord(la, za, lead_sign), ReebChord(lb, zb, -lead_sign))
    return replace(m, chords=chords)


# The three knots of the triple-product example, as chord data. The
# constraint strings are the face-area conditions on the actions.
KNOT_FIXTURES = {
    "stabilized_unknot": {
        "signs": {"a1": -1, "a2": -1},
        "constraints": (),
    },
    "r1_unknot": {
        "signs": {"b1": -1, "b2": -1, "b3": 1},
        "constraints": ("b1 > b3", "b2 > b3"),
    },
    "trefoil": {
        "signs": {"c1": -1, "c2": -1, "c3": 1, "c4": 1, "c5": 1},
        "constraints": tuple(f"c{i} > c{j}" for i in (1, 2) for j in (3, 4, 5)),
    },
}


def knot_model(signs, actions):
    chords = tuple(ReebChord(label, actions[label], s) for label, s in signs.items())
    return LegendrianModel(
        dim=1,
        euler=0,
        cotangent_euler=0,
        chords=chords,
        morse=(MorseCritical("m0", 0), MorseCritical("m1", 1)),
        maslov={"r": 0},
    )


def fixture_system(name, positivity=False):
    """The fixture's action constraints; optionally with every action > 0."""
    spec = KNOT_FIXTURES[name]
    labels = tuple(spec["signs"])
    cons = [parse_constraint(c) for c in spec["constraints"]]
    if positivity:
        cons.extend(parse_constraint(f"{v} > 0") for v in labels)
    return LinearSystem(labels, tuple(cons))


def knot_fixture(name, actions):
    """Build a fixture knot with the given actions and its constraint system.

    Raises ConstraintViolated if the actions break one of the constraints.
    """
    if name not in KNOT_FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; expected one of {sorted(KNOT_FIXTURES)}")
    spec = KNOT_FIXTURES[name]
    missing = set(spec["signs"]) - set(actions)
    if missing:
        raise KeyError(f"missing actions for {sorted(missing)}")
    actions = {k: parse_rational(v) for k, v in actions.items()}
    sys = fixture_system(name)
    for con in sys.constraints:
        if not con.holds(actions):
            raise ConstraintViolated(str(con))
    model = knot_model(spec["signs"], actions)
    require_valid(model)
    return model, sys


# -- JSON ---------------------------------------------------------------------


def model_to_dict(m):
    chords = []
    for c in m.chords:
        item = {"label": c.label, "action": format_rational(c.action), "sign": c.sign}
        if c.epsilon:
            item["epsilon"] = c.epsilon
        chords.append(item)
    return {
        "dim": m.dim,
        "euler": m.euler,
        "cotangent_euler": m.cotangent_euler,
        "chords": chords,
        "morse": [{"label": p.label, "index": p.index} for p in m.morse],
        "maslov": dict(m.maslov),
    }


def model_from_dict(data):
    try:
        chords = tuple(
            ReebChord(str(c["label"]), parse_rational(c["action"]), c["sign"],
                      int(c.get("epsilon", 0)))
            for c in data["chords"]
        )
        morse = tuple(MorseCritical(str(p["label"]), int(p["index"])) for p in data["morse"])
        maslov = {str(k): int(v) for k, v in data.get("maslov", {}).items()}
        return LegendrianModel(int(data["dim"]), int(data["euler"]),
                               int(data["cotangent_euler"]), chords, morse, maslov)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ParseError(f"malformed model: {exc}") from exc


def dumps_model(m, **kwargs):
    return json.dumps(model_to_dict(m), **kwargs)


def loads_model(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return model_from_dict(data)
