"""Exact rational linear feasibility by Fourier-Motzkin elimination.

Systems are conjunctions of constraints ``sum(coef * var) REL rhs`` with
``REL`` one of ``>``, ``>=`` or ``=``. Elimination runs over integer rows
(each constraint is scaled to coprime integers) so strict inequalities are
handled exactly and no floating point is involved.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
import re

from .errors import ParseError, UnknownVariable
from .rational import format_rational, parse_rational

RELATIONS = (">", ">=", "=")


@dataclass(frozen=True)
class LinearConstraint:
    """``sum(coefficients[v] * v) relation rhs``.

    Zero coefficients are dropped. A constraint with no coefficients left is
    a ground fact such as ``0 > 0``; elimination produces these and they are
    the only way an infeasible projection is represented.
    """

    coefficients: dict
    relation: str
    rhs: Fraction = Fraction(0)

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        coefs = {}
        for var, value in self.coefficients.items():
            value = Fraction(value)
            if value:
                coefs[str(var)] = value
        object.__setattr__(self, "coefficients", coefs)
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    @property
    def is_ground(self):
        return not self.coefficients

    @property
    def variables(self):
        return frozenset(self.coefficients)

    def holds(self, assignment):
        lhs = sum((c * Fraction(assignment[v]) for v, c in self.coefficients.items()),
                  Fraction(0))
        return _compare(lhs, self.relation, self.rhs)

    def negation(self):
        """The complement of a strict or weak inequality (not defined for ``=``)."""
        flipped = {v: -c for v, c in self.coefficients.items()}
        if self.relation == ">":
            return LinearConstraint(flipped, ">=", -self.rhs)
        if self.relation == ">=":
            return LinearConstraint(flipped, ">", -self.rhs)
        raise ValueError("the negation of an equality is not a single constraint")

    def __str__(self):
        terms = []
        for var in sorted(self.coefficients):
            c = self.coefficients[var]
            mag = abs(c)
            body = var if mag == 1 else f"{_fmt(mag)}*{var}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(("+ " if c > 0 else "- ") + body)
        lhs = " ".join(terms) if terms else "0"
        return f"{lhs} {self.relation} {_fmt(self.rhs)}"


@dataclass(frozen=True)
class LinearSystem:
    variables: tuple
    constraints: tuple = ()

    def __post_init__(self):
        variables = tuple(self.variables)
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        constraints = tuple(self.constraints)
        declared = set(variables)
        for con in constraints:
            missing = con.variables - declared
            if missing:
                raise UnknownVariable(f"undeclared variables {sorted(missing)} in {con}")
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "constraints", constraints)

    def holds(self, assignment):
        return all(con.holds(assignment) for con in self.constraints)

    def extend(self, constraints, variables=()):
        """Return a new system with extra constraints (and optionally variables)."""
        names = list(self.variables)
        for var in variables:
            if var not in names:
                names.append(var)
        return LinearSystem(tuple(names), self.constraints + tuple(constraints))

    def __str__(self):
        return "\n".join(str(c) for c in self.constraints)


def _fmt(value):
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else format_rational(value)


def _compare(lhs, relation, rhs):
    if relation == ">":
        return lhs > rhs
    if relation == ">=":
        return lhs >= rhs
    return lhs == rhs


# -- text constraints ---------------------------------------------------------

_REL_RE = re.compile(r"(>=|<=|>|<|=)")
_TERM_RE = re.compile(
    r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*\*?\s*([A-Za-z_][\w.']*)?\s*"
)


def _parse_side(text):
    coefs, const = {}, Fraction(0)
    pos, text = 0, text.strip()
    if not text:
        raise ParseError("empty side in constraint")
    while pos < len(text):
        match = _TERM_RE.match(text, pos)
        sign, num, var = match.groups()
        if match.end() == pos or (num is None and var is None):
            raise ParseError(f"cannot parse linear expression {text!r}")
        if pos > 0 and sign is None:
            raise ParseError(f"missing operator in {text!r}")
        value = parse_rational(num) if num else Fraction(1)
        if sign == "-":
            value = -value
        if var is None:
            const += value
        else:
            coefs[var] = coefs.get(var, Fraction(0)) + value
        pos = match.end()
    return coefs, const


def parse_constraint(text):
    """Parse e.g. ``"c1 - c3 > 0"``, ``"x < 1"`` or ``"2*x + 1/2 y >= 3"``.

    ``<`` and ``<=`` are normalised to ``>`` and ``>=`` by negation.
    """
    parts = _REL_RE.split(text)
    if len(parts) != 3:
        raise ParseError(f"expected exactly one relation in {text!r}")
    left, rel, right = parts
    lc, lk = _parse_side(left)
    rc, rk = _parse_side(right)
    coefs = dict(lc)
    for var, c in rc.items():
        coefs[var] = coefs.get(var, Fraction(0)) - c
    rhs = rk - lk
    if rel in ("<", "<="):
        coefs = {v: -c for v, c in coefs.items()}
        rhs = -rhs
        rel = ">" if rel == "<" else ">="
    return LinearConstraint(coefs, rel, rhs)


def system(variables, *constraints):
    """Build a LinearSystem from constraint strings (or LinearConstraint objects)."""
    cons = tuple(parse_constraint(c) if isinstance(c, str) else c for c in constraints)
    return LinearSystem(tuple(variables), cons)


# -- integer rows -------------------------------------------------------------
# A row is (coefs, rhs, rel) with coefs a tuple of ints aligned with the
# current variable order.


def _normalize(coefs, rhs, rel):
    g = 0
    for c in coefs:
        g = gcd(g, c)
    g = gcd(g, rhs)
    if g > 1:
        coefs = tuple(c // g for c in coefs)
        rhs //= g
    if rel == "=":
        for c in coefs:
            if c:
                if c < 0:
                    coefs = tuple(-x for x in coefs)
                    rhs = -rhs
                break
    return coefs, rhs, rel


def _to_rows(sys, order):
    index = {v: i for i, v in enumerate(order)}
    rows = []
    for con in sys.constraints:
        den = lcm(*(c.denominator for c in con.coefficients.values()), con.rhs.denominator)
        coefs = [0] * len(order)
        for var, c in con.coefficients.items():
            coefs[index[var]] = int(c * den)
        rows.append(_normalize(tuple(coefs), int(con.rhs * den), con.relation))
    return rows


def _ground_ok(rhs, rel):
    return _compare(0, rel, rhs)


_FALSE = None  # marker returned by _simplify for a contradictory row set


def _simplify(rows):
    """Drop true ground rows, dedupe, keep the tightest of parallel inequalities.

    Returns None when a false ground fact (or clashing equalities) shows up.
    """
    best = {}
    equalities = {}
    for coefs, rhs, rel in rows:
        if not any(coefs):
            if not _ground_ok(rhs, rel):
                return _FALSE
            continue
        if rel == "=":
            seen = equalities.get(coefs)
            if seen is not None and seen != rhs:
                return _FALSE
            equalities[coefs] = rhs
            continue
        cur = best.get(coefs)
        if cur is None or rhs > cur[0] or (rhs == cur[0] and rel == ">"):
            best[coefs] = (rhs, rel)
    out = [(c, r, "=") for c, r in equalities.items()]
    out.extend((c, r, rel) for c, (r, rel) in best.items())
    out.sort()
    return out


def _eliminate_rows(rows, j):
    """One Fourier-Motzkin step on column j; result rows have column j zero."""
    pivot = next((r for r in rows if r[2] == "=" and r[0][j]), None)
    if pivot is not None:
        pc, pr, _ = pivot
        scale = abs(pc[j])
        sgn = 1 if pc[j] > 0 else -1
        out = []
        for row in rows:
            if row is pivot:
                continue
            coefs, rhs, rel = row
            cj = coefs[j]
            if cj == 0:
                out.append(row)
                continue
            k = sgn * cj
            new = tuple(scale * a - k * b for a, b in zip(coefs, pc))
            out.append(_normalize(new, scale * rhs - k * pr, rel))
        return out
    lower, upper, rest = [], [], []
    for row in rows:
        cj = row[0][j]
        if cj > 0:
            lower.append(row)
        elif cj < 0:
            upper.append(row)
        else:
            rest.append(row)
    for lc, lr, lrel in lower:
        for uc, ur, urel in upper:
            a, b = -uc[j], lc[j]
            new = tuple(a * x + b * y for x, y in zip(lc, uc))
            rel = ">" if ">" in (lrel, urel) else ">="
            rest.append(_normalize(new, a * lr + b * ur, rel))
    return rest


def _order(sys):
    return sorted(sys.variables)


def _check_var(sys, var):
    if var not in sys.variables:
        raise UnknownVariable(var)


def fm_eliminate(sys, var):
    """Project ``sys`` onto the remaining variables by eliminating ``var``.

    The returned system's solution set is exactly the projection. If the
    projection is empty it contains the ground fact ``0 > 0``.
    """
    _check_var(sys, var)
    order = list(sys.variables)
    j = order.index(var)
    rows = _simplify(_to_rows(sys, order))
    remaining = tuple(v for v in order if v != var)
    if rows is _FALSE:
        return LinearSystem(remaining, (LinearConstraint({}, ">", 0),))
    rows = _simplify(_eliminate_rows(rows, j))
    if rows is _FALSE:
        return LinearSystem(remaining, (LinearConstraint({}, ">", 0),))
    cons = []
    for coefs, rhs, rel in rows:
        mapping = {order[i]: c for i, c in enumerate(coefs) if c and i != j}
        cons.append(LinearConstraint(mapping, rel, rhs))
    return LinearSystem(remaining, tuple(cons))


def _is_open_cone(rows):
    return all(rel == ">" and rhs == 0 for _, rhs, rel in rows)


def _prune_chernikov(rows, history, step):
    """Drop rows combined from more than ``step + 1`` original rows.

    Only applied to systems whose rows are all ``> 0`` (an open cone), where
    such rows are positive combinations of the remaining ones.
    """
    kept, hist = [], {}
    for row in rows:
        h = history[row]
        if h.bit_count() <= step + 1:
            kept.append(row)
            hist[row] = h
    return kept, hist


def _eliminate_tracked(rows, history, j):
    """Fourier-Motzkin step for open-cone rows, tracking origin bitmasks."""
    lower = [r for r in rows if r[0][j] > 0]
    upper = [r for r in rows if r[0][j] < 0]
    out = {}
    for r in rows:
        if r[0][j] == 0:
            out[r] = history[r]
    for lc, _, _ in lower:
        hl = history[(lc, 0, ">")]
        for uc, _, _ in upper:
            a, b = -uc[j], lc[j]
            row = _normalize(tuple(a * x + b * y for x, y in zip(lc, uc)), 0, ">")
            h = hl | history[(uc, 0, ">")]
            prev = out.get(row)
            if prev is None or h.bit_count() < prev.bit_count():
                out[row] = h
    return list(out), out


def _stages(sys):
    """Run full elimination in ascending-name order.

    Returns ``(order, stages)`` where ``stages[k]`` is the row set before
    eliminating ``order[k]``, or ``(order, None)`` if infeasible.
    """
    order = _order(sys)
    rows = _simplify(_to_rows(sys, order))
    if rows is _FALSE:
        return order, None
    if rows and _is_open_cone(rows):
        return order, _cone_stages(rows, len(order))
    stages = []
    for j in range(len(order)):
        stages.append(rows)
        rows = _simplify(_eliminate_rows(rows, j))
        if rows is _FALSE:
            return order, None
    return order, stages


def _cone_stages(rows, nvars):
    history = {row: 1 << i for i, row in enumerate(rows)}
    stages = []
    for j in range(nvars):
        stages.append(rows)
        rows, history = _eliminate_tracked(rows, history, j)
        if any(not any(c) for c, _, _ in rows):
            return None  # 0 > 0
        rows, history = _prune_chernikov(rows, history, j + 1)
        rows.sort()
    return stages


def is_feasible(sys):
    """True iff ``sys`` has a rational solution."""
    return _stages(sys)[1] is not None


def sample_point(sys):
    """A rational witness for ``sys``, or None if it is infeasible.

    Variables are assigned in reverse elimination order; each one takes the
    midpoint of its residual interval, ``lower + 1`` / ``upper - 1`` when
    the interval is half-infinite, and 0 when it is unconstrained.
    """
    order, stages = _stages(sys)
    if stages is None:
        return None
    # Assigned values are kept as integer numerators over a shared
    # denominator so the inner sums stay in machine integers.
    n = len(order)
    nums, den = [0] * n, 1
    for j in reversed(range(n)):
        lo = hi = fixed = None
        for coefs, rhs, rel in stages[j]:
            cj = coefs[j]
            if not cj:
                continue
            rest = 0
            for i in range(j + 1, n):
                if coefs[i]:
                    rest += coefs[i] * nums[i]
            bound = Fraction(rhs * den - rest, cj * den)
            if rel == "=":
                fixed = bound
            elif cj > 0:
                if lo is None or bound > lo:
                    lo = bound
            elif hi is None or bound < hi:
                hi = bound
        if fixed is not None:
            value = fixed
        elif lo is not None and hi is not None:
            value = (lo + hi) / 2
        elif lo is not None:
            value = lo + 1
        elif hi is not None:
            value = hi - 1
        else:
            value = Fraction(0)
        scale = lcm(den, value.denominator) // den
        if scale != 1:
            nums = [x * scale for x in nums]
            den *= scale
        nums[j] = value.numerator * (den // value.denominator)
    values = [Fraction(x, den) for x in nums]
    point = dict(zip(order, values))
    return {v: point[v] for v in sys.variables}


def implies(a, b):
    """True iff every solution of system ``a`` satisfies system ``b``.

    Checked constraint by constraint: ``a`` implies an inequality ``c`` iff
    ``a`` together with the negation of ``c`` is infeasible.
    """
    names = tuple(dict.fromkeys(a.variables + b.variables))
    base = LinearSystem(names, a.constraints)
    for con in b.constraints:
        if con.relation == "=":
            halves = (LinearConstraint(con.coefficients, ">=", con.rhs),
                      LinearConstraint({v: -c for v, c in con.coefficients.items()},
                                       ">=", -con.rhs))
        else:
            halves = (con,)
        for half in halves:
            if is_feasible(base.extend([half.negation()])):
                return False
    return True


def equivalent(a, b):
    """Mutual implication of two systems."""
    return implies(a, b) and implies(b, a)


# -- JSON ---------------------------------------------------------------------


def system_to_dict(sys):
    return {
        "vars": list(sys.variables),
        "constraints": [
            {
                "lhs": {v: format_rational(c) for v, c in sorted(con.coefficients.items())},
                "rel": con.relation,
                "rhs": format_rational(con.rhs),
            }
            for con in sys.constraints
        ],
    }


def system_from_dict(data):
    try:
        variables = tuple(data["vars"])
        cons = []
        for item in data["constraints"]:
            coefs = {v: parse_rational(c) for v, c in item["lhs"].items()}
            cons.append(LinearConstraint(coefs, item["rel"], parse_rational(item.get("rhs", "0"))))
    except (KeyError, TypeError, AttributeError, ValueError) as exc:
        raise ParseError(f"malformed linear system: {exc}") from exc
    return LinearSystem(variables, tuple(cons))
