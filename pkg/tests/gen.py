"""Random valid models for property checks (seeded ``random.Random`` streams)."""

from fractions import Fraction

from legprod.model import LegendrianModel, MorseCritical, ReebChord, cotangent_euler


def morse_points(rng, dim, euler=None):
    """Random critical points whose signs (-1)**index sum to the Euler number.

    Odd dimensions force Euler number 0; for even ones a random value is
    drawn when ``euler`` is None.
    """
    evens = [i for i in range(dim + 1) if i % 2 == 0]
    odds = [i for i in range(dim + 1) if i % 2 == 1]
    if dim % 2:
        target = 0
    else:
        target = rng.randint(-2, 3) if euler is None else euler
    pairs = rng.randint(0, 2)
    idx = [rng.choice(evens) for _ in range(pairs)] + [rng.choice(odds) for _ in range(pairs)]
    idx += [rng.choice(evens if target > 0 else odds) for _ in range(abs(target))]
    if not idx:
        idx = [rng.choice(evens), rng.choice(odds)]
    rng.shuffle(idx)
    return tuple(MorseCritical(f"m{k}", i) for k, i in enumerate(idx))


def random_action(rng, taken):
    while True:
        a = Fraction(rng.randint(1, 60), rng.randint(1, 6))
        if a not in taken:
            taken.add(a)
            return a


def random_model(rng, dim, taken, max_chords=6, signs=None, prefix="c", euler=None):
    """A valid model of dimension ``dim`` whose actions avoid ``taken``.

    ``signs`` fixes the chord signs; otherwise 0..max_chords random signs.
    The new actions are added to ``taken``.
    """
    morse = morse_points(rng, dim, euler)
    e = sum((-1) ** p.index for p in morse)
    if signs is None:
        signs = [rng.choice((1, -1)) for _ in range(rng.randint(0, max_chords))]
    chords = tuple(ReebChord(f"{prefix}{k}", random_action(rng, taken), s)
                   for k, s in enumerate(signs))
    maslov = {f"g{k}": rng.randint(-3, 3) for k in range(rng.randint(0, 2))}
    return LegendrianModel(dim, e, cotangent_euler(dim, e), chords, morse, maslov)


def random_pair(rng, max_dim=4, max_chords=6):
    taken = set()
    K = random_model(rng, rng.randint(1, max_dim), taken, max_chords, prefix="a")
    L = random_model(rng, rng.randint(1, max_dim), taken, max_chords, prefix="b")
    return K, L


def even_model_on_tb_line(rng, max_chords=6):
    """Even-dimensional model with even Euler number and tb = -chi(T*L)/2.

    Closed even-dimensional Legendrians satisfy this relation, so it is the
    hypothesis under which the even-by-even product formula is checked.
    """
    dim = rng.choice((2, 4))
    euler = rng.choice((-4, -2, 0, 2, 4))
    chi = cotangent_euler(dim, euler)
    tb = -chi // 2
    extra = rng.randint(0, max(0, (max_chords - abs(tb)) // 2))
    signs = [1 if tb > 0 else -1] * abs(tb) + [1, -1] * extra
    rng.shuffle(signs)
    return dim, euler, signs


def knot(rng, taken, n_chords=None, prefix="k"):
    n = rng.randint(1, 4) if n_chords is None else n_chords
    signs = [rng.choice((1, -1)) for _ in range(n)]
    return random_model(rng, 1, taken, signs=signs, prefix=prefix)
