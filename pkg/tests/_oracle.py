"""Independent naive helpers used to cross-check the library's linear
algebra; deliberately written without Bareiss or any shared code path."""

from fractions import Fraction


def naive_rref(rows):
    rows = [[Fraction(c) for c in r] for r in rows]
    rows = [r for r in rows if any(r)]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        lead = rows[r][col]
        rows[r] = [c / lead for c in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return pivots, rows[:r]


def naive_rank(rows):
    return len(naive_rref(rows)[0])


def random_poly(rng, table, ring, degree, max_terms=4, allow_zero=False):
    """Random polynomial with small integer coefficients, exact degree bound."""
    from apolar.poly import Poly, monomials

    monos = list(monomials(table.n, degree))
    terms = {}
    for _ in range(rng.randint(0 if allow_zero else 1, max_terms)):
        m = monos[rng.randrange(len(monos))]
        c = rng.randint(-4, 4)
        if c:
            terms[m] = terms.get(m, 0) + c
    return Poly(table, ring, {m: c for m, c in terms.items() if c})
