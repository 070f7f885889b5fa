import itertools

from hypothesis import strategies as st

from pcat_lab.category import poset_category


def closure(n, rel):
    leq = [[a == b or (a, b) in rel for b in range(n)] for a in range(n)]
    for k, a, b in itertools.product(range(n), repeat=3):
        if leq[a][k] and leq[k][b]:
            leq[a][b] = True
    return leq


@st.composite
def posets(draw, max_size=6):
    """Random finite posets: transitive closure of a random relation on an ordered set."""
    n = draw(st.integers(1, max_size))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    rel = {ab for ab in pairs if draw(st.booleans())}
    leq = closure(n, rel)
    return poset_category(list(range(n)), lambda a, b: leq[a][b])


@st.composite
def permutations(draw, degree):
    return tuple(draw(st.permutations(range(degree))))
