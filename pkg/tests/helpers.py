from hypothesis import strategies as st

from twinchain.poset import Poset, poset_from_covers

# criterion number -> report line, filled by the acceptance tests
ACCEPTANCE_LINES: dict[int, str] = {}


@st.composite
def posets(draw, min_d=0, max_d=5):
    """Labeled posets: a random acyclic relation on a shuffled order."""
    d = draw(st.integers(min_d, max_d))
    order = draw(st.permutations(range(1, d + 1))) if d else []
    pairs = [(a, b) for a in range(d) for b in range(a + 1, d)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return poset_from_covers(d, [(order[a], order[b]) for (a, b), k in zip(pairs, keep) if k])


@st.composite
def poset_pairs(draw, min_d=1, max_d=4):
    d = draw(st.integers(min_d, max_d))
    return draw(posets(d, d)), draw(posets(d, d))


def is_poset(P: Poset) -> bool:
    try:
        P.validate()
    except ValueError:
        return False
    return True
