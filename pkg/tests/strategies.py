from hypothesis import strategies as st

from pure_o.monomial import Monomial

exponent_maps = st.dictionaries(st.integers(1, 6), st.integers(1, 4), max_size=4)
monomials = exponent_maps.map(Monomial.from_dict)


@st.composite
def equal_degree_sets(draw, degrees=(2, 3, 4, 5), max_vars=8, max_size=5):
    """Ordered lists of distinct monomials sharing one degree."""
    n = draw(st.sampled_from(degrees))
    nvars = draw(st.integers(1, max_vars))
    # each monomial distributes n units over nvars slots
    slots = st.lists(st.integers(0, nvars - 1), min_size=n, max_size=n)
    raw = draw(st.lists(slots, min_size=1, max_size=max_size))
    out = []
    for s in raw:
        counts = {}
        for i in s:
            counts[i + 1] = counts.get(i + 1, 0) + 1
        m = Monomial.from_dict(counts)
        if m not in out:
            out.append(m)
    return n, out
