from hypothesis import settings, strategies as st

import hodgefock as hf

settings.register_profile("exact", deadline=None, max_examples=30)
settings.load_profile("exact")


@st.composite
def signatures(draw, max_dim=3, max_n=4, min_k=0, min_q=0):
    """Small (d, k, q) with k >= min_k, q >= min_q and 1 <= k + q <= max_n."""
    d = draw(st.integers(1, max_dim))
    n = draw(st.integers(max(min_k + min_q, 1), max_n))
    k = draw(st.integers(min_k, n - min_q))
    return d, k, n - k


coefficients = st.one_of(
    st.integers(-6, 6).filter(bool),
    st.fractions(min_value=-3, max_value=3, max_denominator=4).filter(bool),
)


@st.composite
def mixed_tensors(draw, **kwargs):
    d, k, q = draw(signatures(**kwargs))
    labels = hf.enum_basis(d, k, q)
    coeffs = {}
    for b in draw(st.lists(st.sampled_from(labels), max_size=4)) if labels else []:
        coeffs[b] = draw(coefficients)
    return hf.FockTensor(d, k, q, coeffs)


@st.composite
def mixed_tensor_pairs(draw, **kwargs):
    """Two tensors drawn from the same block."""
    d, k, q = draw(signatures(**kwargs))
    labels = hf.enum_basis(d, k, q)
    pair = []
    for _ in range(2):
        coeffs = {}
        for b in draw(st.lists(st.sampled_from(labels), max_size=4)) if labels else []:
            coeffs[b] = draw(coefficients)
        pair.append(hf.FockTensor(d, k, q, coeffs))
    return pair[0], pair[1]


@st.composite
def full_tensors(draw, max_dim=3, max_n=4):
    d = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_n))
    keys = st.tuples(*([st.integers(1, d)] * n))
    coeffs = {}
    for key in draw(st.lists(keys, max_size=5)):
        coeffs[key] = draw(coefficients)
    return hf.FullTensor(d, n, coeffs)
