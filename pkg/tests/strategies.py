from hypothesis import strategies as st

from app.core.permcore import SignedWord, UnsignedWord


@st.composite
def unsigned_words(draw, min_n=0, max_n=7):
    n = draw(st.integers(min_n, max_n))
    return UnsignedWord(tuple(draw(st.permutations(range(1, n + 1)))))


@st.composite
def signed_words(draw, min_n=0, max_n=6):
    n = draw(st.integers(min_n, max_n))
    magnitudes = draw(st.permutations(range(1, n + 1)))
    signs = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    return SignedWord(tuple(v if positive else -v for v, positive in zip(magnitudes, signs)))
