from fractions import Fraction

from hypothesis import settings, strategies as st

from crossring.group_ring import GroupRingElement
from crossring.groups import FiniteCyclic, FreeAbelian
from crossring.scalars import Cyc

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def cyc(draw, order=None):
    q = order if order is not None else draw(st.sampled_from([1, 3, 4, 5, 8, 12]))
    n = Cyc.rational(0, q).phi
    return Cyc(q, draw(st.lists(small_fractions, min_size=n, max_size=n)))


def gaussians(nonzero=False):
    s = st.builds(Cyc.gaussian, small_fractions, small_fractions)
    return s.filter(bool) if nonzero else s


def z_elements(rank, radius=3):
    return st.tuples(*[st.integers(-radius, radius)] * rank)


@st.composite
def group_ring_elements(draw, G, elements, max_support=4):
    terms = draw(st.dictionaries(elements, gaussians(nonzero=True), max_size=max_support))
    return GroupRingElement(G, terms)


def pairs_of(G, radius=2):
    """Strategy for elements of an extension group with components in
    balls of the given radius."""
    return st.sampled_from(G.ball(radius))


Z1 = FreeAbelian(1)
Z2 = FreeAbelian(2)
C2 = FiniteCyclic(2)
