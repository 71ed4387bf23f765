"""Shared hypothesis strategies and fixtures."""

from __future__ import annotations

from hypothesis import strategies as st

from algrec import groups as G

SMALL_DESCRIPTORS = (
    G.zpower(1),
    G.zpower(2),
    G.zpower(3),
    G.free(2),
    G.free(5),
    G.heisenberg(),
    G.lamplighter_z(),
    G.cyclic(6),
    G.cyclic(12),
)


def elements(descriptor: G.GroupDescriptor, size: int = 6) -> st.SearchStrategy:
    """Arbitrary canonical elements of one group, of bounded complexity."""
    kind = descriptor.kind
    small = st.integers(-size, size)
    if kind == "ZPower":
        return st.tuples(*([small] * descriptor.rank)).map(
            lambda t: G.make_element(descriptor, t))
    if kind == "Free":
        letters = st.integers(1, descriptor.rank).flatmap(
            lambda i: st.sampled_from([i, -i]))
        return st.lists(letters, max_size=size).map(
            lambda ls: G.make_element(descriptor, ls))
    if kind == "Heisenberg":
        return st.tuples(small, small, small).map(
            lambda t: G.GroupElement(descriptor, t))
    if kind == "LamplighterZ":
        return st.tuples(small, st.sets(small, max_size=size)).map(
            lambda t: G.make_element(descriptor, t))
    return st.integers(0, descriptor.modulus - 1).map(
        lambda r: G.GroupElement(descriptor, r))


def generator_words(descriptor: G.GroupDescriptor,
                    max_length: int = 8) -> st.SearchStrategy:
    """Elements built as products of up to max_length standard generators."""
    gens = G.standard_generators(descriptor)

    def build(indices):
        acc = G.identity(descriptor)
        for i in indices:
            acc = G.multiply(acc, gens[i])
        return acc

    return st.lists(st.integers(0, len(gens) - 1), max_size=max_length).map(build)
