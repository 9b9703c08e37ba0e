from hypothesis import given, strategies as st

from evade import cantor

bits = st.text(alphabet="01", max_size=10)


@given(bits)
def test_roundtrip(s):
    assert cantor.decode(cantor.encode(s)) == s


def test_first_ids():
    assert [cantor.decode(i) for i in range(7)] == ["", "0", "1", "00", "01", "10", "11"]


@given(bits, bits)
def test_prefix_matches_strings(a, b):
    assert cantor.is_prefix(cantor.encode(a), cantor.encode(b)) == b.startswith(a)
    assert cantor.comparable(cantor.encode(a), cantor.encode(b)) == (a != b and (a.startswith(b) or b.startswith(a)))


@given(bits)
def test_ancestors_and_children(s):
    v = cantor.encode(s)
    assert [cantor.decode(a) for a in cantor.ancestors(v)] == [s[:i] for i in range(len(s))]
    assert cantor.decode(cantor.child(v, 1)) == s + "1"


@given(bits, st.integers(0, 4))
def test_descendants_at(s, extra):
    v = cantor.encode(s)
    got = {cantor.decode(x) for x in cantor.descendants_at(v, len(s) + extra)}
    assert got == {s + format(i, f"0{extra}b") if extra else s for i in range(1 << extra)}
