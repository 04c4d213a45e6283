import dataclasses

import pytest

from quditc.gates import GateApp, Kind
from quditc.timing import TimingError, TimingTable, gate_duration, interpolate, load_default, load_overrides

# Reference gate-time table, transcribed by hand: level pair -> (interaction, swap).
REFERENCE_PAIRS = {
    (1, 1): (500, 900),
    (1, 2): (500, 1200),
    (1, 3): (500, 1500),
    (1, 4): (600, 1800),
    (2, 2): (675, 2950),
    (2, 3): (850, 5000),
    (2, 4): (1025, 7050),
    (3, 3): (850, 5000),
    (3, 4): (1025, 7050),
    (4, 4): (1200, 7500),
}
REFERENCE_SINGLE = {1: 30, 2: 50, 3: 50, 4: 50}


def drop(t, which, key):
    m = dict(getattr(t, which))
    del m[key]
    return dataclasses.replace(t, **{which: m})


def test_default_reproduces_reference(table):
    assert table.single == REFERENCE_SINGLE
    for (a, b), (i, s) in REFERENCE_PAIRS.items():
        assert table.interaction_time(a, b) == i
        assert table.swap_time(a, b) == s


def test_symmetry(table):
    for a in range(1, 5):
        for b in range(1, 5):
            assert table.interaction_time(a, b) == table.interaction_time(b, a)
            assert table.swap_time(a, b) == table.swap_time(b, a)
            assert table.swap_time(a, b) >= table.interaction_time(a, b)


def test_zero_label_rows_are_inert(table):
    assert table.inert[(0, 1)] == (150, 600)
    with pytest.raises(TimingError):
        table.interaction_time(0, 1)


def test_gate_durations(table):
    assert gate_duration(GateApp(Kind.SHIFT, (0,), k=1), [2], table) == 30
    cf = GateApp(Kind.CFLIP, (1,), ((0, 1),))
    assert gate_duration(cf, [3, 3], table) == 675
    assert gate_duration(GateApp(Kind.SWAP, (0, 1)), [4, 4], table) == 5000
    assert gate_duration(GateApp(Kind.SWAP, (0, 1)), [4, 5], table) == 7050


def test_macro_needs_decomposition(table):
    with pytest.raises(TimingError, match="decomposed"):
        gate_duration(GateApp(Kind.MCSHIFT, (2,), ((0, 1), (1, 1)), k=1), [2, 2, 2], table)


def test_unknown_level(table):
    with pytest.raises(TimingError, match="level 5"):
        gate_duration(GateApp(Kind.SHIFT, (0,), k=1), [6], table)


def test_interpolation_recovers_qutrit_pair(table):
    t = interpolate(drop(table, "interaction", (2, 2)))
    assert t.interaction_time(2, 2) == 675  # midpoint of 500 and 850


def test_interpolation_recovers_qutrit_swap(table):
    t = interpolate(drop(table, "swap", (2, 2)))
    assert t.swap_time(2, 2) == 2950  # midpoint of 900 and 5000


def test_full_table_is_a_fixpoint(table):
    assert interpolate(table) == table


ANCHORS = [(1, 1), (1, 2), (1, 3), (2, 3), (3, 3)]


def anchors_only(t):
    keep = lambda m: {k: v for k, v in m.items() if k in ANCHORS}  # noqa: E731
    return dataclasses.replace(t, interaction=keep(t.interaction), swap=keep(t.swap))


def test_anchor_only_table_fills_the_bracketed_entry(table):
    # Only (2,2) lies between anchors; the label-4 entries would need extrapolation.
    with pytest.raises(TimingError) as err:
        interpolate(anchors_only(table))
    for key in [(1, 4), (2, 4), (3, 4), (4, 4)]:
        assert f"'swap', {key[0]}, {key[1]}" in str(err.value)
    assert "'swap', 2, 2" not in str(err.value)


def test_label_four_entries_are_extensions_not_interpolations(table):
    # Independent arithmetic on the reference values: (2,4) continues the
    # (2,2)->(2,3) line and the (1,4) swap continues (1,2)->(1,3); the others
    # fit no single straight line through two anchors.
    def extend(m, a, b):
        return 2 * m[a] - m[b]

    i, s = table.interaction, table.swap
    assert extend(i, (2, 3), (2, 2)) == i[(2, 4)] == 1025
    assert extend(s, (2, 3), (2, 2)) == s[(2, 4)] == 7050
    assert extend(s, (1, 3), (1, 2)) == s[(1, 4)] == 1800
    assert extend(i, (1, 3), (1, 2)) == 500 != i[(1, 4)]
    assert extend(s, (3, 3), (2, 3)) == 5000 != s[(3, 4)]


def test_corner_swap_is_not_reconstructible(table):
    # The (4,4) swap sits on the table edge: with no larger anchor there is
    # nothing to interpolate between. The closest linear rule, extending the
    # (2,2)->(3,3) diagonal, gives 7050, not the tabulated 7500.
    with pytest.raises(TimingError, match="swap"):
        interpolate(drop(table, "swap", (4, 4)))
    extended = table.swap_time(3, 3) + (table.swap_time(3, 3) - table.swap_time(2, 2))
    assert extended == 7050 != table.swap_time(4, 4)


def test_missing_anchor_is_listed(table):
    t = drop(table, "interaction", (1, 1))
    with pytest.raises(TimingError, match=r"\('interaction', 1, 1\)"):
        interpolate(t)


def test_monotonicity_enforced():
    t = load_default()
    bad = dataclasses.replace(t, interaction={**t.interaction, (3, 4): 100.0})
    with pytest.raises(TimingError):
        bad.check()


def test_overrides(tmp_path, table):
    p = tmp_path / "t.csv"
    p.write_text("kind,level_a,level_b,ns\nsingle,1,,25\ninteraction,1,1,450\nswap,1,1,850\n")
    t = load_overrides(p)
    assert (t.single_time(1), t.interaction_time(1, 1), t.swap_time(1, 1)) == (25, 450, 850)
    assert t.swap_time(4, 4) == 7500


def test_override_errors(tmp_path):
    p = tmp_path / "t.csv"
    p.write_text("kind,level_a,level_b,ns\nwarp,1,1,5\n")
    with pytest.raises(TimingError, match=":2: unknown kind"):
        load_overrides(p)
    p.write_text("kind,level_a,level_b,ns\nswap,1,1,abc\n")
    with pytest.raises(TimingError, match=":2: bad timing row"):
        load_overrides(p)
    p.write_text("kind,level_a,level_b,ns\nswap,1,1,100\n")
    with pytest.raises(TimingError, match="shorter"):
        load_overrides(p)


def test_table_is_hashable_free_dataclass():
    assert isinstance(load_default(), TimingTable)
