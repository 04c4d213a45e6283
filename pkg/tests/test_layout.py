import pytest

from quditc.bench import gen_cnx
from quditc.circuit import Circuit, QuditSpec
from quditc.decompose import decompose_all
from quditc.gates import GateApp, Kind
from quditc.layout import compute_weights, place
from quditc.swapsynth import synthesize_swap
from quditc.topology import CapacityError, Topology, center_site


def test_empty_weights():
    w = compute_weights(Circuit([QuditSpec(i, 3) for i in range(3)]))
    assert w.pairs() == {} and w.total() == 0


def test_swap_plan_weight():
    w = compute_weights(Circuit([QuditSpec(0, 3), QuditSpec(1, 3)], synthesize_swap(3, 3).gates))
    assert w[0, 1] == w[1, 0] == 9


def test_tree_weights_favour_family():
    w = compute_weights(decompose_all(gen_cnx(7, 3)))
    # leaf 3 feeds node 1; it never touches the far leaf 6
    assert w[3, 1] > w[3, 6] == 0
    assert w[1, 0] > w[3, 0] == 0


def test_weights_never_negative():
    w = compute_weights(Circuit([QuditSpec(0, 2), QuditSpec(1, 2)], [GateApp(Kind.CSHIFT, (1,), ((0, 1),), k=1)]))
    w.decrement((0, 1))
    with pytest.raises(ValueError):
        w.decrement((0, 1))


def test_single_gate_lands_adjacent(table):
    topo = Topology(5, 5)
    c = Circuit([QuditSpec(0, 2), QuditSpec(1, 2)], [GateApp(Kind.CSHIFT, (1,), ((0, 1),), k=1)])
    m = place(c, topo, table)
    assert topo.adjacent(m[0], m[1])
    assert m[0] == center_site(topo)


def test_zero_weight_placement_is_deterministic(table):
    topo = Topology(4, 4)
    c = Circuit([QuditSpec(i, 2) for i in range(5)])
    a, b = place(c, topo, table), place(c, topo, table)
    assert a.phi == b.phi
    assert len(set(a.phi.values())) == 5


def test_qutrit_tree_placed_compactly(table, grid12):
    c = decompose_all(gen_cnx(7, 3))
    m = place(c, grid12, table)
    centre = center_site(grid12)
    assert len(m) == 8
    # seeded with internal node 1 (heaviest), so the tree path 1-0-2-5 reaches 3 hops
    assert m[1] == centre
    assert max(grid12.hops(centre, s) for s in m.phi.values()) == 3
    for parent, child in [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6), (7, 0)]:
        assert grid12.adjacent(m[parent], m[child])


@pytest.mark.parametrize("radix", [2, 3, 4, 5])
def test_valid_injection(radix, table, grid12):
    c = decompose_all(gen_cnx(20, radix))
    m = place(c, grid12, table)
    assert sorted(m.phi) == list(range(c.n_qudits))
    assert len(set(m.phi.values())) == c.n_qudits


def test_walled_in_fallback(table):
    # a 1x3 strip fills from the middle; each placement still finds a site
    c = Circuit([QuditSpec(i, 2) for i in range(3)])
    m = place(c, Topology(1, 3), table)
    assert sorted(m.phi.values()) == [0, 1, 2]


def test_capacity(table):
    with pytest.raises(CapacityError):
        place(Circuit([QuditSpec(i, 2) for i in range(3)]), Topology(1, 2), table)
    with pytest.raises(CapacityError):
        place(Circuit([QuditSpec(0, 5)]), Topology(2, 2, site_max_dim=4), table)
