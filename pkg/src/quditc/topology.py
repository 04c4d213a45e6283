"""Grid device model, the virtual-to-site mapping, and time-weighted distance."""
from __future__ import annotations

import re
from dataclasses import dataclass

from .circuit import MAX_DIM
from .timing import TimingTable, level_of

BYSTANDER_LEVEL = 1


class CapacityError(ValueError):
    pass


@dataclass(frozen=True)
class Topology:
    rows: int
    cols: int
    site_max_dim: int = MAX_DIM

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"grid must be at least 1x1, got {self.rows}x{self.cols}")

    @classmethod
    def parse(cls, text: str) -> "Topology":
        m = re.fullmatch(r"\s*(\d+)\s*[xX]\s*(\d+)\s*", text)
        if not m:
            raise ValueError(f"bad grid {text!r}, expected RxC")
        return cls(int(m[1]), int(m[2]))

    def __str__(self) -> str:
        return f"{self.rows}x{self.cols}"

    @property
    def n_sites(self) -> int:
        return self.rows * self.cols

    def check_site(self, s: int) -> None:
        if not 0 <= s < self.n_sites:
            raise ValueError(f"site {s} not on a {self} grid")

    def coords(self, s: int) -> tuple[int, int]:
        self.check_site(s)
        return divmod(s, self.cols)

    def site(self, r: int, c: int) -> int:
        return r * self.cols + c

    def neighbors(self, s: int) -> list[int]:
        r, c = self.coords(s)
        out = []
        for dr, dc in ((-1, 0), (0, -1), (0, 1), (1, 0)):
            rr, cc = r + dr, c + dc
            if 0 <= rr < self.rows and 0 <= cc < self.cols:
                out.append(self.site(rr, cc))
        return sorted(out)

    def edges(self) -> list[tuple[int, int]]:
        return [(s, n) for s in range(self.n_sites) for n in self.neighbors(s) if s < n]

    def hops(self, a: int, b: int) -> int:
        ra, ca = self.coords(a)
        rb, cb = self.coords(b)
        return abs(ra - rb) + abs(ca - cb)

    def adjacent(self, a: int, b: int) -> bool:
        return self.hops(a, b) == 1


def center_site(topo: Topology) -> int:
    return topo.site((topo.rows - 1) // 2, (topo.cols - 1) // 2)


class Mapping:
    """Injective virtual qudit -> site map, partial while placing."""

    def __init__(self, n_sites: int, phi=None):
        self.n_sites = n_sites
        self.phi: dict[int, int] = {}
        self.occupant: dict[int, int] = {}
        for v, s in (phi or {}).items():
            self.assign(v, s)

    def assign(self, v: int, s: int) -> None:
        if not 0 <= s < self.n_sites:
            raise ValueError(f"site {s} out of range")
        if v in self.phi:
            raise ValueError(f"virtual qudit {v} already placed")
        if s in self.occupant:
            raise ValueError(f"site {s} already holds virtual qudit {self.occupant[s]}")
        self.phi[v] = s
        self.occupant[s] = v

    def __getitem__(self, v: int) -> int:
        return self.phi[v]

    def __contains__(self, v: int) -> bool:
        return v in self.phi

    def __len__(self) -> int:
        return len(self.phi)

    def swap_sites(self, a: int, b: int) -> None:
        va, vb = self.occupant.pop(a, None), self.occupant.pop(b, None)
        if va is not None:
            self.phi[va] = b
            self.occupant[b] = va
        if vb is not None:
            self.phi[vb] = a
            self.occupant[a] = vb

    def copy(self) -> "Mapping":
        return Mapping(self.n_sites, dict(self.phi))

    def as_tuple(self) -> tuple[int, ...]:
        """Sites indexed by virtual id; requires ids 0..N-1 all placed."""
        if sorted(self.phi) != list(range(len(self.phi))):
            raise ValueError("mapping is not total over 0..N-1")
        return tuple(self.phi[v] for v in range(len(self.phi)))


def distance_time(topo: Topology, a: int, b: int, dims, t: TimingTable) -> float:
    """Time for the qudits at ``a`` and ``b`` (occupied dims ``dims``) to interact.

    Each hop beyond the first costs a SWAP of the moving qudit against a
    qubit-level bystander; the lower-level operand is the one that moves, so
    the result is symmetric.
    """
    h = topo.hops(a, b)
    if h == 0:
        return 0.0
    la, lb = (level_of(d) for d in dims)
    return (h - 1) * t.swap_time(min(la, lb), BYSTANDER_LEVEL) + t.interaction_time(la, lb)
