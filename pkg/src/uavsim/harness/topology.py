"""UAV node topology: per-(node, UAV) coverage lists plus base stations.

The bundled file mirrors the experiment's node-distribution table verbatim
(10 node rows x 9 UAV columns of bracketed id lists) so the interpretation
stays visible and swappable. Station affinity derives a deterministic
per-UAV SNR offset from how far the UAV's nodes sit from evenly spaced
station anchors; this is synthetic geometry, used to spread station
preferences across UAVs.
"""

import re
from dataclasses import dataclass
from importlib import resources

from ..errors import ValidationError

_LIST_RE = re.compile(r"\[([0-9,\s]*)\]")


@dataclass(frozen=True)
class Topology:
    """node_rows[r][u] is the id list for node row r, UAV column u."""

    node_rows: tuple
    base_stations: int

    def __post_init__(self):
        rows = tuple(tuple(tuple(cell) for cell in row) for row in self.node_rows)
        object.__setattr__(self, "node_rows", rows)
        if not rows:
            raise ValidationError("topology needs at least one node row")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValidationError("ragged topology: rows disagree on UAV count")
        if self.base_stations < 1:
            raise ValidationError("at least one base station required")
        max_node = len(rows)
        for r, row in enumerate(rows, start=1):
            for cell in row:
                for node_id in cell:
                    if not 1 <= node_id <= max_node:
                        raise ValidationError(
                            f"node id {node_id} out of range 1..{max_node} (row {r})"
                        )

    @property
    def n_uavs(self):
        return len(self.node_rows[0])

    @property
    def n_nodes(self):
        return len(self.node_rows)

    def uav_column(self, uav_index):
        return [row[uav_index] for row in self.node_rows]

    def uav_position(self, uav_index):
        """Mean node id of one UAV's coverage lists (a 1-D stand-in for place)."""
        ids = [i for cell in self.uav_column(uav_index) for i in cell]
        return sum(ids) / len(ids) if ids else 1.0

    def station_anchors(self, n_stations, fleet_positions=None):
        """Station positions chosen as quantiles of the fleet's positions.

        Quantile placement keeps nearest-station loads balanced regardless of
        how the coverage lists cluster.
        """
        positions = sorted(
            fleet_positions
            if fleet_positions is not None
            else (self.uav_position(u) for u in range(self.n_uavs))
        )
        anchors = []
        for s in range(n_stations):
            q = (s + 0.5) / n_stations
            idx = min(len(positions) - 1, int(q * len(positions)))
            anchors.append(positions[idx])
        return anchors

    def station_snr_offsets(self, uav_index, n_stations, scale_db=0.8, anchors=None):
        """Deterministic per-station SNR offsets (dB) for one UAV."""
        if anchors is None:
            anchors = self.station_anchors(n_stations)
        pos = self.uav_position(uav_index)
        return [-scale_db * abs(pos - a) for a in anchors]


def parse_topology_text(text):
    rows = []
    base_stations = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("base_stations"):
            try:
                base_stations = int(line.split("=")[1])
            except (IndexError, ValueError) as exc:
                raise ValidationError("bad base_stations line", line=lineno) from exc
            continue
        if not line.startswith("node"):
            raise ValidationError(f"unrecognized line: {line!r}", line=lineno)
        _, _, rest = line.partition(":")
        cells = _LIST_RE.findall(rest)
        if not cells:
            raise ValidationError("node row without coverage lists", line=lineno)
        row = []
        for cell in cells:
            ids = [int(x) for x in cell.replace(" ", "").split(",") if x]
            row.append(tuple(ids))
        rows.append(tuple(row))
    if base_stations is None:
        raise ValidationError("missing base_stations line")
    return Topology(tuple(rows), base_stations)


def load_topology(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_topology_text(fh.read())


def bundled_topology():
    text = (
        resources.files("uavsim.harness").joinpath("data/node_topology.txt").read_text("utf-8")
    )
    return parse_topology_text(text)


def bundled_topology_path():
    return resources.files("uavsim.harness").joinpath("data/node_topology.txt")
