from __future__ import annotations

from pathlib import Path
from typing import IO, Optional

import numpy as np

from app.features.grid_packet.schemas import WaveField


class SnapshotWriter:
    """Appends ``t, |psi|^2`` rows on a decimated grid every ``every`` steps."""

    def __init__(self, path: str | Path, every: int = 1000, decimate: int = 10, header: str = "") -> None:
        self.path = Path(path)
        self.every = max(1, int(every))
        self.decimate = max(1, int(decimate))
        self.header = header
        self._fh: Optional[IO[str]] = None

    def __enter__(self) -> "SnapshotWriter":
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._fh = self.path.open("w", encoding="utf-8", newline="\n")
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def close(self) -> None:
        if self._fh is not None:
            self._fh.close()
            self._fh = None

    def maybe_write(self, step: int, field: WaveField) -> None:
        if self._fh is None or step % self.every:
            return
        if self._fh.tell() == 0:
            x = field.grid.coordinates()[:: self.decimate]
            lines = [ln for ln in self.header.splitlines() if ln]
            lines.append("x: " + ",".join(f"{v:.9e}" for v in x))
            for ln in lines:
                self._fh.write(f"# {ln}\n")
        row = np.concatenate(([field.t], field.density()[:: self.decimate]))
        np.savetxt(self._fh, row[None, :], delimiter=",", fmt="%.9e")
