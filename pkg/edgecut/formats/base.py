from abc import ABC, abstractmethod
from pathlib import Path
from typing import Tuple, Union

from ..errors import EdgeCutError
from ..graph_core import MultiGraph


class GraphFormat(ABC):
    name: str = ""
    suffixes: Tuple[str, ...] = ()

    @abstractmethod
    def read(self, text: str) -> MultiGraph:
        """Parse a multigraph from the text of a file."""
        pass

    @abstractmethod
    def write(self, graph: MultiGraph) -> str:
        """Serialize a multigraph to text."""
        pass

    def read_file(self, path: Union[str, Path]) -> MultiGraph:
        """
        Read a graph from disk.
        Parser failures are reported with the offending path attached.
        """
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
        try:
            return self.read(text)
        except EdgeCutError as e:
            e.details.setdefault("path", str(path))
            raise

    def write_file(self, path: Union[str, Path], graph: MultiGraph) -> None:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, "w", encoding="utf-8") as f:
            f.write(self.write(graph))
