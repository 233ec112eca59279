import networkx as nx
import numpy as np

from ..exceptions import ValidationException
from .base import IdtnetTable


class Graph(IdtnetTable):
    """
    Undirected simple graph stored as sorted adjacency lists over dense node ids 0..n-1.
    """
    csv_header = ("u", "v")

    def __init__(self, n=0, adjacency=None):
        super(Graph, self).__init__()
        self.n = n
        self.adjacency = adjacency if adjacency is not None else [[] for _ in range(n)]
        self._neighbour_table = None

    def __str__(self):
        return "Graph(n={0}, edges={1})".format(self.n, self.edge_count)

    @property
    def degrees(self):
        return [len(neighbours) for neighbours in self.adjacency]

    @property
    def max_degree(self):
        return max(self.degrees) if self.n else 0

    @property
    def edge_count(self):
        return sum(self.degrees) // 2

    def edges(self):
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def validate(self):
        if len(self.adjacency) != self.n:
            raise ValidationException("Adjacency length differs from node count", 204)

        for u, neighbours in enumerate(self.adjacency):
            if u in neighbours:
                raise ValidationException("Self-loop found", 204, "node {0}".format(u))
            if len(set(neighbours)) != len(neighbours):
                raise ValidationException("Duplicate edge found", 204, "node {0}".format(u))
            for v in neighbours:
                if not 0 <= v < self.n or u not in self.adjacency[v]:
                    raise ValidationException("Adjacency is not symmetric", 204, "edge {0}-{1}".format(u, v))

        return True

    def neighbour_table(self):
        """
        Neighbour ids padded to the maximum degree with the sentinel n, shape (n, max_degree).
        """
        if self._neighbour_table is None:
            width = max(self.max_degree, 1)
            table = np.full((self.n, width), self.n, dtype=np.int64)
            for u, neighbours in enumerate(self.adjacency):
                table[u, :len(neighbours)] = neighbours
            self._neighbour_table = table

        return self._neighbour_table

    def adjacency_matrix(self):
        matrix = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges():
            matrix[u, v] = matrix[v, u] = 1
        return matrix

    def to_networkx(self):
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges())
        return graph

    def csv_rows(self):
        return self.edges()

    @classmethod
    def from_edges(cls, n, edges):
        adjacency = [[] for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationException("Edge references a node outside 0..n-1", 204, "{0}-{1}".format(u, v))
            adjacency[u].append(v)
            adjacency[v].append(u)

        graph = cls(n, [sorted(neighbours) for neighbours in adjacency])
        graph.validate()
        return graph

    @classmethod
    def from_csv_rows(cls, rows, meta):
        edges = [(int(row["u"]), int(row["v"])) for row in rows]
        n = int(meta["n"]) if "n" in meta else 1 + max([max(edge) for edge in edges], default=-1)
        return cls.from_edges(n, edges)

    @classmethod
    def star(cls, k):
        """Center 0 joined to leaves 1..k"""
        return cls.from_edges(k + 1, [(0, leaf) for leaf in range(1, k + 1)])

    @classmethod
    def path(cls, n):
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def complete(cls, n):
        return cls.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])

    def star_center(self):
        """
        Returns the center of a star graph or None when the graph is not a star.
        """
        if self.n < 2:
            return None

        degrees = self.degrees
        center = int(np.argmax(degrees))
        if degrees[center] != self.n - 1:
            return None
        if any(degrees[u] != 1 for u in range(self.n) if u != center) and self.n > 2:
            return None

        return center
