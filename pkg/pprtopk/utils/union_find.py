# pprtopk/utils/union_find.py

from typing import Dict, Hashable, Iterable, List


class UnionFind:
    """Система непересекающихся множеств: объединение по рангу, сжатие путей"""

    def __init__(self, items: Iterable[Hashable]):
        self._leader: Dict[Hashable, Hashable] = {item: item for item in items}
        self._rank: Dict[Hashable, int] = {item: 0 for item in self._leader}
        self.cluster_count = len(self._leader)

    def find(self, item: Hashable) -> Hashable:
        root = item
        while self._leader[root] != root:
            root = self._leader[root]
        while self._leader[item] != root:
            self._leader[item], item = root, self._leader[item]
        return root

    def union(self, a: Hashable, b: Hashable) -> bool:
        """True, если a и b были в разных множествах"""
        root_a, root_b = self.find(a), self.find(b)
        if root_a == root_b:
            return False
        if self._rank[root_a] < self._rank[root_b]:
            root_a, root_b = root_b, root_a
        self._leader[root_b] = root_a
        if self._rank[root_a] == self._rank[root_b]:
            self._rank[root_a] += 1
        self.cluster_count -= 1
        return True

    def groups(self) -> List[List[Hashable]]:
        """Множества в каноническом виде: элементы и сами множества отсортированы"""
        by_root: Dict[Hashable, List[Hashable]] = {}
        for item in self._leader:
            by_root.setdefault(self.find(item), []).append(item)
        return sorted(sorted(group) for group in by_root.values())
