# pprtopk/models.py

from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class DanglingPolicy(str, Enum):
    SELF_LOOP = "self_loop"
    JUMP_TO_SEED = "jump_to_seed"


class EdgeFilter(str, Enum):
    ALL = "all"
    CROSS_HOST_ONLY = "cross_host_only"


class WalkMethod(str, Enum):
    END_POINT = "end_point"
    COMPLETE_PATH = "complete_path"


class ReportKind(str, Enum):
    LIST = "list"
    BASKET = "basket"


class WalkConfig(BaseModel):
    """Параметры случайного блуждания: общие для точного решателя и Monte Carlo"""
    model_config = ConfigDict(frozen=True)

    damping: float = Field(..., gt=0.0, lt=1.0, description="Вероятность продолжения блуждания c")
    seed_node: int = Field(..., ge=0, description="Стартовый узел s")
    dangling_policy: DanglingPolicy = DanglingPolicy.SELF_LOOP
    edge_filter: EdgeFilter = EdgeFilter.ALL


class PprVector(BaseModel):
    """Вектор Personalized PageRank pi(s, c)"""
    model_config = ConfigDict(frozen=True)

    scores: List[float]
    damping: float
    seed: int
    personalization: Optional[Dict[int, float]] = None

    def as_array(self) -> np.ndarray:
        return np.asarray(self.scores, dtype=np.float64)


class ResolventEntry(BaseModel):
    """Элемент z_ij резольвенты [I - cP]^-1: ожидаемое число посещений j из i"""
    i: int
    j: int
    value: float


class WalkOutcome(BaseModel):
    """Счетчики окончаний L_j (End Point) или посещений (Complete Path) по m прогонам"""
    model_config = ConfigDict(populate_by_name=True)

    method: WalkMethod
    runs_m: int = Field(..., ge=1, alias="m")
    counts: Dict[int, int]
    rng_seed_base: int = Field(..., alias="rng_seed")


class MCEstimate(BaseModel):
    """Оценка pi_hat по результатам прогонов; отсутствующий узел читается как 0.0"""
    pi_hat: Dict[int, float]
    method: WalkMethod
    runs_m: int

    def get(self, node: int) -> float:
        return self.pi_hat.get(node, 0.0)


class AdaptiveResult(BaseModel):
    stopped_at_m: int
    cap_reached: bool
    gap: int
    batches: int


class TopKReport(BaseModel):
    """Top-k список (упорядоченный) или корзина"""
    ordered_ids: List[int]
    scores: List[float]
    kind: ReportKind = ReportKind.LIST
    k: int
    truncated: bool = False
    labels: Optional[List[str]] = None


class BasketComparison(BaseModel):
    k: int
    correct: int
    erroneous: int
    list_correct_prefix: int


class CurveRow(BaseModel):
    m: int
    mean_correct: float
    std_correct: float


class VarianceReport(BaseModel):
    node: Optional[int] = None
    method: WalkMethod
    sigma_per_sqrt_m: float = Field(..., ge=0.0)
    m: Optional[int] = None
    sigma: Optional[float] = None
    approximate: bool = False


class CovEntry(BaseModel):
    s: int
    i: int
    j: int
    value: float


class BoundKind(str, Enum):
    PAIRWISE_EXACT_MULTINOMIAL = "pairwise_exact_multinomial"
    PAIRWISE_CLT = "pairwise_clt"
    BASKET_BONFERRONI = "basket_bonferroni"
    LIST_BONFERRONI = "list_bonferroni"


class MisrankBound(BaseModel):
    kind: BoundKind
    value: float = Field(..., ge=0.0, le=1.0)
    raw_value: float
    params: Dict[str, Any] = Field(default_factory=dict)


class DetectionReport(BaseModel):
    m: int
    r: int
    k: int
    j: int
    p_order: float
    p_hit: float


class RelaxationReport(BaseModel):
    m: float
    k: int
    y: Optional[int] = None
    mu_y: Optional[float] = None
    e_m1: Optional[float] = None
    recommended_m: Optional[int] = None
    a: Optional[float] = None
    epsilon: Optional[float] = None
    alpha: Optional[float] = None
    condition_holds: Optional[bool] = None
    hypothesis_ok: Optional[bool] = None


class CorpusPage(BaseModel):
    """Страница корпуса после предобработки"""
    id: int = Field(..., ge=0)
    host: str
    text_tokens: List[str] = Field(default_factory=list)
    is_person_page: bool = False
    outlinks: List[int] = Field(default_factory=list)


class PageProfile(BaseModel):
    """Профиль страницы: до PROFILE_SIZE пар (термин, вес), L2-нормированных"""
    page: int
    terms: List[Tuple[str, float]] = Field(default_factory=list)

    def as_dict(self) -> Dict[str, float]:
        return dict(self.terms)


class MergeProvenance(str, Enum):
    STRUCTURE = "structure"
    CONTENT = "content"


class MergeRecord(BaseModel):
    left: int
    right: int
    provenance: MergeProvenance
    similarity: Optional[float] = None


class Clustering(BaseModel):
    """Разбиение персональных страниц на непересекающиеся кластеры"""
    clusters: List[List[int]]
    merges: List[MergeRecord] = Field(default_factory=list)


class DisambiguationResult(BaseModel):
    clusters: List[List[int]]
    cluster_terms: List[List[Tuple[str, float]]] = Field(default_factory=list)
    related: Dict[int, List[int]] = Field(default_factory=dict)
    merges: List[MergeRecord] = Field(default_factory=list)


class RunManifest(BaseModel):
    """Сведения, достаточные для воспроизведения результата команды"""
    command: str
    parameters: Dict[str, Any]
    rng_seeds: List[int] = Field(default_factory=list)
    version: str
    wall_time_sec: float
