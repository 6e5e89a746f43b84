# pprtopk/corpus_loader.py
"""
Загрузка офлайн-корпуса страниц (JSON lines) и построение графа ссылок с хостами.
"""
import json
import logging
import os
import re
from functools import lru_cache
from typing import FrozenSet, List, Optional

from pydantic import BaseModel, Field, ValidationError

from pprtopk.config import STOPWORDS_FILE
from pprtopk.exceptions import CorpusFormatError, InvalidParameterError
from pprtopk.graph import Graph, graph_from_edges
from pprtopk.models import CorpusPage

logger = logging.getLogger(__name__)

_TOKEN_PATTERN = re.compile(r"[^\W_]+", re.UNICODE)
CONTENT_FIELDS = ("text", "meta")


class CorpusRecord(BaseModel):
    """Строка файла корпуса до предобработки"""
    id: int = Field(..., ge=0)
    host: str = Field(..., min_length=1)
    text: str = ""
    person: bool = False
    outlinks: List[int] = Field(default_factory=list)
    meta: Optional[str] = None


@lru_cache(maxsize=4)
def load_stopwords(path: Optional[str] = None) -> FrozenSet[str]:
    """Список стоп-слов: по умолчанию из data/STOPWORDS_FILE"""
    if path is None:
        path = os.path.join(os.path.dirname(__file__), "data", STOPWORDS_FILE)
    try:
        with open(path, encoding="utf-8") as f:
            return frozenset(
                line.strip().lower() for line in f
                if line.strip() and not line.startswith("#")
            )
    except OSError as e:
        logger.warning("[load_stopwords] cannot read '%s': %s, stopword filtering disabled", path, e)
        return frozenset()


def preprocess_text(text: str, stopwords: Optional[FrozenSet[str]] = None) -> List[str]:
    """Нижний регистр, удаление пунктуации и стоп-слов"""
    if stopwords is None:
        stopwords = load_stopwords()
    return [token for token in _TOKEN_PATTERN.findall(text.lower()) if token not in stopwords]


def load_corpus(path: str, content_field: str = "text",
                stopwords: Optional[FrozenSet[str]] = None) -> List[CorpusPage]:
    """
    Загрузка корпуса: одна JSON-запись на строку
    {"id":int,"host":str,"text":str,"person":bool,"outlinks":[int,...]}.

    content_field="meta" строит токены из поля "meta" (содержимое META-тегов);
    для страниц без него используется "text".
    """
    if content_field not in CONTENT_FIELDS:
        raise InvalidParameterError(f"content_field must be one of {CONTENT_FIELDS}, got '{content_field}'")
    logger.info("[load_corpus] <- path='%s', content_field=%s", path, content_field)

    pages: List[CorpusPage] = []
    seen_ids = set()
    with open(path, "r", encoding="utf-8") as f:
        for line_number, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                record = CorpusRecord.model_validate(json.loads(line))
            except json.JSONDecodeError as e:
                raise CorpusFormatError(f"invalid JSON: {e.msg}", line_number)
            except ValidationError as e:
                fields = ", ".join(".".join(str(p) for p in err["loc"]) for err in e.errors())
                raise CorpusFormatError(f"invalid page record (fields: {fields})", line_number)
            if record.id in seen_ids:
                raise CorpusFormatError(f"duplicate page id {record.id}", line_number)
            seen_ids.add(record.id)

            content = record.meta if content_field == "meta" and record.meta is not None else record.text
            tokens = preprocess_text(content, stopwords)
            if record.person and not tokens:
                logger.warning("[load_corpus] person page %d has no tokens after preprocessing", record.id)
            pages.append(CorpusPage(
                id=record.id,
                host=record.host,
                text_tokens=tokens,
                is_person_page=record.person,
                outlinks=record.outlinks,
            ))

    logger.info("[load_corpus] -> %d pages, %d person pages", len(pages), sum(p.is_person_page for p in pages))
    return pages


def build_corpus_graph(pages: List[CorpusPage]) -> Graph:
    """
    Граф ссылок корпуса: узлы - id страниц, ссылки на отсутствующие страницы
    отбрасываются. Пропуски в нумерации становятся изолированными узлами
    с собственным хостом.
    """
    if not pages:
        raise InvalidParameterError("corpus is empty")
    n = max(page.id for page in pages) + 1
    known = {page.id for page in pages}
    host_ids = {}
    host_of = [-1] * n
    for page in sorted(pages, key=lambda p: p.id):
        host_of[page.id] = host_ids.setdefault(page.host, len(host_ids))
    for v in range(n):
        if host_of[v] < 0:
            host_of[v] = host_ids.setdefault(f"<missing:{v}>", len(host_ids))

    edges = []
    dropped = 0
    for page in pages:
        for target in page.outlinks:
            if target in known:
                edges.append((page.id, target))
            else:
                dropped += 1
    if dropped:
        logger.debug("[build_corpus_graph] %d links to pages outside the corpus dropped", dropped)
    host_names = sorted(host_ids, key=host_ids.get)
    return graph_from_edges(n, edges, host_of, host_names)
