# pprtopk/utils/output_utils.py

import json
import logging
import os
from typing import Any, Dict, Optional, Union

from pydantic import BaseModel

from pprtopk.models import PprVector, RunManifest

logger = logging.getLogger(__name__)


def to_jsonable(payload: Union[BaseModel, Dict[str, Any], list]) -> Any:
    if isinstance(payload, BaseModel):
        return payload.model_dump(mode="json", by_alias=True)
    if isinstance(payload, list):
        return [to_jsonable(item) for item in payload]
    return payload


def dumps_sorted(payload: Union[BaseModel, Dict[str, Any], list]) -> str:
    """JSON с сортировкой ключей: повторный запуск дает побайтно тот же файл"""
    return json.dumps(to_jsonable(payload), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(path: str, payload: Union[BaseModel, Dict[str, Any], list]) -> str:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps_sorted(payload))
    logger.debug("[write_json] -> '%s'", path)
    return path


def write_ppr_tsv(path: str, vector: PprVector, labels: Optional[Dict[int, str]] = None) -> str:
    """Строки "node<TAB>score" (и метка третьим столбцом, если заданы метки)"""
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        for node, score in enumerate(vector.scores):
            if labels:
                f.write(f"{node}\t{score!r}\t{labels.get(node, '')}\n")
            else:
                f.write(f"{node}\t{score!r}\n")
    return path


def write_manifest(out_dir: str, manifest: RunManifest) -> str:
    return write_json(os.path.join(out_dir, "manifest.json"), manifest)
