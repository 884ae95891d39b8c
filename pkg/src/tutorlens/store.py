"""File-backed store for corpora and built models.

Directory shape:

    <root>/corpora/<corpus_id>/config.json
                               corpus.jsonl
                               meta.json
    <root>/models/<model_id>/meta.json
                             config.json
                             corpus.jsonl
                             full/automaton.json
                             full/layout.json
                             clusters/<i>/automaton.json
                             clusters/<i>/layout.json

Identifiers are content hashes, so re-adding the same corpus or rebuilding
with the same parameters lands on the same id. Files are written to a
temporary sibling and renamed into place; readers never see partial JSON.
"""

from __future__ import annotations

import hashlib
import json
import os
import shutil
from datetime import datetime
from pathlib import Path
from typing import Optional, Sequence

from .automaton import Automaton, build_automaton, load_automaton, save_automaton
from .clustering import ClusterResult, cluster_logs, error_coefficient
from .layout import LayoutGraph, layout_automaton, load_layout, save_layout
from .logio import load_corpus, save_corpus
from .model import AssignmentConfig, StudentLog, config_to_dict, load_config, save_config

ENV_STORE_ROOT = "TUTORLENS_STORE"
DEFAULT_ROOT = "tutorlens_store"


def _atomic_write_text(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".part")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def _digest(*chunks: bytes) -> str:
    h = hashlib.sha1()
    for chunk in chunks:
        h.update(chunk)
        h.update(b"\x00")
    return h.hexdigest()[:12]


class ModelStore:
    def __init__(self, root: str | Path) -> None:
        self.root = Path(root)
        (self.root / "corpora").mkdir(parents=True, exist_ok=True)
        (self.root / "models").mkdir(parents=True, exist_ok=True)

    @classmethod
    def from_env(cls) -> "ModelStore":
        return cls(os.environ.get(ENV_STORE_ROOT, DEFAULT_ROOT))

    # -- corpora ------------------------------------------------------------

    def add_corpus(self, config: AssignmentConfig, logs: Sequence[StudentLog]) -> str:
        staging = self.root / "corpora" / ".staging"
        if staging.exists():
            shutil.rmtree(staging)
        staging.mkdir(parents=True)
        save_config(config, staging / "config.json")
        save_corpus(logs, staging / "corpus.jsonl")

        corpus_id = "c" + _digest(
            (staging / "config.json").read_bytes(), (staging / "corpus.jsonl").read_bytes()
        )
        meta = {
            "corpus_id": corpus_id,
            "assignment_id": config.assignment_id,
            "n_students": len(logs),
            "added_at": datetime.now().isoformat(timespec="seconds"),
        }
        _atomic_write_text(staging / "meta.json", json.dumps(meta, indent=2) + "\n")

        final = self.root / "corpora" / corpus_id
        if final.exists():
            shutil.rmtree(staging)
        else:
            os.replace(staging, final)
        return corpus_id

    def list_corpora(self) -> list[dict]:
        out = []
        for path in sorted((self.root / "corpora").glob("c*/meta.json")):
            out.append(json.loads(path.read_text(encoding="utf-8")))
        return out

    def load_corpus(self, corpus_id: str) -> tuple[AssignmentConfig, list[StudentLog]]:
        base = self.root / "corpora" / corpus_id
        if not base.is_dir():
            raise KeyError(f"no corpus {corpus_id!r}")
        config = load_config(base / "config.json")
        result = load_corpus(base / "corpus.jsonl")
        if result.problems:
            raise ValueError(f"stored corpus {corpus_id} is damaged: {result.problems[:3]}")
        return config, result.logs

    # -- models -------------------------------------------------------------

    def build_model(
        self,
        corpus_id: str,
        method: str = "none",
        feature: str = "errors",
        k: Optional[int] = None,
        k_min: int = 1,
        k_max: int = 8,
        seed: int = 0,
    ) -> str:
        config, logs = self.load_corpus(corpus_id)
        result = cluster_logs(
            config, logs, method=method, feature=feature, k=k, k_min=k_min,
            k_max=k_max, seed=seed,
        )

        params = json.dumps(
            {
                "corpus": corpus_id,
                "method": method,
                "feature": feature,
                "k": k,
                "k_min": k_min,
                "k_max": k_max,
                "seed": seed,
            },
            sort_keys=True,
        )
        model_id = "m" + _digest(params.encode())

        staging = self.root / "models" / ".staging"
        if staging.exists():
            shutil.rmtree(staging)
        staging.mkdir(parents=True)

        shutil.copyfile(self.root / "corpora" / corpus_id / "config.json",
                        staging / "config.json")
        shutil.copyfile(self.root / "corpora" / corpus_id / "corpus.jsonl",
                        staging / "corpus.jsonl")

        full = build_automaton(config, logs)
        (staging / "full").mkdir()
        save_automaton(full, staging / "full" / "automaton.json")
        save_layout(layout_automaton(full, config), staging / "full" / "layout.json")

        cluster_meta = []
        for c in range(result.k):
            members = [logs[i] for i in result.members(c)]
            automaton = build_automaton(config, members)
            cdir = staging / "clusters" / str(c)
            cdir.mkdir(parents=True)
            save_automaton(automaton, cdir / "automaton.json")
            save_layout(layout_automaton(automaton, config), cdir / "layout.json")
            ecs = [error_coefficient(config, log) for log in members]
            cluster_meta.append(
                {
                    "index": c,
                    "n_students": len(members),
                    "students": [log.student_id for log in members],
                    "n_states": len(automaton.states),
                    "n_edges": len(automaton.edges),
                    "mean_error_coefficient": sum(ecs) / len(ecs) if ecs else 0.0,
                }
            )

        meta = {
            "model_id": model_id,
            "corpus_id": corpus_id,
            "assignment_id": config.assignment_id,
            "built_at": datetime.now().isoformat(timespec="seconds"),
            "method": method,
            "feature": feature,
            "k": result.k,
            "k_min": k_min,
            "k_max": k_max,
            "seed": seed,
            "n_students": len(logs),
            "clusters": cluster_meta,
            "report": _json_safe(result.report),
        }
        _atomic_write_text(staging / "meta.json", json.dumps(meta, indent=2) + "\n")

        final = self.root / "models" / model_id
        if final.exists():
            shutil.rmtree(final)
        os.replace(staging, final)
        return model_id

    def list_models(self) -> list[dict]:
        out = []
        for path in sorted((self.root / "models").glob("m*/meta.json")):
            out.append(json.loads(path.read_text(encoding="utf-8")))
        return out

    def model_meta(self, model_id: str) -> dict:
        path = self.root / "models" / model_id / "meta.json"
        if not path.is_file():
            raise KeyError(f"no model {model_id!r}")
        return json.loads(path.read_text(encoding="utf-8"))

    def _model_dir(self, model_id: str) -> Path:
        base = self.root / "models" / model_id
        if not base.is_dir():
            raise KeyError(f"no model {model_id!r}")
        return base

    def cluster_automaton(self, model_id: str, cluster: int) -> Automaton:
        path = self._model_dir(model_id) / "clusters" / str(cluster) / "automaton.json"
        if not path.is_file():
            raise KeyError(f"model {model_id!r} has no cluster {cluster}")
        return load_automaton(path)

    def cluster_layout(self, model_id: str, cluster: int) -> LayoutGraph:
        path = self._model_dir(model_id) / "clusters" / str(cluster) / "layout.json"
        if not path.is_file():
            raise KeyError(f"model {model_id!r} has no cluster {cluster}")
        return load_layout(path)

    def full_automaton(self, model_id: str) -> Automaton:
        return load_automaton(self._model_dir(model_id) / "full" / "automaton.json")

    def full_layout(self, model_id: str) -> LayoutGraph:
        return load_layout(self._model_dir(model_id) / "full" / "layout.json")

    def model_config(self, model_id: str) -> AssignmentConfig:
        return load_config(self._model_dir(model_id) / "config.json")

    def model_logs(self, model_id: str) -> list[StudentLog]:
        result = load_corpus(self._model_dir(model_id) / "corpus.jsonl")
        if result.problems:
            raise ValueError(f"stored model corpus is damaged: {result.problems[:3]}")
        return result.logs


def _json_safe(value):
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if hasattr(value, "item"):  # numpy scalar
        return value.item()
    return value
