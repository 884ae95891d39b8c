"""Read-only HTTP API over a model store.

Everything heavy is precomputed at build time; requests only load JSON
artifacts, filter them, or re-derive small views (date windows, traces,
period comparisons) from the stored logs. Responses are pure functions of
the store contents and the query parameters. Errors carry a structured
body: {"detail": {"code": ..., "message": ...}}.
"""

from __future__ import annotations

from datetime import datetime
from typing import Optional

from fastapi import FastAPI, HTTPException, Query

from .automaton import build_automaton
from .layout import layout_automaton, layout_to_dict
from .model import Zone
from .stats import compare_periods, comparison_to_dict
from .store import ModelStore
from .views import date_view, details_of, filter_layout, search_states


def _err(status: int, code: str, message: str) -> HTTPException:
    return HTTPException(status_code=status, detail={"code": code, "message": message})


def _parse_moment(value: Optional[str], name: str, end_of_day: bool = False) -> Optional[datetime]:
    if value is None or value == "":
        return None
    try:
        if len(value) == 10 and end_of_day:  # bare date: include the whole day
            return datetime.fromisoformat(value + "T23:59:59")
        return datetime.fromisoformat(value)
    except ValueError:
        raise _err(400, "bad_timestamp", f"bad {name!r} timestamp: {value!r}")


def create_app(store: ModelStore) -> FastAPI:
    app = FastAPI(title="tutorlens", version="0.1.0")

    def meta_or_404(model_id: str) -> dict:
        try:
            return store.model_meta(model_id)
        except KeyError:
            raise _err(404, "model_not_found", f"no model {model_id!r}")

    @app.get("/models")
    def list_models() -> list[dict]:
        out = []
        for meta in store.list_models():
            out.append(
                {
                    "model_id": meta["model_id"],
                    "assignment_id": meta["assignment_id"],
                    "corpus_id": meta["corpus_id"],
                    "method": meta["method"],
                    "feature": meta["feature"],
                    "k": meta["k"],
                    "n_students": meta["n_students"],
                    "built_at": meta["built_at"],
                }
            )
        return out

    @app.get("/models/{model_id}/clusters")
    def list_clusters(model_id: str) -> list[dict]:
        meta = meta_or_404(model_id)
        return [
            {
                "index": c["index"],
                "n_students": c["n_students"],
                "n_states": c["n_states"],
                "n_edges": c["n_edges"],
                "mean_error_coefficient": c["mean_error_coefficient"],
            }
            for c in meta["clusters"]
        ]

    @app.get("/models/{model_id}/clusters/{cluster}/graph")
    def cluster_graph(
        model_id: str,
        cluster: int,
        min_node_freq: float = Query(0.0, ge=0.0, le=100.0),
        min_edge_freq: float = Query(0.0, ge=0.0, le=100.0),
    ) -> dict:
        try:
            graph = store.cluster_layout(model_id, cluster)
        except KeyError as exc:
            raise _err(404, "cluster_not_found", str(exc.args[0]))
        return layout_to_dict(filter_layout(graph, min_node_freq, min_edge_freq))

    @app.get("/models/{model_id}/clusters/{cluster}/states/{state_id}")
    def state_detail(model_id: str, cluster: int, state_id: str) -> dict:
        try:
            automaton = store.cluster_automaton(model_id, cluster)
        except KeyError as exc:
            raise _err(404, "cluster_not_found", str(exc.args[0]))
        config = store.model_config(model_id)
        try:
            return details_of(automaton, state_id, config)
        except KeyError as exc:
            raise _err(404, "state_not_found", str(exc.args[0]))

    @app.get("/models/{model_id}/clusters/{cluster}/search")
    def search(
        model_id: str,
        cluster: int,
        q: str = Query(""),
        zone: Optional[str] = Query(None),
    ) -> dict:
        try:
            automaton = store.cluster_automaton(model_id, cluster)
        except KeyError as exc:
            raise _err(404, "cluster_not_found", str(exc.args[0]))
        zone_filter = None
        if zone:
            try:
                zone_filter = Zone(zone)
            except ValueError:
                raise _err(400, "bad_zone", f"unknown zone {zone!r}")
        n = automaton.n_students
        return {
            "matches": [
                {
                    "id": s.id,
                    "label": s.label,
                    "zone": s.zone.value,
                    "kind": s.kind.value,
                    "frequency": s.frequency(n),
                }
                for s in search_states(automaton, q, zone_filter, limit=20)
            ]
        }

    @app.get("/models/{model_id}/date-view")
    def model_date_view(
        model_id: str,
        from_: Optional[str] = Query(None, alias="from"),
        to: Optional[str] = Query(None),
    ) -> dict:
        meta_or_404(model_id)
        from_dt = _parse_moment(from_, "from")
        to_dt = _parse_moment(to, "to", end_of_day=True)
        config = store.model_config(model_id)
        logs = store.model_logs(model_id)
        try:
            automaton = date_view(config, logs, from_dt, to_dt)
        except ValueError as exc:
            message = str(exc)
            if "inverted" in message:
                raise _err(400, "inverted_range", message)
            raise _err(404, "no_data_in_range", message)
        payload = layout_to_dict(layout_automaton(automaton, config))
        payload["window"] = {"from": from_, "to": to}
        return payload

    @app.get("/models/{model_id}/students/{student_id}/trace")
    def trace(model_id: str, student_id: str) -> dict:
        meta_or_404(model_id)
        config = store.model_config(model_id)
        logs = store.model_logs(model_id)
        log = next((lg for lg in logs if lg.student_id == student_id), None)
        if log is None:
            raise _err(404, "student_not_found", f"no student {student_id!r}")
        automaton = build_automaton(config, [log])
        payload = layout_to_dict(layout_automaton(automaton, config))
        payload["student_id"] = student_id
        payload["steps"] = [
            {"state": step.state_id, "event": step.label, "timestamp": step.timestamp}
            for step in automaton.traces[student_id]
        ]
        return payload

    @app.get("/models/{model_id}/compare")
    def compare(
        model_id: str,
        from_a: str = Query(...),
        to_a: str = Query(...),
        from_b: str = Query(...),
        to_b: str = Query(...),
        changed: Optional[str] = Query(None),
        min_percent: float = Query(0.0, ge=0.0, le=100.0),
    ) -> dict:
        meta_or_404(model_id)
        a0 = _parse_moment(from_a, "from_a")
        a1 = _parse_moment(to_a, "to_a", end_of_day=True)
        b0 = _parse_moment(from_b, "from_b")
        b1 = _parse_moment(to_b, "to_b", end_of_day=True)
        logs = store.model_logs(model_id)
        logs_a = [lg for lg in logs if a0 <= lg.started_at <= a1]
        logs_b = [lg for lg in logs if b0 <= lg.started_at <= b1]
        if not logs_a or not logs_b:
            raise _err(400, "empty_period", "a period matched no students")
        changed_codes = [c for c in changed.split(",") if c] if changed else None
        comparison = compare_periods(logs_a, logs_b, changed_codes)
        payload = comparison_to_dict(comparison, min_percent=min_percent)
        payload["window_a"] = {"from": from_a, "to": to_a}
        payload["window_b"] = {"from": from_b, "to": to_b}
        return payload

    return app
