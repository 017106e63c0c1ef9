"""HTTP interface: taxonomy browsing, fuzzy search, and both annotation
workflows, exposed to the web UI and to scripted clients.

The service is a thin mapping onto the session engine and the store. Every
mutation persists the task document immediately, so a restarted server (or a
reloaded browser tab) reconstructs the exact same task state from
``GET /tasks/{id}``. Reads never write: repeating any GET between mutations
returns identical results and leaves the store untouched.
"""
from __future__ import annotations

import threading
from collections import defaultdict
from pathlib import Path
from typing import Any

from fastapi import Body, FastAPI, Header, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles

from .clock import Clock, SystemClock
from .config import PlatformConfig
from .errors import EffortGateNotMet, PlatformError
from .search import SearchIndex, build_index, search
from .session import (
    PROVENANCE_CANDIDATE,
    PROVENANCES,
    AnnotationEngine,
    PresenceVerdict,
    SoundResource,
    Task,
)
from .store import Store
from .taxonomy import Taxonomy

# one HTTP status per error code; codes are the exception class names
STATUS_BY_CODE = {
    "UnknownSound": 404,
    "UnknownCategory": 404,
    "UnknownTask": 404,
    "UnknownRow": 404,
    "EmptyQuery": 400,
    "PositionOutOfRange": 400,
    "EmptyProposalList": 400,
    "ParseError": 400,
    "MalformedRecord": 400,
    "TaskNotSubmitted": 400,
    "EffortGateNotMet": 403,
    "TaskFinalized": 409,
    "NotAChild": 409,
    "NotASibling": 409,
    "DuplicateSelection": 409,
    "NotSelected": 409,
    "NothingToUndo": 409,
    "SiblingExplorationDisabled": 409,
    "AbstractCategoryNotSelectable": 409,
    "MissingVerdicts": 422,
}


def _category_summary(taxonomy: Taxonomy, category_id: str) -> dict[str, Any]:
    category = taxonomy.get(category_id)
    return {
        "id": category.id,
        "name": category.name,
        "description": category.description,
        "abstract": category.is_abstract,
        "child_count": len(category.child_ids),
    }


def _named_path(taxonomy: Taxonomy, path: tuple[str, ...]) -> list[dict[str, str]]:
    return [{"id": cid, "name": taxonomy.get(cid).name} for cid in path]


def _sound_view(sound: SoundResource, include_metadata: bool) -> dict[str, Any]:
    doc = sound.to_dict()
    if not include_metadata:
        doc.pop("metadata", None)
    return doc


class _Runtime:
    """Per-app state: the engine, live task objects, and per-task locks."""

    def __init__(self, store: Store, config: PlatformConfig, clock: Clock):
        self.store = store
        self.config = config
        self.clock = clock
        taxonomy = store.require_taxonomy()
        self.engine = AnnotationEngine(taxonomy, config, clock)
        self.index: SearchIndex = build_index(taxonomy, config.description_weight)
        self.tasks: dict[str, Task] = {}
        self._locks: defaultdict[str, threading.Lock] = defaultdict(threading.Lock)
        self._registry_lock = threading.Lock()

    @property
    def taxonomy(self) -> Taxonomy:
        return self.engine.taxonomy

    def task_lock(self, task_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks[task_id]

    def load_task(self, task_id: str) -> Task:
        with self._registry_lock:
            task = self.tasks.get(task_id)
        if task is None:
            task = self.store.get_task(task_id)  # raises UnknownTask
            with self._registry_lock:
                task = self.tasks.setdefault(task_id, task)
        return task

    def remember(self, task: Task) -> None:
        with self._registry_lock:
            self.tasks[task.task_id] = task

    def task_view(self, task: Task) -> dict[str, Any]:
        doc = task.to_dict()
        doc["sound"] = _sound_view(task.sound, include_metadata=task.metadata_revealed)
        doc["gate_satisfied"] = self.engine.gate_satisfied(task)
        for row_doc in doc.get("rows", []):
            row_doc["original_name"] = self.taxonomy.get(row_doc["original_category"]).name
            row_doc["current_name"] = self.taxonomy.get(row_doc["current_category"]).name
        return doc


def create_app(
    store: Store,
    *,
    config: PlatformConfig | None = None,
    clock: Clock | None = None,
    audio_dir: str | Path | None = None,
    frontend_dir: str | Path | None = None,
    playlists: dict[str, list[str]] | None = None,
) -> FastAPI:
    config = config or PlatformConfig()
    clock = clock or SystemClock()
    runtime = _Runtime(store, config, clock)
    playlists = dict(playlists or {})

    app = FastAPI(title="taxotag", docs_url=None, redoc_url=None)
    app.state.runtime = runtime
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(PlatformError)
    async def _platform_error(request: Request, exc: PlatformError) -> JSONResponse:
        status = STATUS_BY_CODE.get(exc.code, 400)
        return JSONResponse(status_code=status, content={"code": exc.code, "message": str(exc)})

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"code": "ValidationError", "message": str(exc.errors())},
        )

    # --- taxonomy browsing ---

    @app.get("/taxonomy/roots")
    def taxonomy_roots() -> list[dict[str, Any]]:
        taxonomy = runtime.taxonomy
        return [_category_summary(taxonomy, root) for root in taxonomy.roots]

    @app.get("/taxonomy/categories/{category_id:path}")
    def category_detail(category_id: str) -> dict[str, Any]:
        taxonomy = runtime.taxonomy
        category = taxonomy.get(category_id)
        parents = sorted(taxonomy.parents(category.id), key=lambda c: taxonomy.get(c).name)
        siblings = sorted(taxonomy.siblings(category.id), key=lambda c: taxonomy.get(c).name)
        return {
            "category": {
                "id": category.id,
                "name": category.name,
                "description": category.description,
                "citation_uri": category.citation_uri,
                "abstract": category.is_abstract,
                "blacklisted": category.is_blacklisted,
            },
            "parents": [_category_summary(taxonomy, c) for c in parents],
            "children": [_category_summary(taxonomy, c) for c in category.child_ids],
            "siblings": [_category_summary(taxonomy, c) for c in siblings],
            "ancestor_paths": [
                _named_path(taxonomy, path) for path in taxonomy.ancestor_paths(category.id)
            ],
            "example_uris": list(category.example_uris),
        }

    # --- search ---

    @app.get("/search")
    def search_categories(
        q: str = "",
        limit: int | None = Query(default=None, ge=1),
        threshold: float | None = Query(default=None, ge=0.0, lt=1.0),
    ) -> dict[str, Any]:
        taxonomy = runtime.taxonomy
        hits = search(
            runtime.index,
            q,
            limit=limit if limit is not None else config.search_limit,
            threshold=threshold if threshold is not None else config.search_threshold,
        )
        return {
            "query": q,
            "hits": [
                {
                    "category_id": hit.category_id,
                    "name": taxonomy.get(hit.category_id).name,
                    "score": hit.score,
                    "matched_field": hit.matched_field,
                    "ancestor_paths": [
                        _named_path(taxonomy, path)
                        for path in taxonomy.ancestor_paths(hit.category_id)
                    ],
                }
                for hit in hits
            ],
        }

    # --- task lifecycle ---

    def _annotator(annotator_id: str | None) -> str:
        return annotator_id or "anonymous"

    @app.post("/tasks/generation", status_code=201)
    def create_generation_task(
        body: dict[str, Any] = Body(...),
        annotator_id: str | None = Header(default=None, convert_underscores=False),
    ) -> dict[str, Any]:
        sound = store.get_sound(str(body.get("sound_id", "")))
        task = runtime.engine.new_generation_task(sound, _annotator(annotator_id))
        runtime.remember(task)
        store.save_task(task)
        return runtime.task_view(task)

    @app.post("/tasks/refinement", status_code=201)
    def create_refinement_task(
        body: dict[str, Any] = Body(...),
        annotator_id: str | None = Header(default=None, convert_underscores=False),
    ) -> dict[str, Any]:
        sound = store.get_sound(str(body.get("sound_id", "")))
        proposals = body.get("proposals")
        if proposals is None:
            # default seed: the sound's candidate annotations, in export order
            seen: list[str] = []
            for annotation in store.annotations({PROVENANCE_CANDIDATE}):
                if annotation.sound_id == sound.sound_id and annotation.category_id not in seen:
                    seen.append(annotation.category_id)
            proposals = seen
        task = runtime.engine.new_refinement_task(
            sound, [str(p) for p in proposals], _annotator(annotator_id)
        )
        runtime.remember(task)
        store.save_task(task)
        return runtime.task_view(task)

    @app.get("/tasks/{task_id}")
    def get_task(task_id: str) -> dict[str, Any]:
        return runtime.task_view(runtime.load_task(task_id))

    def _mutate(task_id: str, operation) -> dict[str, Any]:
        with runtime.task_lock(task_id):
            task = runtime.load_task(task_id)
            result = operation(task)
            store.save_task(task)
        return result

    @app.post("/tasks/{task_id}/labels")
    def add_label(task_id: str, body: dict[str, Any] = Body(...)) -> dict[str, Any]:
        def op(task: Task) -> dict[str, Any]:
            runtime.engine.add_label(task, str(body.get("category_id", "")))
            return runtime.task_view(task)

        return _mutate(task_id, op)

    @app.delete("/tasks/{task_id}/labels/{category_id:path}")
    def remove_label(task_id: str, category_id: str) -> dict[str, Any]:
        def op(task: Task) -> dict[str, Any]:
            runtime.engine.remove_label(task, category_id)
            return runtime.task_view(task)

        return _mutate(task_id, op)

    @app.post("/tasks/{task_id}/rows/{row_id}/refine")
    def refine_row(task_id: str, row_id: str, body: dict[str, Any] = Body(...)) -> dict[str, Any]:
        def op(task: Task) -> dict[str, Any]:
            runtime.engine.refine_to_child(task, row_id, str(body.get("child", "")))
            return runtime.task_view(task)

        return _mutate(task_id, op)

    @app.post("/tasks/{task_id}/rows/{row_id}/sibling")
    def move_row_to_sibling(
        task_id: str, row_id: str, body: dict[str, Any] = Body(...)
    ) -> dict[str, Any]:
        def op(task: Task) -> dict[str, Any]:
            runtime.engine.move_to_sibling(task, row_id, str(body.get("sibling", "")))
            return runtime.task_view(task)

        return _mutate(task_id, op)

    @app.post("/tasks/{task_id}/rows/{row_id}/undo")
    def undo_row_move(task_id: str, row_id: str) -> dict[str, Any]:
        def op(task: Task) -> dict[str, Any]:
            runtime.engine.undo_move(task, row_id)
            return runtime.task_view(task)

        return _mutate(task_id, op)

    @app.post("/tasks/{task_id}/rows/{row_id}/duplicate")
    def duplicate_row(task_id: str, row_id: str) -> dict[str, Any]:
        def op(task: Task) -> dict[str, Any]:
            runtime.engine.duplicate_row(task, row_id)
            return runtime.task_view(task)

        return _mutate(task_id, op)

    @app.post("/tasks/{task_id}/rows/{row_id}/verdict")
    def set_row_verdict(
        task_id: str, row_id: str, body: dict[str, Any] = Body(...)
    ) -> dict[str, Any]:
        def op(task: Task) -> dict[str, Any]:
            raw = str(body.get("verdict", ""))
            try:
                verdict = PresenceVerdict(raw)
            except ValueError:
                raise RequestValidationError(
                    [{"loc": ("body", "verdict"), "msg": f"not a presence verdict: {raw!r}"}]
                )
            runtime.engine.set_presence(task, row_id, verdict)
            return runtime.task_view(task)

        return _mutate(task_id, op)

    @app.post("/tasks/{task_id}/playback")
    def record_playback(task_id: str, body: dict[str, Any] = Body(...)) -> dict[str, Any]:
        def op(task: Task) -> dict[str, Any]:
            kind = str(body.get("kind", ""))
            if kind not in ("started", "completed"):
                raise RequestValidationError(
                    [{"loc": ("body", "kind"), "msg": f"not a playback kind: {kind!r}"}]
                )
            try:
                position = float(body.get("position_s", 0.0))
            except (TypeError, ValueError):
                raise RequestValidationError(
                    [{"loc": ("body", "position_s"), "msg": "not a number"}]
                )
            runtime.engine.record_playback(task, kind, position)
            return runtime.task_view(task)

        return _mutate(task_id, op)

    @app.post("/tasks/{task_id}/metadata-request")
    def request_metadata(task_id: str) -> dict[str, Any]:
        def op(task: Task) -> dict[str, Any]:
            metadata = runtime.engine.request_metadata(task)
            return {"task_id": task.task_id, "metadata": metadata}

        return _mutate(task_id, op)

    @app.post("/tasks/{task_id}/submit")
    def submit_task(task_id: str) -> dict[str, Any]:
        def op(task: Task) -> dict[str, Any]:
            if task.kind == "generation":
                annotations = runtime.engine.submit_generation(task)
            else:
                annotations = runtime.engine.submit_refinement(task)
            store.record_annotations(annotations)
            return {
                "task": runtime.task_view(task),
                "annotations": [a.to_dict() for a in annotations],
            }

        return _mutate(task_id, op)

    # --- sounds, export, stats, playlists ---

    @app.get("/sounds/{sound_id}")
    def get_sound(
        sound_id: str,
        include_metadata: bool = False,
        task_id: str | None = None,
    ) -> dict[str, Any]:
        sound = store.get_sound(sound_id)
        if not include_metadata:
            return _sound_view(sound, include_metadata=False)
        if task_id is None:
            raise EffortGateNotMet()
        task = runtime.load_task(task_id)  # raises UnknownTask
        if task.sound.sound_id != sound_id or not runtime.engine.gate_satisfied(task):
            raise EffortGateNotMet()
        return _sound_view(sound, include_metadata=True)

    @app.get("/sounds")
    def list_sounds() -> list[dict[str, Any]]:
        return [_sound_view(s, include_metadata=False) for s in store.list_sounds()]

    @app.get("/export")
    def export_dataset(provenance: str | None = None) -> Response:
        provenances: set[str] | None = None
        if provenance:
            provenances = {p.strip() for p in provenance.split(",") if p.strip()}
            bad = provenances - set(PROVENANCES)
            if bad:
                raise RequestValidationError(
                    [{"loc": ("query", "provenance"), "msg": f"unknown provenance: {sorted(bad)}"}]
                )
        text = store.export_dataset(provenances)
        return Response(content=text, media_type="application/x-ndjson")

    @app.get("/stats")
    def stats(task_id: list[str] = Query(default=[])) -> list[dict[str, Any]]:
        return [s.to_dict() for s in store.compute_stats(task_id or None)]

    @app.get("/playlists/{annotator_id}")
    def playlist(annotator_id: str) -> dict[str, Any]:
        return {"annotator_id": annotator_id, "sound_ids": list(playlists.get(annotator_id, []))}

    if audio_dir is not None and Path(audio_dir).is_dir():
        app.mount("/audio", StaticFiles(directory=str(audio_dir)), name="audio")
    if frontend_dir is not None and Path(frontend_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(frontend_dir), html=True), name="frontend")

    return app
