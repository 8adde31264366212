"""HTTP scene service.

Every request is an independent pure computation over its query
parameters; scene bodies are byte-identical to the CLI's output for the
same parameters.
"""

from __future__ import annotations

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse, PlainTextResponse

from .params import DEFAULTS, coerce_params, spec_from_params
from .scene_io import encode_scene_json, generate_scene

_SCENE_PARAMS = ("sigma", "tau", "gauge", "bed", "m", "n", "shift",
                 "wales", "courses", "v", "override")


def create_app() -> FastAPI:
    app = FastAPI(title="spacerfab", docs_url=None, redoc_url=None)

    @app.get("/health")
    def health() -> PlainTextResponse:
        return PlainTextResponse("ok")

    @app.get("/defaults")
    def defaults() -> JSONResponse:
        return JSONResponse(dict(DEFAULTS))

    @app.get("/scene")
    def scene(request: Request) -> Response:
        raw = {}
        for key, value in request.query_params.items():
            if key not in _SCENE_PARAMS:
                return JSONResponse({"error": f"{key}: unknown parameter"},
                                    status_code=422)
            raw[key] = value
        try:
            spec = spec_from_params(coerce_params(raw))
            body = encode_scene_json(generate_scene(spec))
        except ValueError as exc:
            return JSONResponse({"error": str(exc)}, status_code=422)
        return Response(content=body, media_type="application/json")

    return app
