"""Local JSON solver endpoint for the interactive editor and scripts.

One JSON object per request, POSTed to /api:

    {"op": "constants"}
    {"op": "fit", "points": [[x, y], ...],
     "endpoint_mode": {"theta_first": deg, "theta_last": deg}?,  # optional
     "spacing": s?}
    {"op": "hermite", "u": {"base": [x, y], "direction_deg": d},
     "v": {"base": [x, y], "direction_deg": d}, "spacing": s?}

Responses carry "protocol_version": 1.  Malformed requests yield
{"error": code, "message": ...} with a 4xx status; the process never dies
on bad input.  GET serves static files from an optional directory (the
editor bundle).  Requests are handled on separate threads; all solver state
is immutable, so per-request isolation is automatic.
"""

from __future__ import annotations

import json
import math
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .curveio import (_document_from_json, dumps_deterministic, fit_document,
                      hermite_curve, scurve_record, solution_polylines)
from .elastica import compute_constants
from .errors import DomainError, NoConvergence

PROTOCOL_VERSION = 1

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".mjs": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".json": "application/json",
    ".svg": "image/svg+xml",
    ".map": "application/json",
}


def _constants_payload() -> dict:
    c = compute_constants()
    return {
        "d": c.d,
        "t_star": c.t_star,
        "t_bar": c.t_bar,
        "psi": c.psi,
        "psi_deg": math.degrees(c.psi),
        "psi_bar_deg": math.degrees(c.psi_bar),
    }


def handle_request(body: dict) -> dict:
    """Dispatch one protocol request; raises DomainError on bad payloads."""
    op = body.get("op")
    if op == "constants":
        return {"protocol_version": PROTOCOL_VERSION, "constants": _constants_payload()}
    if op == "fit":
        doc = _document_from_json(body)
        spacing = body.get("spacing")
        solution, report = fit_document(doc)
        polys = solution_polylines(solution, float(spacing) if spacing is not None else None)
        return {
            "protocol_version": PROTOCOL_VERSION,
            "report": report,
            "polylines": [[[x, y] for x, y in poly] for poly in polys],
        }
    if op == "hermite":
        try:
            u, v = body["u"], body["v"]
            curve = hermite_curve(u["base"], math.radians(float(u["direction_deg"])),
                                  v["base"], math.radians(float(v["direction_deg"])))
        except (KeyError, TypeError, ValueError):
            raise DomainError(
                'hermite needs "u" and "v" objects with "base" [x, y] and "direction_deg"') from None
        spacing = body.get("spacing")
        return {
            "protocol_version": PROTOCOL_VERSION,
            "scurve": scurve_record(curve, float(spacing) if spacing is not None else None),
        }
    raise DomainError(f"unknown op: {op!r}")


def _error_payload(code: str, message: str) -> dict:
    return {"error": code, "message": message, "protocol_version": PROTOCOL_VERSION}


class SolverHandler(BaseHTTPRequestHandler):
    static_dir: Path | None = None

    def log_message(self, fmt, *args):  # keep the endpoint quiet
        pass

    def _send_json(self, payload: dict, status: int = 200) -> None:
        data = dumps_deterministic(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(data)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(data)

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "POST, GET, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()

    def do_POST(self):
        if self.path.rstrip("/") != "/api":
            self._send_json(_error_payload("not_found", f"no such endpoint: {self.path}"), 404)
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
            raw = self.rfile.read(length)
            body = json.loads(raw.decode("utf-8"))
            if not isinstance(body, dict):
                raise DomainError("request body must be a JSON object")
            self._send_json(handle_request(body))
        except json.JSONDecodeError as e:
            self._send_json(_error_payload("bad_json", str(e)), 400)
        except DomainError as e:
            self._send_json(_error_payload("bad_request", str(e)), 400)
        except NoConvergence as e:
            self._send_json(_error_payload("no_convergence", str(e)), 409)
        except Exception as e:  # contract: never crash on a request
            self._send_json(_error_payload("internal", f"{type(e).__name__}: {e}"), 500)

    def do_GET(self):
        if self.static_dir is None:
            self._send_json(_error_payload("not_found", "no static bundle configured"), 404)
            return
        rel = self.path.split("?", 1)[0].lstrip("/") or "index.html"
        target = (self.static_dir / rel).resolve()
        try:
            target.relative_to(self.static_dir.resolve())
        except ValueError:
            self._send_json(_error_payload("not_found", "path escapes static root"), 404)
            return
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            self._send_json(_error_payload("not_found", f"no such file: {rel}"), 404)
            return
        data = target.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type",
                         _CONTENT_TYPES.get(target.suffix, "application/octet-stream"))
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)


def make_server(port: int, static_dir: str | None = None) -> ThreadingHTTPServer:
    handler = type("BoundSolverHandler", (SolverHandler,), {
        "static_dir": Path(static_dir) if static_dir else None,
    })
    return ThreadingHTTPServer(("127.0.0.1", port), handler)


def serve(port: int, static_dir: str | None = None) -> None:
    """Run the endpoint until interrupted."""
    server = make_server(port, static_dir)
    try:
        server.serve_forever()
    finally:
        server.server_close()
