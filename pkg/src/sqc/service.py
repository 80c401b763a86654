"""Stateless check service: parse, check, and applicability over JSON.

handle_check is a pure function of the request; the HTTP layer (POST
/v1/check, POST /v1/parse, GET /v1/health) only decodes and encodes it.
The JSON schema, not the transport, is the contract: the same payloads are
produced by the in-browser embedding of the checker core. User-input errors
are never HTTP 500; malformed requests get 400 with a diagnostics array.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .calculus import (
    EmptySequent,
    ProofState,
    Rule,
    applicable_rules,
    run_steps,
)
from .diagnostics import Diagnostic
from .parser import FormulaError, parse_formula, parse_script, valid_prefix
from .printer import print_formula, print_sequent

DEFAULT_SIZE_LIMIT = 256 * 1024


@dataclass(frozen=True)
class CheckRequest:
    script_text: str
    mode: str = "full"  # "full" | "prefix"


def _diagnostic_payload(d: Diagnostic) -> dict:
    payload = {
        "code": d.code,
        "severity": d.severity,
        "message": d.message,
        "line": d.location.line,
        "col": d.location.col,
    }
    if d.expected is not None:
        payload["expected"] = d.expected
    if d.got is not None:
        payload["got"] = d.got
    return payload


def _applicable_names(state: ProofState) -> list[str]:
    if not state.open_goals:
        return []
    _, goal = state.open_goals[0]
    try:
        rules = applicable_rules(goal)
    except EmptySequent:
        return []
    return [r.value for r in Rule if r in rules]


def _goals_payload(state: ProofState) -> list[dict]:
    return [
        {"branch": branch, "sequent": print_sequent(goal)}
        for branch, goal in state.open_goals
    ]


def handle_check(req: CheckRequest, size_limit: int = DEFAULT_SIZE_LIMIT) -> dict:
    """Pure request/response check; the CheckResponse as a JSON-ready dict."""
    if len(req.script_text.encode("utf-8")) > size_limit:
        return {
            "status": "parse_error",
            "open_goals": [],
            "diagnostics": [
                {
                    "code": "BODY_TOO_LARGE",
                    "severity": "error",
                    "message": f"script text exceeds the {size_limit} byte limit",
                    "line": 1,
                    "col": 1,
                }
            ],
            "applicable": [],
            "steps_validated": 0,
        }

    outcome = parse_script(req.script_text)
    parse_diags = list(outcome.diagnostics)
    has_parse_errors = any(d.severity == "error" for d in parse_diags)

    if outcome.script is None:
        return {
            "status": "parse_error",
            "open_goals": [],
            "diagnostics": [_diagnostic_payload(d) for d in parse_diags],
            "applicable": [],
            "steps_validated": 0,
        }

    if req.mode == "full":
        if has_parse_errors:
            return {
                "status": "parse_error",
                "open_goals": [],
                "diagnostics": [_diagnostic_payload(d) for d in parse_diags],
                "applicable": [],
                "steps_validated": 0,
            }
        result = run_steps(ProofState.initial(outcome.script.goal), outcome.script.steps)
        if result.failure is not None:
            _, failure_diags = result.failure
            return {
                "status": "invalid",
                "open_goals": [],
                "diagnostics": [_diagnostic_payload(d) for d in failure_diags],
                "applicable": [],
                "steps_validated": result.steps_validated,
            }
        status = "complete" if not result.state.open_goals else "incomplete"
        return {
            "status": status,
            "open_goals": _goals_payload(result.state),
            "diagnostics": [],
            "applicable": _applicable_names(result.state),
            "steps_validated": result.steps_validated,
        }

    # prefix mode: report the state after the longest valid prefix
    steps = valid_prefix(outcome)
    result = run_steps(ProofState.initial(outcome.script.goal), steps)
    diagnostics = list(parse_diags)
    if result.failure is not None:
        diagnostics.extend(result.failure[1])
    has_errors = any(d.severity == "error" for d in diagnostics)
    if has_errors:
        status = "invalid"
    elif not result.state.open_goals:
        status = "complete"
    else:
        status = "incomplete"
    return {
        "status": status,
        "open_goals": _goals_payload(result.state),
        "diagnostics": [_diagnostic_payload(d) for d in diagnostics],
        "applicable": _applicable_names(result.state),
        "steps_validated": result.steps_validated,
    }


def handle_parse(formula_text: str) -> tuple[int, dict]:
    """POST /v1/parse body: canonical form of one formula, or 400 + diagnostics."""
    try:
        formula = parse_formula(formula_text)
    except FormulaError as exc:
        return 400, {"diagnostics": [_diagnostic_payload(d) for d in exc.diagnostics]}
    return 200, {"canonical": print_formula(formula), "diagnostics": []}


class _Handler(BaseHTTPRequestHandler):
    size_limit = DEFAULT_SIZE_LIMIT

    def log_message(self, format: str, *args) -> None:  # noqa: A002
        pass

    def _send(self, status: int, payload: dict) -> None:
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def do_OPTIONS(self) -> None:  # noqa: N802
        # the offline page is served from another origin (often file://), so
        # browsers preflight their POSTs before talking to the local service
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()

    def _bad_request(self, message: str) -> None:
        self._send(
            400,
            {
                "diagnostics": [
                    {
                        "code": "BAD_REQUEST",
                        "severity": "error",
                        "message": message,
                        "line": 1,
                        "col": 1,
                    }
                ]
            },
        )

    def do_GET(self) -> None:  # noqa: N802
        if self.path == "/v1/health":
            self._send(200, {"status": "ok"})
        else:
            self._send(404, {"diagnostics": [{"code": "NOT_FOUND", "severity": "error", "message": f"no such endpoint: {self.path}", "line": 1, "col": 1}]})

    def _read_body(self) -> dict | None:
        try:
            length = int(self.headers.get("Content-Length", "0"))
        except ValueError:
            self._bad_request("invalid Content-Length header")
            return None
        raw = self.rfile.read(length)
        try:
            data = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            self._bad_request(f"request body is not valid JSON: {exc}")
            return None
        if not isinstance(data, dict):
            self._bad_request("request body must be a JSON object")
            return None
        return data

    def do_POST(self) -> None:  # noqa: N802
        data = self._read_body()
        if data is None:
            return
        if self.path == "/v1/check":
            script_text = data.get("script_text")
            if not isinstance(script_text, str):
                self._bad_request("field 'script_text' must be a string")
                return
            mode = data.get("mode", "full")
            if mode not in ("full", "prefix"):
                self._bad_request("field 'mode' must be 'full' or 'prefix'")
                return
            self._send(200, handle_check(CheckRequest(script_text, mode), self.size_limit))
        elif self.path == "/v1/parse":
            formula_text = data.get("formula")
            if not isinstance(formula_text, str):
                self._bad_request("field 'formula' must be a string")
                return
            status, payload = handle_parse(formula_text)
            self._send(status, payload)
        else:
            self._send(404, {"diagnostics": [{"code": "NOT_FOUND", "severity": "error", "message": f"no such endpoint: {self.path}", "line": 1, "col": 1}]})


def make_server(addr: str = "127.0.0.1", port: int = 0) -> ThreadingHTTPServer:
    """Bind the service; port 0 picks an ephemeral port (server.server_address)."""
    server = ThreadingHTTPServer((addr, port), _Handler)
    return server


def serve(addr: str = "127.0.0.1", port: int = 7411) -> None:
    server = make_server(addr, port)
    host, bound_port = server.server_address[:2]
    print(f"sqc check service listening on http://{host}:{bound_port}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
