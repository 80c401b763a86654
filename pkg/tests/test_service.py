import json
import threading
import urllib.request

import pytest

from sqc.calculus import ProofState, run_steps
from sqc.parser import parse_script, parse_sequent
from sqc.service import CheckRequest, handle_check, handle_parse, make_server

COMPLETE = "p -> p\n\nAlphaImp\n  ~p\n  p\nExt\n  p\n  ~p\nBasic\n"
PREFIX = "p -> p\n\nAlphaImp\n  ~p\n  p\n"
MISSPELLED = "p -> p\n\nAlphaImp\n  ~p\n  p\nExtt\n  p\n  ~p\nBasic\n"


def test_full_complete():
    resp = handle_check(CheckRequest(COMPLETE, "full"))
    assert resp["status"] == "complete"
    assert resp["open_goals"] == []
    assert resp["steps_validated"] == 3
    assert resp["applicable"] == []
    assert resp["diagnostics"] == []


def test_prefix_after_alphaimp():
    resp = handle_check(CheckRequest(PREFIX, "prefix"))
    assert resp["status"] == "incomplete"
    assert [g["sequent"] for g in resp["open_goals"]] == ["~p, p"]
    assert resp["open_goals"][0]["branch"] == 0
    assert resp["applicable"] == ["Ext"]
    assert resp["steps_validated"] == 1


def test_misspelled_rule_prefix_mode_reports_last_valid_state():
    resp = handle_check(CheckRequest(MISSPELLED, "prefix"))
    assert resp["status"] == "invalid"
    assert [g["sequent"] for g in resp["open_goals"]] == ["~p, p"]
    assert resp["steps_validated"] == 1
    assert any(d["code"] == "UNKNOWN_RULE" for d in resp["diagnostics"])


def test_misspelled_rule_full_mode_is_parse_error():
    resp = handle_check(CheckRequest(MISSPELLED, "full"))
    assert resp["status"] == "parse_error"
    assert resp["open_goals"] == []


def test_invalid_step_full_mode():
    text = "p -> p\n\nAlphaImp\n  p\n  p\n"
    resp = handle_check(CheckRequest(text, "full"))
    assert resp["status"] == "invalid"
    assert resp["steps_validated"] == 0
    diag = resp["diagnostics"][0]
    assert diag["code"] == "RESULT_MISMATCH"
    assert diag["expected"] == "~p, p"
    assert diag["got"] == "p, p"


def test_applicable_nonempty_whenever_goals_nonempty():
    for text in (PREFIX, "p & q\n\nBetaCon\n  p\n+\n  q\n", "p | q\n"):
        resp = handle_check(CheckRequest(text, "prefix"))
        if resp["open_goals"]:
            assert resp["applicable"]


def test_body_too_large():
    resp = handle_check(CheckRequest("p" * 100, "full"), size_limit=10)
    assert resp["status"] == "parse_error"
    assert resp["diagnostics"][0]["code"] == "BODY_TOO_LARGE"


def test_goal_parse_error():
    resp = handle_check(CheckRequest("p -> (\n", "prefix"))
    assert resp["status"] == "parse_error"
    assert resp["steps_validated"] == 0


def test_idempotent():
    a = handle_check(CheckRequest(PREFIX, "prefix"))
    b = handle_check(CheckRequest(PREFIX, "prefix"))
    assert a == b


def test_printed_goals_reparse_to_kernel_goals():
    resp = handle_check(CheckRequest("p & q\n\nBetaCon\n  p\n+\n  q\n", "prefix"))
    outcome = parse_script("p & q\n\nBetaCon\n  p\n+\n  q\n")
    result = run_steps(ProofState.initial(outcome.script.goal), outcome.script.steps)
    kernel_goals = [seq for _, seq in result.state.open_goals]
    assert [parse_sequent(g["sequent"]) for g in resp["open_goals"]] == kernel_goals


def test_prefix_consistency_with_full_check():
    """Goals from a prefix response, re-checked with the rest, match a full run."""
    outcome = parse_script(COMPLETE)
    steps = outcome.script.steps
    full = run_steps(ProofState.initial(outcome.script.goal), steps)
    for k in range(len(steps) + 1):
        prefix_text = "p -> p\n\n" + "".join(
            _step_text(s) for s in steps[:k]
        )
        resp = handle_check(CheckRequest(prefix_text, "prefix"))
        goals = tuple(parse_sequent(g["sequent"]) for g in resp["open_goals"])
        state = ProofState(
            open_goals=tuple((i, seq) for i, seq in enumerate(goals)),
            next_branch_id=len(goals),
        )
        rest = run_steps(state, steps[k:])
        assert rest.failure is None
        assert [seq for _, seq in rest.state.open_goals] == [
            seq for _, seq in full.state.open_goals
        ]


def _step_text(step):
    from sqc.printer import print_script
    from sqc.script import ProofScript
    from sqc.syntax import Pred

    text = print_script(ProofScript(Pred("x_placeholder"), (step,)))
    return text.split("\n\n", 1)[1]


def test_handle_parse_ok():
    status, payload = handle_parse("p ∧ q -> r")
    assert status == 200
    assert payload == {"canonical": "p & q -> r", "diagnostics": []}


def test_handle_parse_error():
    status, payload = handle_parse("p ->")
    assert status == 400
    assert payload["diagnostics"][0]["code"] == "SYNTAX"


# --- HTTP layer -----------------------------------------------------------------


@pytest.fixture(scope="module")
def server_url():
    server = make_server("127.0.0.1", 0)
    host, port = server.server_address[:2]
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://{host}:{port}"
    server.shutdown()
    server.server_close()


def _post(url: str, payload: dict) -> tuple[int, dict]:
    data = json.dumps(payload).encode("utf-8")
    req = urllib.request.Request(
        url, data=data, headers={"Content-Type": "application/json"}
    )
    try:
        with urllib.request.urlopen(req) as resp:
            return resp.status, json.loads(resp.read().decode("utf-8"))
    except urllib.error.HTTPError as exc:
        return exc.code, json.loads(exc.read().decode("utf-8"))


def test_http_health(server_url):
    with urllib.request.urlopen(server_url + "/v1/health") as resp:
        assert resp.status == 200
        assert json.loads(resp.read()) == {"status": "ok"}


def test_http_check_endpoint(server_url):
    status, payload = _post(server_url + "/v1/check", {"script_text": COMPLETE, "mode": "full"})
    assert status == 200
    assert payload == handle_check(CheckRequest(COMPLETE, "full"))


def test_http_check_defaults_to_full_mode(server_url):
    status, payload = _post(server_url + "/v1/check", {"script_text": MISSPELLED})
    assert status == 200
    assert payload["status"] == "parse_error"


def test_http_parse_endpoint(server_url):
    status, payload = _post(server_url + "/v1/parse", {"formula": "p -> q"})
    assert status == 200
    assert payload["canonical"] == "p -> q"
    status, payload = _post(server_url + "/v1/parse", {"formula": "p ->"})
    assert status == 400
    assert payload["diagnostics"]


def test_http_bad_requests_are_400_never_500(server_url):
    import urllib.error

    req = urllib.request.Request(
        server_url + "/v1/check",
        data=b"this is not json",
        headers={"Content-Type": "application/json"},
    )
    try:
        urllib.request.urlopen(req)
        raise AssertionError("expected HTTPError")
    except urllib.error.HTTPError as exc:
        assert exc.code == 400
        assert json.loads(exc.read())["diagnostics"]

    status, payload = _post(server_url + "/v1/check", {"script_text": 42})
    assert status == 400
    status, payload = _post(server_url + "/v1/check", {"script_text": "p", "mode": "bogus"})
    assert status == 400


def test_http_unknown_endpoint_404(server_url):
    status, payload = _post(server_url + "/v1/nope", {})
    assert status == 404
