// DOM wiring: goals panel, rule palette, diagnostics with line highlights,
// connection banner, staleness badge, and .sqc open/save.

import { CheckResponse, DiagnosticPayload } from "./core/check";

export interface UiRefs {
  editor: HTMLTextAreaElement;
  highlight: HTMLElement;
  goals: HTMLElement;
  palette: HTMLElement;
  diagnostics: HTMLElement;
  status: HTMLElement;
  staleness: HTMLElement;
  banner: HTMLElement;
}

function el(tag: string, className: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

/** Insert text at the cursor and keep focus in the editor. */
export function insertAtCursor(editor: HTMLTextAreaElement, text: string): void {
  const start = editor.selectionStart ?? editor.value.length;
  const end = editor.selectionEnd ?? start;
  editor.value = editor.value.slice(0, start) + text + editor.value.slice(end);
  const cursor = start + text.length;
  editor.setSelectionRange(cursor, cursor);
  editor.focus();
}

/** The text a palette click inserts: the rule name plus an indented stub. */
export function paletteInsertion(rule: string): string {
  return `${rule}\n  `;
}

export function renderGoals(
  refs: UiRefs,
  resp: CheckResponse,
  onPaletteClick: (rule: string) => void,
): void {
  refs.goals.replaceChildren();
  if (resp.status === "complete") {
    const card = el("div", "goal-card complete-card");
    card.append(el("div", "goal-title", "Proof complete 🎉"));
    card.append(el("div", "goal-body", "Every branch is closed."));
    refs.goals.append(card);
  } else {
    resp.open_goals.forEach((goal, index) => {
      const card = el("div", index === 0 ? "goal-card active" : "goal-card");
      card.append(el("div", "goal-title", `Branch ${goal.branch}${index === 0 ? " · active" : ""}`));
      card.append(el("div", "goal-body", goal.sequent));
      refs.goals.append(card);
    });
  }

  refs.palette.replaceChildren();
  for (const rule of resp.applicable) {
    const button = el("button", "palette-button", rule) as HTMLButtonElement;
    button.type = "button";
    button.addEventListener("click", () => onPaletteClick(rule));
    refs.palette.append(button);
  }

  const badge: Record<CheckResponse["status"], string> = {
    complete: "Complete",
    incomplete: "Incomplete",
    invalid: "Invalid",
    parse_error: "Parse error",
  };
  refs.status.textContent = badge[resp.status];
  refs.status.className = `status-badge status-${resp.status}`;
}

export function renderDiagnostics(
  refs: UiRefs,
  diagnostics: DiagnosticPayload[],
  onJump: (line: number, col: number) => void,
): void {
  refs.diagnostics.replaceChildren();
  for (const d of diagnostics) {
    const row = el("div", `diagnostic ${d.severity}`);
    row.append(el("span", "diagnostic-pos", `${d.line}:${d.col}`));
    const text = el("span", "diagnostic-message", ` ${d.message}`);
    row.append(text);
    if (d.expected !== undefined || d.got !== undefined) {
      const detail = el("div", "diagnostic-detail");
      if (d.expected !== undefined) detail.append(el("div", "", `expected: ${d.expected}`));
      if (d.got !== undefined) detail.append(el("div", "", `got:      ${d.got}`));
      row.append(detail);
    }
    row.addEventListener("click", () => onJump(d.line, d.col));
    refs.diagnostics.append(row);
  }
}

/** Per-line overlay behind the textarea: squiggle-style error underlines. */
export function renderHighlights(refs: UiRefs, diagnostics: DiagnosticPayload[]): void {
  const lines = refs.editor.value.split("\n");
  const errorLines = new Set(
    diagnostics.filter((d) => d.severity === "error").map((d) => d.line),
  );
  refs.highlight.replaceChildren();
  lines.forEach((text, index) => {
    const line = el(
      "div",
      errorLines.has(index + 1) ? "hl-line hl-error" : "hl-line",
      text.length > 0 ? text : " ",
    );
    refs.highlight.append(line);
  });
  refs.highlight.scrollTop = refs.editor.scrollTop;
  refs.highlight.scrollLeft = refs.editor.scrollLeft;
}

export function showBanner(refs: UiRefs, message: string, onRetry: () => void): void {
  refs.banner.replaceChildren();
  refs.banner.append(el("span", "", message + " "));
  const retry = el("button", "banner-retry", "Retry") as HTMLButtonElement;
  retry.type = "button";
  retry.addEventListener("click", onRetry);
  refs.banner.append(retry);
  refs.banner.classList.remove("hidden");
}

export function hideBanner(refs: UiRefs): void {
  refs.banner.classList.add("hidden");
}

export function setStaleness(refs: UiRefs, stale: boolean): void {
  refs.staleness.classList.toggle("hidden", !stale);
}

export function jumpTo(editor: HTMLTextAreaElement, line: number, col: number): void {
  const lines = editor.value.split("\n");
  let offset = 0;
  for (let i = 0; i < Math.min(line - 1, lines.length); i++) {
    offset += lines[i].length + 1;
  }
  offset += Math.max(0, col - 1);
  editor.setSelectionRange(offset, offset);
  editor.focus();
}

export function downloadScript(name: string, text: string): void {
  const blob = new Blob([text], { type: "text/plain;charset=utf-8" });
  const url = URL.createObjectURL(blob);
  const link = document.createElement("a");
  link.href = url;
  link.download = name;
  link.click();
  URL.revokeObjectURL(url);
}
