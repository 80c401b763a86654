import { CheckBackend, EmbeddedBackend, HttpBackend } from "./backend";
import { EditorSession } from "./session";
import {
  UiRefs,
  downloadScript,
  hideBanner,
  insertAtCursor,
  jumpTo,
  paletteInsertion,
  renderDiagnostics,
  renderGoals,
  renderHighlights,
  setStaleness,
  showBanner,
} from "./ui";

function refs(): UiRefs {
  const get = (id: string) => {
    const node = document.getElementById(id);
    if (!node) throw new Error(`missing element #${id}`);
    return node;
  };
  return {
    editor: get("editor") as HTMLTextAreaElement,
    highlight: get("highlight"),
    goals: get("goals"),
    palette: get("palette"),
    diagnostics: get("diagnostics"),
    status: get("status"),
    staleness: get("staleness"),
    banner: get("banner"),
  };
}

function boot(): void {
  const ui = refs();
  const params = new URLSearchParams(window.location.search);

  // Fully offline by default; an explicit ?endpoint=http://127.0.0.1:7411
  // switches to the local check service with the identical JSON schema.
  const endpoint = params.get("endpoint");
  const backend: CheckBackend = endpoint ? new HttpBackend(endpoint) : new EmbeddedBackend();

  const session = new EditorSession(backend, {
    onResponse: (resp) => {
      hideBanner(ui);
      renderGoals(ui, resp, (rule) => {
        // palette clicks insert text only; the student writes the result
        insertAtCursor(ui.editor, paletteInsertion(rule));
        session.onEdit(ui.editor.value);
      });
      renderDiagnostics(ui, resp.diagnostics, (line, col) => jumpTo(ui.editor, line, col));
      renderHighlights(ui, resp.diagnostics);
    },
    onError: () => {
      showBanner(ui, `Cannot reach the check service (${backend.label}).`, () =>
        session.checkNow(),
      );
    },
    onStaleness: (stale) => setStaleness(ui, stale),
  });

  ui.editor.addEventListener("input", () => session.onEdit(ui.editor.value));
  ui.editor.addEventListener("scroll", () => {
    ui.highlight.scrollTop = ui.editor.scrollTop;
    ui.highlight.scrollLeft = ui.editor.scrollLeft;
  });

  const openInput = document.getElementById("open-file") as HTMLInputElement;
  openInput.addEventListener("change", async () => {
    const file = openInput.files?.[0];
    if (!file) return;
    ui.editor.value = await file.text();
    session.onEdit(ui.editor.value);
    openInput.value = "";
  });
  document.getElementById("save-file")?.addEventListener("click", () => {
    downloadScript("proof.sqc", ui.editor.value);
  });

  // optional problem preset: ?formula=p -> p
  const preset = params.get("formula");
  if (preset) {
    ui.editor.value = preset + "\n\n";
    session.onEdit(ui.editor.value);
  } else if (ui.editor.value) {
    session.onEdit(ui.editor.value);
  }
}

boot();
