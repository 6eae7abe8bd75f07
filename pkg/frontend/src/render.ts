import type { Notification, UiState } from "./types.js";

// Everything the page can ask the controller to do. The render layer only
// draws the last server response and forwards events.
export interface Handlers {
  onStart(dataset: string, spec: string): void;
  onClickLink(slot: string, value: string): void;
  onSay(text: string): void;
  onYes(): void;
  onNo(): void;
  onShowResults(): void;
  onHelp(): void;
  onRestart(): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function noticeText(note: Notification): string {
  switch (note.kind) {
    case "auto_filled":
      return `Filled in for you: ${note.slot} = ${note.value}.`;
    case "removed_slot":
      return `No need to ask for ${note.slot} any more.`;
    case "removed_values":
      return `${note.slot}: ${(note.values ?? []).join(", ")} no longer applies.`;
    case "rejected":
      return `Could not use "${note.phrase}": ${note.reason}.`;
    case "ignored":
      return `Ignored: ${(note.fragments ?? []).join(" ")}.`;
    case "confirmed":
      return `Confirmed ${note.slot} = ${note.value}.`;
    case "rolled_back":
      return `Took back ${note.slot} = ${note.value}.`;
    case "results_requested":
      return "Dialog ended at your request.";
    default:
      return note.kind;
  }
}

export function render(root: HTMLElement, state: UiState, handlers: Handlers): void {
  const doc = root.ownerDocument;
  root.textContent = "";
  const page = el(doc, "div", "page");
  root.appendChild(page);

  if (state.error) {
    const banner = el(doc, "div", "error", state.error);
    banner.setAttribute("role", "alert");
    page.appendChild(banner);
  }

  if (!state.model) {
    renderStart(page, state, handlers);
    return;
  }
  const model = state.model;

  if (model.breadcrumb.length) {
    const trail = el(doc, "nav", "breadcrumb");
    for (const crumb of model.breadcrumb) {
      const item = el(doc, "span", `crumb crumb-${crumb.source}`, `${crumb.slot}: ${crumb.label}`);
      item.title = crumb.source === "auto" ? "filled automatically" : "your answer";
      trail.appendChild(item);
    }
    page.appendChild(trail);
  }

  if (model.notifications.length) {
    const list = el(doc, "ul", "notifications");
    for (const note of model.notifications) {
      list.appendChild(el(doc, "li", `note note-${note.kind}`, noticeText(note)));
    }
    page.appendChild(list);
  }

  if (state.lastHelp) {
    const help = el(doc, "div", "help");
    help.appendChild(el(doc, "h2", undefined, "You may say"));
    const list = el(doc, "ul");
    for (const entry of state.lastHelp.slots) {
      list.appendChild(el(doc, "li", "help-slot", `${entry.slot}: ${entry.values.join(", ")}`));
    }
    list.appendChild(el(doc, "li", "help-reserved", `anytime: ${state.lastHelp.reserved.join(" / ")}`));
    help.appendChild(list);
    page.appendChild(help);
  }

  if (model.pending_confirmation) {
    const pending = el(doc, "div", "confirm");
    pending.appendChild(el(doc, "p", "prompt", model.pending_confirmation.prompt));
    const yes = el(doc, "button", "yes", "Yes");
    yes.addEventListener("click", () => handlers.onYes());
    const no = el(doc, "button", "no", "No");
    no.addEventListener("click", () => handlers.onNo());
    pending.append(yes, no);
    page.appendChild(pending);
    return;
  }

  if (model.status === "complete") {
    page.appendChild(el(doc, "h1", "done", "The dialog is complete."));
    const results = el(doc, "table", "results");
    for (const record of model.results ?? []) {
      const row = el(doc, "tr", "result");
      row.appendChild(el(doc, "td", "result-name", record.name));
      row.appendChild(el(doc, "td", "result-blurb", record.attrs["blurb"] ?? ""));
      results.appendChild(row);
    }
    page.appendChild(results);
    const again = el(doc, "button", "restart", "Start over");
    again.addEventListener("click", () => handlers.onRestart());
    page.appendChild(again);
    return;
  }

  const solicitation = model.solicitation;
  if (solicitation) {
    page.appendChild(el(doc, "h1", "prompt", solicitation.prompt));
    const links = el(doc, "ul", "links");
    for (const link of solicitation.offered) {
      const item = el(doc, "li");
      const anchor = el(doc, "a", "value-link", link.label);
      anchor.href = "#";
      anchor.dataset.slot = solicitation.slot;
      anchor.dataset.value = link.value;
      anchor.addEventListener("click", (event) => {
        event.preventDefault();
        handlers.onClickLink(solicitation.slot, link.value);
      });
      item.appendChild(anchor);
      links.appendChild(item);
    }
    page.appendChild(links);
  }

  if (model.out_of_turn.hint) {
    page.appendChild(el(doc, "p", "out-of-turn", model.out_of_turn.hint));
  }

  const sayForm = el(doc, "form", "say-form");
  const box = el(doc, "input", "say-box");
  box.type = "text";
  box.placeholder = "Say something (typed speech)";
  box.setAttribute("aria-label", "say");
  const submit = el(doc, "button", "say-submit", "Say");
  submit.type = "submit";
  sayForm.append(box, submit);
  sayForm.addEventListener("submit", (event) => {
    event.preventDefault();
    if (box.value.trim()) handlers.onSay(box.value);
  });
  page.appendChild(sayForm);

  const toolbar = el(doc, "div", "toolbar");
  const results = el(doc, "button", "show-results", "Show me results");
  results.addEventListener("click", () => handlers.onShowResults());
  const help = el(doc, "button", "what-may-i-say", "What may I say?");
  help.addEventListener("click", () => handlers.onHelp());
  toolbar.append(results, help);
  page.appendChild(toolbar);
}

function renderStart(page: HTMLElement, state: UiState, handlers: Handlers): void {
  const doc = page.ownerDocument;
  page.appendChild(el(doc, "h1", undefined, "Pick a collection to explore"));
  const list = el(doc, "ul", "pairs");
  for (const pair of state.pairs) {
    const item = el(doc, "li");
    const button = el(doc, "button", "pair", `${pair.dataset} / ${pair.spec}`);
    button.dataset.dataset = pair.dataset;
    button.dataset.spec = pair.spec;
    button.addEventListener("click", () => handlers.onStart(pair.dataset, pair.spec));
    item.appendChild(button);
    list.appendChild(item);
  }
  page.appendChild(list);
}
