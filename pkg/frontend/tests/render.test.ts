import { beforeEach, describe, expect, it } from "vitest";

import { render, type Handlers } from "../src/render";
import type { RenderModel, UiState } from "../src/types";

function blankState(): UiState {
  return { model: null, lastReport: null, lastHelp: null, pairs: [], error: null };
}

function congressModel(): RenderModel {
  return {
    status: "in_progress",
    solicitation: {
      slot: "house",
      prompt: "Welcome. Are you looking for a Senator or a Representative?",
      offered: [
        { value: "senator", label: "Senator" },
        { value: "representative", label: "Representative" },
      ],
    },
    out_of_turn: { slots: ["party", "state"], hint: "You may also say: party, state." },
    breadcrumb: [],
    notifications: [],
    pending_confirmation: null,
    results: null,
  };
}

function recordingHandlers(calls: string[]): Handlers {
  return {
    onStart: (d, s) => calls.push(`start:${d}/${s}`),
    onClickLink: (slot, value) => calls.push(`click:${slot}=${value}`),
    onSay: (text) => calls.push(`say:${text}`),
    onYes: () => calls.push("yes"),
    onNo: () => calls.push("no"),
    onShowResults: () => calls.push("results"),
    onHelp: () => calls.push("help"),
    onRestart: () => calls.push("restart"),
  };
}

describe("render", () => {
  let root: HTMLElement;
  let calls: string[];

  beforeEach(() => {
    document.body.innerHTML = '<div id="app"></div>';
    root = document.getElementById("app")!;
    calls = [];
  });

  it("draws solicitation prompt, value links, and the out-of-turn hint", () => {
    const state = { ...blankState(), model: congressModel() };
    render(root, state, recordingHandlers(calls));
    expect(root.querySelector("h1.prompt")!.textContent).toContain("Senator or a Representative");
    const labels = [...root.querySelectorAll(".value-link")].map((a) => a.textContent);
    expect(labels).toEqual(["Senator", "Representative"]);
    expect(root.querySelector(".out-of-turn")!.textContent).toContain("You may also say: party, state.");
  });

  it("clicking a value link reports the slot/value pair", () => {
    const state = { ...blankState(), model: congressModel() };
    render(root, state, recordingHandlers(calls));
    const link = root.querySelector<HTMLAnchorElement>('.value-link[data-value="senator"]')!;
    link.dispatchEvent(new MouseEvent("click", { bubbles: true, cancelable: true }));
    expect(calls).toEqual(["click:house=senator"]);
  });

  it("submitting the say box forwards the text", () => {
    const state = { ...blankState(), model: congressModel() };
    render(root, state, recordingHandlers(calls));
    const box = root.querySelector<HTMLInputElement>(".say-box")!;
    box.value = "Indiana";
    root.querySelector("form.say-form")!.dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
    expect(calls).toEqual(["say:Indiana"]);
  });

  it("renders breadcrumbs with auto fills marked and notifications spelled out", () => {
    const model = congressModel();
    model.breadcrumb = [
      { slot: "house", value: "senator", label: "Senator", source: "user" },
      { slot: "seat", value: "junior", label: "Junior", source: "auto" },
    ];
    model.notifications = [
      { kind: "removed_values", slot: "party", values: ["independent"] },
      { kind: "rejected", phrase: "scrambled", reason: "SlotNotLegal" },
    ];
    render(root, { ...blankState(), model }, recordingHandlers(calls));
    expect(root.querySelectorAll(".crumb").length).toBe(2);
    expect(root.querySelector(".crumb-auto")!.textContent).toContain("Junior");
    const notes = [...root.querySelectorAll(".note")].map((n) => n.textContent);
    expect(notes[0]).toContain("independent");
    expect(notes[1]).toContain("SlotNotLegal");
  });

  it("shows yes/no controls while a confirmation is pending", () => {
    const model = congressModel();
    model.pending_confirmation = { slot: "bakery", value: "bagel", prompt: "You said 'Bagel'. Say yes or no." };
    render(root, { ...blankState(), model }, recordingHandlers(calls));
    expect(root.querySelector(".confirm .prompt")!.textContent).toContain("yes or no");
    expect(root.querySelectorAll(".say-form").length).toBe(0);
    root.querySelector<HTMLButtonElement>("button.yes")!.click();
    root.querySelector<HTMLButtonElement>("button.no")!.click();
    expect(calls).toEqual(["yes", "no"]);
  });

  it("renders the completion page with the leaf records", () => {
    const model = congressModel();
    model.status = "complete";
    model.solicitation = null;
    model.out_of_turn = { slots: [], hint: null };
    model.results = [
      { id: "r3", name: "Richard Lugar", attrs: { blurb: "First elected in 1976." } },
    ];
    render(root, { ...blankState(), model }, recordingHandlers(calls));
    expect(root.querySelector("h1.done")!.textContent).toBe("The dialog is complete.");
    expect(root.querySelector(".result-name")!.textContent).toBe("Richard Lugar");
    expect(root.querySelector(".result-blurb")!.textContent).toContain("1976");
  });

  it("renders the start page from dataset pairs", () => {
    const state = blankState();
    state.pairs = [
      { dataset: "congress", spec: "congress" },
      { dataset: "cars", spec: "fuel" },
    ];
    render(root, state, recordingHandlers(calls));
    const buttons = root.querySelectorAll<HTMLButtonElement>("button.pair");
    expect(buttons.length).toBe(2);
    buttons[1].click();
    expect(calls).toEqual(["start:cars/fuel"]);
  });

  it("surfaces service errors in a banner", () => {
    const state = { ...blankState(), model: congressModel(), error: "StaleLink: gone" };
    render(root, state, recordingHandlers(calls));
    expect(root.querySelector(".error")!.textContent).toBe("StaleLink: gone");
  });
});
