import { Api, ServiceError } from "./api.js";
import { render, type Handlers } from "./render.js";
import type { UiState } from "./types.js";

const SESSION_KEY = "outofturn.session";

// One controller per mounted page. All state comes back from the server;
// reloading and re-fetching the render model reproduces the identical view.
export class App {
  state: UiState = { model: null, lastReport: null, lastHelp: null, pairs: [], error: null };
  sessionId: string | null = null;

  constructor(
    private root: HTMLElement,
    private api: Api,
    private storage: Pick<Storage, "getItem" | "setItem" | "removeItem"> | null = null,
  ) {}

  async mount(): Promise<void> {
    const remembered = this.storage?.getItem(SESSION_KEY) ?? null;
    if (remembered) {
      try {
        this.state.model = await this.api.renderModel(remembered);
        this.sessionId = remembered;
        this.draw();
        return;
      } catch {
        this.storage?.removeItem(SESSION_KEY);
      }
    }
    const { pairs } = await this.api.datasets();
    this.state.pairs = pairs;
    this.draw();
  }

  private handlers(): Handlers {
    return {
      onStart: (dataset, spec) => void this.start(dataset, spec),
      onClickLink: (slot, value) => void this.click(slot, value),
      onSay: (text) => void this.say(text),
      onYes: () => void this.say("yes"),
      onNo: () => void this.say("no"),
      onShowResults: () => void this.say("show me results"),
      onHelp: () => void this.say("what may i say"),
      onRestart: () => void this.restart(),
    };
  }

  async start(dataset: string, spec: string): Promise<void> {
    await this.guard(async () => {
      const created = await this.api.createSession(dataset, spec);
      this.sessionId = created.session_id;
      this.storage?.setItem(SESSION_KEY, created.session_id);
      this.state.model = created.render_model;
      this.state.lastReport = null;
      this.state.lastHelp = null;
    });
  }

  async say(text: string): Promise<void> {
    if (!this.sessionId) return;
    await this.guard(async () => {
      const response = await this.api.say(this.sessionId!, text);
      this.state.model = response.render_model;
      this.state.lastReport = response.report;
      this.state.lastHelp = response.report.help;
    });
  }

  async click(slot: string, value: string): Promise<void> {
    if (!this.sessionId) return;
    await this.guard(async () => {
      const response = await this.api.click(this.sessionId!, slot, value);
      this.state.model = response.render_model;
      this.state.lastReport = response.report;
      this.state.lastHelp = null;
    });
  }

  async restart(): Promise<void> {
    if (this.sessionId) {
      await this.api.deleteSession(this.sessionId).catch(() => undefined);
    }
    this.sessionId = null;
    this.storage?.removeItem(SESSION_KEY);
    this.state = { model: null, lastReport: null, lastHelp: null, pairs: [], error: null };
    await this.mount();
  }

  private async guard(action: () => Promise<void>): Promise<void> {
    try {
      this.state.error = null;
      await action();
    } catch (error) {
      if (error instanceof ServiceError) {
        this.state.error = `${error.code}: ${error.message}`;
      } else {
        this.state.error = String(error);
      }
    }
    this.draw();
  }

  private draw(): void {
    render(this.root, this.state, this.handlers());
  }
}

export async function mountApp(
  root: HTMLElement,
  api: Api = new Api(),
  storage: Pick<Storage, "getItem" | "setItem" | "removeItem"> | null = null,
): Promise<App> {
  const app = new App(root, api, storage);
  await app.mount();
  return app;
}
