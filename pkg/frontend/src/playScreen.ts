// Interval and diagonal game boards.
//
// The board is a snapshot rendering of the last session JSON fetched from
// the service; no game rule is evaluated client-side.  Moves go straight
// to the service and only its verdict decides acceptance.

import { ForgeClient, GameStateJson, ServiceError } from './api.js';
import { deriveView } from './view.js';

export const POLL_INTERVAL_MS = 1000;

export interface AcceptedMove {
  role: 'alice' | 'bob';
  value: string | number;
}

export class PlayScreen {
  readonly root: HTMLElement;
  readonly client: ForgeClient;
  readonly kind: 'interval' | 'diagonal';

  gameId: string | null = null;
  lastState: GameStateJson | null = null;
  // every move the client treated as accepted; each entry corresponds to a
  // 200 response from the service (checked by the interception test)
  acceptedMoves: AcceptedMove[] = [];

  private enumSpec: unknown;
  private timer: ReturnType<typeof setInterval> | null = null;
  // at most one in-flight mutation; later submissions queue behind it
  private mutationQueue: Promise<void> = Promise.resolve();

  constructor(
    root: HTMLElement,
    client: ForgeClient,
    kind: 'interval' | 'diagonal',
    enumSpec: unknown,
  ) {
    this.root = root;
    this.client = client;
    this.kind = kind;
    this.enumSpec = enumSpec;
    this.renderShell();
  }

  async start(): Promise<void> {
    const state = await this.client.createGame({
      kind: this.kind,
      enum: this.enumSpec,
    });
    this.gameId = state.id;
    this.render(state);
    this.timer = setInterval(() => void this.pollOnce(), POLL_INTERVAL_MS);
  }

  stop(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }

  async pollOnce(): Promise<void> {
    if (this.gameId === null) return;
    try {
      const state = await this.client.getGame(this.gameId);
      if (JSON.stringify(state) !== JSON.stringify(this.lastState)) {
        this.render(state);
      }
    } catch {
      // transient fetch failure: keep the last snapshot on screen
    }
  }

  submit(raw: string): Promise<void> {
    const queued = this.mutationQueue.then(() => this.sendMove(raw));
    this.mutationQueue = queued.catch(() => undefined);
    return queued;
  }

  private async sendMove(raw: string): Promise<void> {
    if (this.gameId === null) return;
    const value = this.kind === 'interval' ? raw.trim() : Number(raw);
    try {
      const state = await this.client.postMove(this.gameId, 'alice', value);
      this.acceptedMoves.push({ role: 'alice', value });
      this.setError('');
      this.render(state);
    } catch (err) {
      if (err instanceof ServiceError) {
        // the service's exact inequality message, verbatim
        this.setError(err.message);
        return;
      }
      throw err;
    }
  }

  private renderShell(): void {
    this.root.innerHTML = `
      <div class="status"></div>
      <div class="allowed"></div>
      <div class="board"></div>
      <div class="badges"></div>
      <form class="move-form">
        <input class="move-input" type="text" />
        <button type="submit">play</button>
      </form>
      <div class="error" role="alert"></div>
    `;
    const form = this.root.querySelector('.move-form') as HTMLFormElement;
    form.addEventListener('submit', (event) => {
      event.preventDefault();
      const input = this.root.querySelector('.move-input') as HTMLInputElement;
      void this.submit(input.value);
    });
  }

  private setError(message: string): void {
    const el = this.root.querySelector('.error') as HTMLElement;
    el.textContent = message;
  }

  private render(state: GameStateJson): void {
    this.lastState = state;
    const view = deriveView(state);
    (this.root.querySelector('.status') as HTMLElement).textContent =
      view.statusLine;
    (this.root.querySelector('.allowed') as HTMLElement).textContent =
      view.allowedText ?? '';
    const board = this.root.querySelector('.board') as HTMLElement;
    board.innerHTML =
      view.kind === 'interval'
        ? this.intervalBoard(view.intervalRounds)
        : this.diagonalBoard(view.diagonalRounds);
    const badges = this.root.querySelector('.badges') as HTMLElement;
    badges.innerHTML = view.badges
      .map((text) => `<span class="badge">${text}</span>`)
      .join('');
  }

  private intervalBoard(
    rounds: ReturnType<typeof deriveView>['intervalRounds'],
  ): string {
    // one number line per round, [a_n, b_n] drawn as a shrinking bar
    return rounds
      .map((r) => {
        const left = (r.left * 100).toFixed(2);
        const width = Math.max(0.5, (r.right - r.left) * 100).toFixed(2);
        return `
          <div class="line" data-round="${r.n}">
            <span class="label">[a_${r.n}, b_${r.n}] = [${r.a}, ${r.b}] (≈ ${r.approxA} .. ${r.approxB})</span>
            <div class="track"><div class="bar" style="left:${left}%;width:${width}%"></div></div>
          </div>`;
      })
      .join('');
  }

  private diagonalBoard(
    rounds: ReturnType<typeof deriveView>['diagonalRounds'],
  ): string {
    const cells = rounds
      .map(
        (r) => `
        <tr data-round="${r.n}">
          <td>${r.n}</td>
          <td class="diag">${r.diagonalDigit ?? '·'}</td>
          <td>${r.aliceDigit}</td>
          <td>${r.bobDigit}</td>
          <td class="z">${r.zDigit}</td>
        </tr>`,
      )
      .join('');
    return `
      <table class="digit-grid">
        <thead><tr><th>n</th><th>s_n,n</th><th>a_n</th><th>b_n</th><th>z_n</th></tr></thead>
        <tbody>${cells}</tbody>
      </table>`;
  }
}
