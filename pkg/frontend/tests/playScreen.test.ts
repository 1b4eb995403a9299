import { beforeEach, describe, expect, it } from 'vitest';

import { ForgeClient, GameStateJson } from '../src/api.js';
import { PlayScreen } from '../src/playScreen.js';
import { deriveView } from '../src/view.js';
import { FakeService } from './fakeService.js';

import newGame from './fixtures/newgame.json';
import afterMove from './fixtures/after_move1.json';
import rejected from './fixtures/rejected_move.json';

function makeScreen(service: FakeService): PlayScreen {
  const root = document.createElement('div');
  document.body.appendChild(root);
  const client = new ForgeClient('', service.fetch);
  return new PlayScreen(root, client, 'interval', 'rationals_01');
}

describe('interception', () => {
  let service: FakeService;
  let screen: PlayScreen;

  beforeEach(async () => {
    document.body.innerHTML = '';
    service = new FakeService();
    screen = makeScreen(service);
    await screen.start();
    screen.stop();
  });

  it('every client-accepted move was accepted by the service', async () => {
    // mix of legal midpoints and deliberate violations
    const attempts = ['1/2', '1/3', '2/3', '2/3', '17/24', '9/8', '43/60'];
    for (const value of attempts) {
      await screen.submit(value).catch(() => undefined);
    }
    const serviceAccepted = service.verdicts
      .filter((v) => v.accepted)
      .map((v) => v.value);
    expect(screen.acceptedMoves.map((m) => String(m.value))).toEqual(
      serviceAccepted,
    );
    // and the client rejected exactly what the service rejected
    expect(screen.acceptedMoves.length).toBeLessThan(attempts.length);
    expect(screen.acceptedMoves.length +
      service.verdicts.filter((v) => !v.accepted).length).toBe(attempts.length);
  });

  it('a rejected move never mutates the board', async () => {
    await screen.submit('1/2');
    const before = screen.root.querySelector('.board')!.innerHTML;
    await screen.submit('1/3'); // now illegal: must exceed 1/2
    expect(screen.root.querySelector('.board')!.innerHTML).toBe(before);
  });

  it('renders the service exact inequality message verbatim', async () => {
    await screen.submit('1/2');
    await screen.submit('1/3');
    const error = screen.root.querySelector('.error')!;
    expect(error.textContent).toBe('a_2 = 1/3 violates a_2 in (1/2,3/4)');
    // matches the real service's wording byte for byte
    expect(error.textContent).toBe(rejected.body.message);
  });

  it('clears the error once a legal move lands', async () => {
    await screen.submit('3/2');
    expect(screen.root.querySelector('.error')!.textContent).not.toBe('');
    await screen.submit('1/2');
    expect(screen.root.querySelector('.error')!.textContent).toBe('');
  });
});

describe('snapshot rendering', () => {
  it('view state is a pure function of the session JSON', () => {
    const state = afterMove as unknown as GameStateJson;
    const first = deriveView(state);
    const second = deriveView(JSON.parse(JSON.stringify(state)));
    expect(second).toEqual(first);
  });

  it('derives number-line rounds from the real service shape', () => {
    const view = deriveView(afterMove as unknown as GameStateJson);
    expect(view.intervalRounds).toHaveLength(1);
    expect(view.intervalRounds[0].a).toBe('1/2');
    expect(view.intervalRounds[0].b).toBe('3/4');
    expect(view.allowedText).toContain('(1/2,3/4)');
  });

  it('fresh games render an empty board and the unit interval', () => {
    const view = deriveView(newGame as unknown as GameStateJson);
    expect(view.intervalRounds).toHaveLength(0);
    expect(view.allowedText).toContain('(0,1)');
    expect(view.statusLine).toBe('round 1: your move');
  });

  it('polling re-renders only when the fetched JSON changes', async () => {
    const service = new FakeService();
    const screen = makeScreen(service);
    await screen.start();
    screen.stop();
    await screen.submit('1/2');
    const snapshot = screen.lastState;
    await screen.pollOnce();
    expect(screen.lastState).toEqual(snapshot);
    expect(screen.root.querySelector('.status')!.textContent).toBe(
      'round 2: your move',
    );
  });
});
