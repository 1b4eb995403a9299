// Pure render-model derivation: view state is a function of the last
// fetched session JSON and nothing else.

import type {
  DiagonalHistory,
  GameStateJson,
  IntervalHistory,
} from './api.js';

export interface IntervalRoundView {
  n: number;
  a: string;
  b: string;
  approxA: string;
  approxB: string;
  // unit-line fractions for drawing [a_n, b_n]
  left: number;
  right: number;
}

export interface DiagonalRoundView {
  n: number;
  diagonalDigit: number | null;
  aliceDigit: number;
  bobDigit: number;
  zDigit: number;
}

export interface ClientGameView {
  id: string;
  kind: 'interval' | 'diagonal';
  status: string;
  round: number;
  statusLine: string;
  allowedText: string | null;
  intervalRounds: IntervalRoundView[];
  diagonalRounds: DiagonalRoundView[];
  badges: string[];
}

function approxToNumber(text: string): number {
  const v = Number(text);
  return Number.isFinite(v) ? Math.min(1, Math.max(0, v)) : 0;
}

function isIntervalHistory(
  h: IntervalHistory | DiagonalHistory,
): h is IntervalHistory {
  return 'a' in h;
}

export function deriveView(state: GameStateJson): ClientGameView {
  const intervalRounds: IntervalRoundView[] = [];
  const diagonalRounds: DiagonalRoundView[] = [];
  const badges: string[] = [];

  if (state.history && isIntervalHistory(state.history)) {
    const h = state.history;
    for (let i = 0; i < h.b.length; i++) {
      intervalRounds.push({
        n: i + 1,
        a: h.a[i],
        b: h.b[i],
        approxA: h.approx_a[i],
        approxB: h.approx_b[i],
        left: approxToNumber(h.approx_a[i]),
        right: approxToNumber(h.approx_b[i]),
      });
    }
  } else if (state.history) {
    const h = state.history;
    for (let i = 0; i < h.z_digits.length; i++) {
      diagonalRounds.push({
        n: i + 1,
        diagonalDigit: h.diagonal[i],
        aliceDigit: h.a_digits[i],
        bobDigit: h.b_digits[i],
        zDigit: h.z_digits[i],
      });
    }
  }

  if (state.certificate) {
    for (const round of state.certificate.rounds) {
      if (round.reason !== 'vacuous' && round.index !== undefined) {
        badges.push(`round ${round.index} excluded s_${round.index}`);
      }
    }
  }

  const statusLine =
    state.status === 'awaiting_alice'
      ? `round ${state.round}: your move`
      : state.status === 'awaiting_bob'
        ? `round ${state.round}: waiting for Bob`
        : `game ${state.status}`;

  return {
    id: state.id,
    kind: state.kind,
    status: state.status,
    round: state.round,
    statusLine,
    allowedText: state.allowed
      ? `${state.allowed.text} (≈ ${state.allowed.approx.lo} .. ${state.allowed.approx.hi})`
      : null,
    intervalRounds,
    diagonalRounds,
    badges,
  };
}
