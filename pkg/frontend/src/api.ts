// Typed client for the diagonal-forge JSON service.
//
// Every judgment about legality or validity comes back from the service;
// this module only moves JSON and surfaces the service's exact messages.

export interface IntervalJson {
  text: string;
  lo: string;
  hi: string;
  kind: string;
  approx: { lo: string; hi: string };
}

export interface IntervalHistory {
  a: string[];
  b: string[];
  approx_a: string[];
  approx_b: string[];
}

export interface DiagonalHistory {
  a_digits: number[];
  b_digits: number[];
  z_digits: number[];
  diagonal: (number | null)[];
}

export interface GameStateJson {
  id: string;
  kind: 'interval' | 'diagonal';
  status: string;
  round: number;
  bob: string;
  enum: unknown;
  moves: [string, string | number][];
  history?: IntervalHistory | DiagonalHistory;
  allowed?: IntervalJson;
  certificate?: CertificateJson;
  result?: ResultJson;
}

export interface RoundJson {
  reason: string;
  index?: number;
  point?: string;
  witness?: IntervalJson;
  digit_position?: number;
  term_index?: number;
}

export interface CertificateJson {
  rounds: RoundJson[];
  early_termination: boolean;
  enclosure?: IntervalJson;
  claimed_depth?: number;
  witness_point?: string;
  meta?: Record<string, unknown>;
}

export interface ResultJson {
  type: 'nested' | 'stream' | 'cauchy';
  chain?: { lo: string; hi: string; kind: string; text: string }[];
  digits?: number[];
  base?: number;
  terms?: string[];
  [key: string]: unknown;
}

export interface ConstructResponse {
  id: string;
  method: string;
  result: ResultJson;
  certificate: CertificateJson;
  verified: boolean;
  enclosure?: IntervalJson;
  eta?: { value: string; approx: string };
}

export interface VerifyResponse {
  ok: boolean;
  failure?: string;
}

export interface ServiceErrorBody {
  code: string;
  message: string;
  witness?: string;
  [key: string]: unknown;
}

export class ServiceError extends Error {
  code: string;
  status: number;
  body: ServiceErrorBody;

  constructor(status: number, body: ServiceErrorBody) {
    super(body.message);
    this.name = 'ServiceError';
    this.code = body.code;
    this.status = status;
    this.body = body;
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ForgeClient {
  private baseUrl: string;
  private fetchImpl: FetchLike;

  constructor(baseUrl = '', fetchImpl?: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/$/, '');
    this.fetchImpl = fetchImpl ?? ((url, init) => fetch(url, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, init);
    const body = await response.json();
    if (!response.ok) {
      throw new ServiceError(response.status, body as ServiceErrorBody);
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(payload),
    });
  }

  createGame(payload: {
    kind: string;
    enum: unknown;
    bob?: string;
    alice?: string;
    rounds?: number;
  }): Promise<GameStateJson> {
    return this.post('/games', payload);
  }

  getGame(id: string): Promise<GameStateJson> {
    return this.request(`/games/${id}`);
  }

  postMove(
    id: string,
    role: 'alice' | 'bob',
    value: string | number | null,
  ): Promise<GameStateJson> {
    return this.post(`/games/${id}/moves`, { role, value });
  }

  construct(payload: {
    method: string;
    enum?: unknown;
    depth?: number;
    base?: number;
    bounds?: string;
    oracle?: string;
    reals?: string[][];
  }): Promise<ConstructResponse> {
    return this.post('/construct', payload);
  }

  auditSession(id: string): Promise<VerifyResponse> {
    return this.request(`/construct/${id}/verify`);
  }

  verify(payload: {
    result: ResultJson;
    certificate: CertificateJson;
    enum?: unknown;
    reals?: string[][];
    depth?: number;
  }): Promise<VerifyResponse> {
    return this.post('/verify', payload);
  }
}
