import { describe, expect, it } from 'vitest';

import { ForgeClient, ServiceError } from '../src/api.js';

function stub(status: number, body: unknown) {
  const calls: { url: string; init?: RequestInit }[] = [];
  const fetchImpl = async (url: string, init?: RequestInit) => {
    calls.push({ url, init });
    return new Response(JSON.stringify(body), { status });
  };
  return { calls, fetchImpl };
}

describe('ForgeClient', () => {
  it('joins the base url without double slashes', async () => {
    const { calls, fetchImpl } = stub(200, { id: 'g1' });
    const client = new ForgeClient('http://localhost:8341/', fetchImpl);
    await client.getGame('g1');
    expect(calls[0].url).toBe('http://localhost:8341/games/g1');
  });

  it('posts JSON bodies with the content type set', async () => {
    const { calls, fetchImpl } = stub(200, { id: 'g1' });
    const client = new ForgeClient('', fetchImpl);
    await client.postMove('g1', 'alice', '1/2');
    const init = calls[0].init!;
    expect(init.method).toBe('POST');
    expect(JSON.parse(String(init.body))).toEqual({
      role: 'alice',
      value: '1/2',
    });
  });

  it('raises ServiceError carrying the structured body', async () => {
    const body = {
      code: 'illegal-move',
      message: 'a_2 = 1/3 violates a_2 in (1/2,3/4)',
    };
    const { fetchImpl } = stub(400, body);
    const client = new ForgeClient('', fetchImpl);
    const err = await client
      .postMove('g1', 'alice', '1/3')
      .then(() => null, (e: unknown) => e);
    expect(err).toBeInstanceOf(ServiceError);
    expect((err as ServiceError).code).toBe('illegal-move');
    expect((err as ServiceError).message).toBe(body.message);
    expect((err as ServiceError).status).toBe(400);
  });
});
