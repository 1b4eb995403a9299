// Construction runner: picks a method, renders the nested-interval chain
// and certificate table, and audits the (possibly locally edited) run
// against the service's verify endpoint.

import {
  CertificateJson,
  ConstructResponse,
  ForgeClient,
  ResultJson,
  ServiceError,
} from './api.js';

export interface StoredRun {
  result: ResultJson;
  certificate: CertificateJson;
  enum?: unknown;
  reals?: string[][];
}

export class ConstructScreen {
  readonly root: HTMLElement;
  readonly client: ForgeClient;
  lastRun: StoredRun | null = null;

  constructor(root: HTMLElement, client: ForgeClient) {
    this.root = root;
    this.client = client;
    this.renderShell();
  }

  async run(
    method: string,
    enumSpec: unknown,
    depth: number,
    extra: Record<string, unknown> = {},
  ): Promise<ConstructResponse> {
    const response = await this.client.construct({
      method,
      enum: enumSpec,
      depth,
      ...extra,
    });
    this.lastRun = {
      result: response.result,
      certificate: response.certificate,
      enum: enumSpec,
    };
    this.render(response);
    return response;
  }

  // audits whatever is in the certificate editor, so a locally tampered
  // certificate is sent as-is and the service's verdict is displayed
  async audit(): Promise<void> {
    if (this.lastRun === null) return;
    const editor = this.root.querySelector('.cert-editor') as HTMLTextAreaElement;
    let certificate: CertificateJson;
    try {
      certificate = JSON.parse(editor.value);
    } catch {
      this.setAudit('audit failed: certificate editor is not valid JSON');
      return;
    }
    try {
      const verdict = await this.client.verify({
        result: this.lastRun.result,
        certificate,
        enum: this.lastRun.enum,
        reals: this.lastRun.reals,
      });
      this.setAudit(
        verdict.ok
          ? `certificate OK (${certificate.rounds.length} rounds)`
          : `certificate INVALID: ${verdict.failure ?? 'audit failed'}`,
      );
    } catch (err) {
      if (err instanceof ServiceError) {
        this.setAudit(`audit failed: ${err.message}`);
        return;
      }
      throw err;
    }
  }

  private renderShell(): void {
    this.root.innerHTML = `
      <div class="summary"></div>
      <div class="chain"></div>
      <table class="cert-table"><tbody></tbody></table>
      <textarea class="cert-editor"></textarea>
      <button class="audit-button" type="button">audit</button>
      <div class="audit-result"></div>
    `;
    const button = this.root.querySelector('.audit-button') as HTMLElement;
    button.addEventListener('click', () => void this.audit());
  }

  private setAudit(text: string): void {
    (this.root.querySelector('.audit-result') as HTMLElement).textContent = text;
  }

  private render(response: ConstructResponse): void {
    const summary = this.root.querySelector('.summary') as HTMLElement;
    const eta = response.eta
      ? ` — η = ${response.eta.value} (≈ ${response.eta.approx})`
      : '';
    summary.textContent = `${response.method}: verified=${response.verified}${eta}`;

    const chain = this.root.querySelector('.chain') as HTMLElement;
    if (response.result.type === 'nested' && response.result.chain) {
      // nesting diagram: one row per link, indented by depth
      chain.innerHTML = response.result.chain
        .map(
          (iv, i) =>
            `<div class="link" style="margin-left:${i * 12}px">${iv.text}</div>`,
        )
        .join('');
    } else if (response.result.type === 'stream') {
      chain.innerHTML = `<div class="digits">0.${(response.result.digits ?? []).join('')}</div>`;
    } else {
      chain.innerHTML = `<div class="terms">${(response.result.terms ?? []).join(', ')}</div>`;
    }

    const tbody = this.root.querySelector('.cert-table tbody') as HTMLElement;
    tbody.innerHTML = response.certificate.rounds
      .map(
        (r) => `
        <tr>
          <td>${r.index ?? ''}</td>
          <td>${r.reason}</td>
          <td>${r.point ?? ''}</td>
          <td>${r.witness?.text ?? ''}</td>
        </tr>`,
      )
      .join('');

    const editor = this.root.querySelector('.cert-editor') as HTMLTextAreaElement;
    editor.value = JSON.stringify(response.certificate, null, 2);
  }
}
