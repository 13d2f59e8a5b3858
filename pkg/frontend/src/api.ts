/** Client for the spectrum service, including the submit-then-poll slow path. */

import type { JobTicket, SpectrumResponse } from "./types";

export class ApiError extends Error {
  readonly status: number;
  constructor(status: number, message: string) {
    super(message);
    this.status = status;
  }
}

function isSpectrum(body: unknown): body is SpectrumResponse {
  return typeof body === "object" && body !== null && Array.isArray((body as SpectrumResponse).years);
}

async function parseBody(response: Response): Promise<unknown> {
  try {
    return await response.json();
  } catch {
    throw new ApiError(response.status, `unexpected response (${response.status})`);
  }
}

async function settle(response: Response, baseUrl: string, pollMs: number): Promise<SpectrumResponse> {
  const body = await parseBody(response);
  if (response.status === 202) {
    const ticket = body as JobTicket;
    return pollJob(baseUrl, ticket.status_url, pollMs);
  }
  // 422 still carries the full spectrum, just without a landmark
  if ((response.ok || response.status === 422) && isSpectrum(body)) {
    return body;
  }
  const detail = (body as { error?: { message?: string } }).error?.message;
  throw new ApiError(response.status, detail ?? `request failed (${response.status})`);
}

async function pollJob(baseUrl: string, statusUrl: string, pollMs: number): Promise<SpectrumResponse> {
  for (;;) {
    await new Promise((resolve) => setTimeout(resolve, pollMs));
    const response = await fetch(baseUrl + statusUrl);
    const body = await parseBody(response);
    if (response.ok && (body as { status?: string }).status === "running") continue;
    if ((response.ok || response.status === 422) && isSpectrum(body)) return body;
    const detail = (body as { error?: { message?: string } }).error?.message;
    throw new ApiError(response.status, detail ?? `job failed (${response.status})`);
  }
}

export async function fetchSpectrum(
  baseUrl: string,
  query: string,
  mode: "pcs" | "rpys",
  fixture?: string,
  pollMs = 750,
): Promise<SpectrumResponse> {
  const params = new URLSearchParams({ q: query, mode });
  if (fixture) params.set("fixture", fixture);
  const response = await fetch(`${baseUrl}/api/spectrum?${params.toString()}`);
  return settle(response, baseUrl, pollMs);
}
