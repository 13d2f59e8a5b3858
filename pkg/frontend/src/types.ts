/** Wire types for GET /api/spectrum. */

export interface YearEntry {
  year: number;
  c_total: number;
  f_value: number;
  pcs_value: number;
  top_patent_id: string | null;
  top_patent_count: number | null;
  document_url: string | null;
}

export interface Landmark {
  patent_id: string;
  year: number;
  document_url: string;
}

export interface SpectrumResponse {
  query: string;
  mode: "pcs" | "rpys";
  source: string;
  api_snapshot_date: string;
  citing_count: number;
  unique_cited_count: number;
  years: YearEntry[];
  landmark: Landmark | null;
}

export interface JobTicket {
  status: "accepted";
  job_id: string;
  status_url: string;
}
