// Typed client for the photocoach REST API. Every call goes over HTTP;
// nothing in the web app reaches into server internals.

export const ATTRIBUTES = [
  'balanced_elements',
  'color_harmony',
  'object_emphasis',
  'good_lighting',
  'rule_of_thirds',
  'vivid_color',
] as const;

export type Attribute = (typeof ATTRIBUTES)[number];

export interface DisplayScores {
  overall: number;
  attributes: Record<Attribute, number>;
}

export interface Scores {
  overall: number;
  attributes: Record<Attribute, number>;
  display: DisplayScores;
}

export interface PhotoInfo {
  photo_id: string;
  owner: string;
  owner_name: string;
  uploaded_at: string;
  day_bucket: string;
  scores: Scores;
  suggestions: string[];
  created?: boolean;
}

export interface RankingEntry {
  rank: number;
  photo_id: string;
  display_score: number;
  owner_name: string;
}

export interface GuidancePrompt {
  kind: 'brightness' | 'direction' | 'encouragement' | 'suggestion';
  token: string;
  detail: string | null;
}

export interface SubjectBox {
  bbox: [number, number, number, number]; // x0, y0, x1, y1 as frame fractions
  centroid: [number, number];
  area_frac: number;
}

export interface GuidanceResult {
  prompts: GuidancePrompt[];
  verdict: {
    scores: Record<string, number>;
    best: string | null;
    matched: boolean;
  } | null;
  subject: SubjectBox | null;
  scores?: Scores;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

async function parseOrThrow<T>(res: Response): Promise<T> {
  const body = await res.json();
  if (!res.ok) {
    throw new ApiError(res.status, body.code ?? 'unknown', body.message ?? res.statusText);
  }
  return body as T;
}

export class PhotoCoachApi {
  private token: string | null = null;

  constructor(readonly baseUrl: string) {}

  get authenticated(): boolean {
    return this.token !== null;
  }

  private headers(json = true): Record<string, string> {
    const h: Record<string, string> = json ? { 'Content-Type': 'application/json' } : {};
    if (this.token) h['Authorization'] = `Bearer ${this.token}`;
    return h;
  }

  async health(): Promise<boolean> {
    try {
      const res = await fetch(`${this.baseUrl}/api/health`);
      return res.ok;
    } catch {
      return false;
    }
  }

  async register(name: string, password: string): Promise<string> {
    const res = await fetch(`${this.baseUrl}/api/users`, {
      method: 'POST',
      headers: this.headers(),
      body: JSON.stringify({ name, password }),
    });
    const body = await parseOrThrow<{ user_id: string }>(res);
    return body.user_id;
  }

  async login(name: string, password: string): Promise<void> {
    const res = await fetch(`${this.baseUrl}/api/sessions`, {
      method: 'POST',
      headers: this.headers(),
      body: JSON.stringify({ name, password }),
    });
    const body = await parseOrThrow<{ token: string }>(res);
    this.token = body.token;
  }

  async uploadPhoto(imageBase64: string): Promise<PhotoInfo> {
    const res = await fetch(`${this.baseUrl}/api/photos`, {
      method: 'POST',
      headers: this.headers(),
      body: JSON.stringify({ image_base64: imageBase64 }),
    });
    return parseOrThrow<PhotoInfo>(res);
  }

  async guidance(imageBase64: string, withScores = false): Promise<GuidanceResult> {
    const url = `${this.baseUrl}/api/guidance${withScores ? '?score=true' : ''}`;
    const res = await fetch(url, {
      method: 'POST',
      headers: this.headers(),
      body: JSON.stringify({ image_base64: imageBase64 }),
    });
    return parseOrThrow<GuidanceResult>(res);
  }

  async dailyRanking(date: string): Promise<RankingEntry[]> {
    const res = await fetch(`${this.baseUrl}/api/rankings/daily?date=${date}`);
    const body = await parseOrThrow<{ entries: RankingEntry[] }>(res);
    return body.entries;
  }

  async recommendations(limit = 10): Promise<RankingEntry[]> {
    const res = await fetch(`${this.baseUrl}/api/recommendations?limit=${limit}`);
    const body = await parseOrThrow<{ entries: RankingEntry[] }>(res);
    return body.entries;
  }

  async history(userId: string): Promise<PhotoInfo[]> {
    const res = await fetch(`${this.baseUrl}/api/users/${userId}/history`, {
      headers: this.headers(false),
    });
    const body = await parseOrThrow<{ photos: PhotoInfo[] }>(res);
    return body.photos;
  }
}
