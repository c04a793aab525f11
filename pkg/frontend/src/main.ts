import { PhotoCoachApi, ApiError } from './api.js';
import { GuidanceLoop } from './guidanceLoop.js';
import { drawOverlay } from './overlay.js';
import { renderScorePanel } from './scorePanel.js';
import { renderRanking, todayUtc } from './gallery.js';
import { PromptSpeaker } from './speech.js';

const api = new PhotoCoachApi(location.origin.replace(/:\d+$/, ':8000'));
const speaker = new PromptSpeaker();

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function captureFrame(video: HTMLVideoElement, canvas: HTMLCanvasElement): string | null {
  if (video.videoWidth === 0 || video.videoHeight === 0) return null;
  canvas.width = video.videoWidth;
  canvas.height = video.videoHeight;
  const ctx = canvas.getContext('2d');
  if (!ctx) return null;
  ctx.drawImage(video, 0, 0);
  return canvas.toDataURL('image/jpeg', 0.85).split(',')[1];
}

async function ensureSession(status: HTMLElement): Promise<void> {
  const name = localStorage.getItem('photocoach-name') ?? `guest-${Math.random().toString(36).slice(2, 8)}`;
  const password = localStorage.getItem('photocoach-pass') ?? Math.random().toString(36).slice(2, 12);
  try {
    await api.register(name, password);
  } catch (err) {
    // already registered is fine, anything else is not
    if (!(err instanceof ApiError && err.code === 'duplicate_name')) throw err;
  }
  await api.login(name, password);
  localStorage.setItem('photocoach-name', name);
  localStorage.setItem('photocoach-pass', password);
  status.textContent = `signed in as ${name}`;
}

async function refreshRanking(): Promise<void> {
  const entries = await api.dailyRanking(todayUtc());
  renderRanking(el('ranking'), entries);
}

async function start(): Promise<void> {
  const video = el<HTMLVideoElement>('viewfinder');
  const overlay = el<HTMLCanvasElement>('overlay');
  const grab = document.createElement('canvas');
  const status = el('status');

  await ensureSession(status);

  const stream = await navigator.mediaDevices.getUserMedia({
    video: { width: { ideal: 1280 }, height: { ideal: 720 } },
    audio: false,
  });
  video.srcObject = stream;
  await video.play();
  overlay.width = video.videoWidth;
  overlay.height = video.videoHeight;

  const ctx = overlay.getContext('2d');
  const loop = new GuidanceLoop(
    (frame) => api.guidance(frame),
    () => captureFrame(video, grab),
    {
      onUpdate: (result) => {
        if (ctx) drawOverlay(ctx, result, overlay.width, overlay.height);
        speaker.speak(result.prompts);
      },
      onError: (err) => {
        status.textContent = err instanceof Error ? err.message : String(err);
      },
    },
  );
  loop.start();

  // double-click the viewfinder to keep the shot: upload, score, re-rank
  video.addEventListener('dblclick', () => {
    const frame = captureFrame(video, grab);
    if (!frame) return;
    api
      .uploadPhoto(frame)
      .then((photo) => {
        renderScorePanel(el('scores'), photo.scores);
        return refreshRanking();
      })
      .catch((err) => {
        status.textContent = err instanceof Error ? err.message : String(err);
      });
  });

  el('refresh-ranking').addEventListener('click', () => void refreshRanking());
  await refreshRanking();
}

start().catch((err) => {
  el('status').textContent = `startup failed: ${err instanceof Error ? err.message : err}`;
});
