import type { GuidanceResult } from './api.js';

const DIRECTION_ARROWS: Record<string, string> = {
  left: '←',
  right: '→',
  up: '↑',
  down: '↓',
  forward: '+',
  backward: '-',
};

export function promptLabel(p: { kind: string; token: string }): string {
  if (p.kind === 'direction') {
    const arrow = DIRECTION_ARROWS[p.token] ?? '';
    return `${arrow} move ${p.token}`.trim();
  }
  return p.token;
}

/** Paint subject box, thirds grid and prompt banner over the viewfinder. */
export function drawOverlay(
  ctx: CanvasRenderingContext2D,
  result: GuidanceResult,
  width: number,
  height: number,
): void {
  ctx.clearRect(0, 0, width, height);

  ctx.strokeStyle = 'rgba(255,255,255,0.35)';
  ctx.lineWidth = 1;
  for (const f of [1 / 3, 2 / 3]) {
    ctx.beginPath();
    ctx.moveTo(f * width, 0);
    ctx.lineTo(f * width, height);
    ctx.moveTo(0, f * height);
    ctx.lineTo(width, f * height);
    ctx.stroke();
  }

  if (result.subject) {
    const [x0, y0, x1, y1] = result.subject.bbox;
    ctx.strokeStyle = result.verdict?.matched ? '#3fb950' : '#f0b429';
    ctx.lineWidth = 2;
    ctx.strokeRect(x0 * width, y0 * height, (x1 - x0) * width, (y1 - y0) * height);

    const [cx, cy] = result.subject.centroid;
    ctx.beginPath();
    ctx.arc(cx * width, cy * height, 4, 0, 2 * Math.PI);
    ctx.fillStyle = ctx.strokeStyle;
    ctx.fill();
  }

  const lines = result.prompts.map(promptLabel);
  if (result.verdict?.matched && result.verdict.best) {
    lines.push(result.verdict.best.replace(/_/g, ' '));
  }
  if (lines.length) {
    ctx.font = '16px system-ui, sans-serif';
    ctx.textBaseline = 'top';
    lines.forEach((line, i) => {
      const y = 8 + i * 22;
      ctx.fillStyle = 'rgba(0,0,0,0.55)';
      ctx.fillRect(6, y - 2, ctx.measureText(line).width + 12, 20);
      ctx.fillStyle = '#fff';
      ctx.fillText(line, 12, y);
    });
  }
}
