import type { GuidancePrompt } from './api.js';

const SPOKEN: Record<string, string> = {
  'too dark': 'Too dark. Find more light.',
  'too bright': 'Too bright. Reduce exposure.',
  left: 'Move the subject left.',
  right: 'Move the subject right.',
  up: 'Aim a little higher.',
  down: 'Aim a little lower.',
  forward: 'Step closer.',
  backward: 'Step back.',
  awesome: 'Awesome!',
  yes: 'Yes!',
  'good shot': 'Good shot!',
};

export function spokenText(p: GuidancePrompt): string {
  return SPOKEN[p.token] ?? p.detail ?? p.token;
}

/** Voice feedback that stays quiet while the same prompt keeps repeating. */
export class PromptSpeaker {
  private lastToken: string | null = null;

  constructor(private readonly synth: SpeechSynthesis | null = globalThis.speechSynthesis ?? null) {}

  speak(prompts: GuidancePrompt[]): void {
    const first = prompts[0];
    if (!first) {
      this.lastToken = null;
      return;
    }
    if (first.token === this.lastToken) return;
    this.lastToken = first.token;
    if (!this.synth) return; // no speech support, overlay text still shows
    this.synth.cancel();
    this.synth.speak(new SpeechSynthesisUtterance(spokenText(first)));
  }
}
