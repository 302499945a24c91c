/** Spawns a real mock-backed service instance for integration tests. */
import { spawn, type ChildProcess } from 'node:child_process';
import { once } from 'node:events';
import { fileURLToPath } from 'node:url';
import path from 'node:path';

export interface LiveService {
  baseUrl: string;
  sessionId: string;
  pendingPairs: number;
  stop(): Promise<void>;
}

const FIXTURE = path.join(path.dirname(fileURLToPath(import.meta.url)), '../fixtures/serve_app.py');

export async function startService(): Promise<LiveService> {
  const proc: ChildProcess = spawn('python3', [FIXTURE], { stdio: ['ignore', 'pipe', 'pipe'] });
  let stderr = '';
  proc.stderr!.on('data', (chunk: Buffer) => {
    stderr += chunk.toString();
  });

  const ready = await new Promise<{ port: number; session_id: string; pending_pairs: number }>(
    (resolve, reject) => {
      let buffered = '';
      proc.stdout!.on('data', (chunk: Buffer) => {
        buffered += chunk.toString();
        const line = buffered.split('\n')[0];
        if (buffered.includes('\n') && line) resolve(JSON.parse(line));
      });
      proc.on('exit', (code) => reject(new Error(`service exited early (${code}): ${stderr}`)));
    },
  );

  const baseUrl = `http://127.0.0.1:${ready.port}`;
  const deadline = Date.now() + 30_000;
  for (;;) {
    try {
      const res = await fetch(`${baseUrl}/jobs/none`, { headers: { 'X-Role': 'operator' } });
      if (res.status === 404) break;
    } catch {
      /* not listening yet */
    }
    if (Date.now() > deadline) {
      proc.kill();
      throw new Error(`service never became ready: ${stderr}`);
    }
    await new Promise((r) => setTimeout(r, 100));
  }

  return {
    baseUrl,
    sessionId: ready.session_id,
    pendingPairs: ready.pending_pairs,
    async stop() {
      proc.kill('SIGTERM');
      await Promise.race([once(proc, 'exit'), new Promise((r) => setTimeout(r, 5000))]);
      if (proc.exitCode === null) proc.kill('SIGKILL');
    },
  };
}
