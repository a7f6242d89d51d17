/**
 * Deterministic PRNG for weight generation (mulberry32).
 *
 * The embedding space is defined by the network weights, so weight
 * generation must be bit-stable across platforms and Node versions:
 * integer arithmetic only, then one float division.
 */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t = (t + Math.imul(t ^ (t >>> 7), t | 61)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

/** Fill a Float32Array with uniform values in [-limit, limit). */
export function fillUniform(
  out: Float32Array,
  rand: () => number,
  limit: number,
): Float32Array {
  for (let i = 0; i < out.length; i++) {
    out[i] = (rand() * 2 - 1) * limit;
  }
  return out;
}
