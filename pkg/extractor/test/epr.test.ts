import { describe, expect, test } from 'vitest';
import { mkdtempSync, writeFileSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';
import { encodeEpr, writeEpr, readEpr } from '../src/epr.js';

describe('encodeEpr', () => {
  test('header layout: magic, version, N, D as little-endian u32', () => {
    const buf = encodeEpr([new Float32Array([1, 2, 3])], 3);
    expect(buf.toString('ascii', 0, 4)).toBe('EPR1');
    expect(buf.readUInt32LE(4)).toBe(1);
    expect(buf.readUInt32LE(8)).toBe(1);
    expect(buf.readUInt32LE(12)).toBe(3);
    expect(buf.length).toBe(16 + 4 * 3);
  });

  test('payload is float32 little-endian, row-major', () => {
    const buf = encodeEpr([new Float32Array([1.5, -2]), new Float32Array([0.25, 1e-7])], 2);
    expect(buf.readFloatLE(16)).toBe(1.5);
    expect(buf.readFloatLE(20)).toBe(-2);
    expect(buf.readFloatLE(24)).toBe(0.25);
    expect(buf.readFloatLE(28)).toBe(Math.fround(1e-7));
  });

  test('rejects empty input, width mismatch, and non-finite values', () => {
    expect(() => encodeEpr([], 4)).toThrow('invalid shape');
    expect(() => encodeEpr([new Float32Array(3)], 4)).toThrow('expected 4');
    expect(() => encodeEpr([Float32Array.of(1, Infinity)], 2)).toThrow('non-finite');
    expect(() => encodeEpr([Float32Array.of(NaN, 1)], 2)).toThrow('non-finite');
  });
});

describe('readEpr', () => {
  test('file round trip is bit-exact', () => {
    const rows = [
      Float32Array.of(0.1, -0.2, 1 / 3),
      Float32Array.of(1e-30, 123456.78, -0),
    ];
    const path = join(mkdtempSync(join(tmpdir(), 'epr-')), 'roundtrip.epr');
    writeEpr(rows, 3, path);
    const back = readEpr(path);
    expect(back.n).toBe(2);
    expect(back.dim).toBe(3);
    const flat = Float32Array.of(...rows[0], ...rows[1]);
    expect(Buffer.from(back.data.buffer).equals(Buffer.from(flat.buffer))).toBe(true);
  });

  test('rejects bad magic and size mismatches', () => {
    const dir = mkdtempSync(join(tmpdir(), 'epr-'));
    const good = encodeEpr([new Float32Array([1, 2])], 2);

    const badMagic = Buffer.from(good);
    badMagic.write('NOPE', 0, 'ascii');
    const p1 = join(dir, 'bad-magic.epr');
    const p2 = join(dir, 'truncated.epr');
    writeFileSync(p1, badMagic);
    writeFileSync(p2, good.subarray(0, good.length - 3));
    expect(() => readEpr(p1)).toThrow('bad magic');
    expect(() => readEpr(p2)).toThrow('does not match');
  });
});
