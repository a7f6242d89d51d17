/**
 * EPR1 embedding-file writer/reader.
 *
 * Layout (little-endian throughout):
 *   bytes 0-3    ASCII magic "EPR1"
 *   bytes 4-7    u32 format version (= 1)
 *   bytes 8-11   u32 N (rows)
 *   bytes 12-15  u32 D (columns)
 *   bytes 16-    N * D float32 values, row-major
 */
import { writeFileSync, readFileSync } from 'node:fs';

const MAGIC = 'EPR1';
const VERSION = 1;
const HEADER_BYTES = 16;

export function encodeEpr(rows: Float32Array[], dim: number): Buffer {
  if (rows.length < 1 || dim < 1) {
    throw new Error(`invalid shape N=${rows.length}, D=${dim}`);
  }
  const buf = Buffer.alloc(HEADER_BYTES + 4 * rows.length * dim);
  buf.write(MAGIC, 0, 'ascii');
  buf.writeUInt32LE(VERSION, 4);
  buf.writeUInt32LE(rows.length, 8);
  buf.writeUInt32LE(dim, 12);
  let offset = HEADER_BYTES;
  for (const row of rows) {
    if (row.length !== dim) {
      throw new Error(`row has ${row.length} values, expected ${dim}`);
    }
    for (let i = 0; i < dim; i++) {
      if (!Number.isFinite(row[i])) {
        throw new Error(`non-finite value ${row[i]} at column ${i}`);
      }
      buf.writeFloatLE(row[i], offset);
      offset += 4;
    }
  }
  return buf;
}

export function writeEpr(rows: Float32Array[], dim: number, path: string): void {
  writeFileSync(path, encodeEpr(rows, dim));
}

export interface EprFile {
  n: number;
  dim: number;
  data: Float32Array;
}

export function readEpr(path: string): EprFile {
  const buf = readFileSync(path);
  if (buf.length < HEADER_BYTES) {
    throw new Error(`${path}: too short for an EPR1 header`);
  }
  if (buf.toString('ascii', 0, 4) !== MAGIC) {
    throw new Error(`${path}: bad magic`);
  }
  const version = buf.readUInt32LE(4);
  if (version !== VERSION) {
    throw new Error(`${path}: unsupported version ${version}`);
  }
  const n = buf.readUInt32LE(8);
  const dim = buf.readUInt32LE(12);
  if (buf.length !== HEADER_BYTES + 4 * n * dim) {
    throw new Error(`${path}: payload size does not match declared ${n}x${dim}`);
  }
  const data = new Float32Array(n * dim);
  for (let i = 0; i < data.length; i++) {
    data[i] = buf.readFloatLE(HEADER_BYTES + 4 * i);
  }
  return { n, dim, data };
}
