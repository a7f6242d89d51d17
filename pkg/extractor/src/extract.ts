/**
 * Directory-to-EPR1 extraction: scan, decode, batch through the
 * network, write the embedding file plus its row-mapping sidecar CSV
 * and warnings log.
 */
import { readdirSync, readFileSync, statSync, writeFileSync } from 'node:fs';
import { join } from 'node:path';
import * as tf from '@tensorflow/tfjs';
import { decodePng, preprocess, INPUT_SIZE } from './image.js';
import { FeatureNetwork, FEATURE_DIM, DEFAULT_SEED } from './network.js';
import { writeEpr } from './epr.js';

export interface ExtractionConfig {
  inputDir: string;
  outPath: string;
  batchSize?: number;
  device?: string;
  /** Sort file names lexicographically for a reproducible row order. */
  sortNames?: boolean;
  seed?: number;
}

export interface ExtractionResult {
  /** Row index -> file name, in output order. */
  files: string[];
  /** One line per skipped file. */
  warnings: string[];
  rows: number;
  dim: number;
}

function csvField(s: string): string {
  return /[",\n]/.test(s) ? `"${s.replaceAll('"', '""')}"` : s;
}

export async function extractFeatures(config: ExtractionConfig): Promise<ExtractionResult> {
  const batchSize = config.batchSize ?? 16;
  const device = config.device ?? 'cpu';
  if (batchSize < 1) {
    throw new Error(`batch size must be >= 1, got ${batchSize}`);
  }
  if (device !== 'cpu') {
    throw new Error(`unsupported device '${device}' (this build runs on cpu only)`);
  }
  await tf.setBackend('cpu');
  await tf.ready();

  let names = readdirSync(config.inputDir).filter(name => {
    try {
      return statSync(join(config.inputDir, name)).isFile();
    } catch {
      return false;
    }
  });
  if (config.sortNames ?? true) {
    names = names.slice().sort();
  }
  if (names.length === 0) {
    throw new Error(`${config.inputDir}: directory contains no files`);
  }

  const warnings: string[] = [];
  const kept: string[] = [];
  const tensors: tf.Tensor3D[] = [];
  for (const name of names) {
    try {
      const decoded = decodePng(readFileSync(join(config.inputDir, name)));
      tensors.push(preprocess(decoded));
      kept.push(name);
    } catch (err) {
      const reason = err instanceof Error ? err.message : String(err);
      warnings.push(`skipped ${name}: ${reason}`);
      console.warn(`warning: skipped ${name}: ${reason}`);
    }
  }
  if (kept.length === 0) {
    throw new Error(`${config.inputDir}: no decodable images`);
  }

  const network = FeatureNetwork.seeded(config.seed ?? DEFAULT_SEED);
  const rows: Float32Array[] = [];
  try {
    for (let start = 0; start < tensors.length; start += batchSize) {
      const slice = tensors.slice(start, start + batchSize);
      const batch = tf.stack(slice) as tf.Tensor4D;
      const out = network.embed(batch);
      const values = out.dataSync() as Float32Array;
      for (let i = 0; i < slice.length; i++) {
        rows.push(values.slice(i * FEATURE_DIM, (i + 1) * FEATURE_DIM));
      }
      batch.dispose();
      out.dispose();
    }
  } finally {
    network.dispose();
    for (const t of tensors) {
      t.dispose();
    }
  }

  writeEpr(rows, FEATURE_DIM, config.outPath);
  const mapping = ['row,file'];
  for (let i = 0; i < kept.length; i++) {
    mapping.push(`${i},${csvField(kept[i])}`);
  }
  writeFileSync(`${config.outPath}.rows.csv`, mapping.join('\n') + '\n');
  writeFileSync(
    `${config.outPath}.warnings.log`,
    warnings.length ? warnings.join('\n') + '\n' : '',
  );
  return { files: kept, warnings, rows: rows.length, dim: FEATURE_DIM };
}

export { FEATURE_DIM, INPUT_SIZE };
