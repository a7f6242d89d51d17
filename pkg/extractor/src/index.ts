export { extractFeatures } from './extract.js';
export type { ExtractionConfig, ExtractionResult } from './extract.js';
export { FeatureNetwork, FEATURE_DIM, DEFAULT_SEED } from './network.js';
export { decodePng, preprocess, INPUT_SIZE } from './image.js';
export { encodeEpr, writeEpr, readEpr } from './epr.js';
export type { EprFile } from './epr.js';
export { mulberry32 } from './prng.js';
