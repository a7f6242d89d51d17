import { describe, expect, test } from 'vitest';
import * as tf from '@tensorflow/tfjs';
import { decodePng, preprocess, INPUT_SIZE } from '../src/image.js';
import { pngBuffer, solidPng } from './helpers.js';

describe('decodePng', () => {
  test('recovers pixel values and drops alpha', () => {
    const buf = pngBuffer(3, 2, (x, y) => [x * 10, y * 100, 250]);
    const img = decodePng(buf);
    expect(img.width).toBe(3);
    expect(img.height).toBe(2);
    expect(Array.from(img.pixels.slice(0, 6))).toEqual([0, 0, 250, 10, 0, 250]);
    expect(Array.from(img.pixels.slice(9, 12))).toEqual([0, 100, 250]);
  });

  test('throws on data that is not a PNG', () => {
    expect(() => decodePng(Buffer.from('plain text, definitely not a PNG'))).toThrow();
    expect(() => decodePng(Buffer.alloc(0))).toThrow();
  });
});

describe('preprocess', () => {
  test('output shape is 224x224x3 regardless of input size', () => {
    for (const [w, h] of [[10, 10], [640, 480], [224, 224]] as const) {
      const t = preprocess(decodePng(solidPng(w, h, [0, 0, 0])));
      expect(t.shape).toEqual([INPUT_SIZE, INPUT_SIZE, 3]);
      t.dispose();
    }
  });

  test('solid color maps to the normalized constant in every cell', () => {
    // resizing a constant image is the identity, so each channel must be
    // exactly (v/255 - mean) / std
    const t = preprocess(decodePng(solidPng(17, 9, [128, 64, 255])));
    const data = t.dataSync();
    const expected = [
      (128 / 255 - 0.485) / 0.229,
      (64 / 255 - 0.456) / 0.224,
      (255 / 255 - 0.406) / 0.225,
    ];
    for (const cell of [0, 1000, INPUT_SIZE * INPUT_SIZE - 1]) {
      for (let c = 0; c < 3; c++) {
        expect(data[cell * 3 + c]).toBeCloseTo(expected[c], 5);
      }
    }
    t.dispose();
  });

  test('is deterministic', () => {
    const buf = pngBuffer(31, 17, (x, y) => [(x * 41) % 256, (y * 77) % 256, (x + y) % 256]);
    const a = preprocess(decodePng(buf));
    const b = preprocess(decodePng(buf));
    expect(
      Buffer.from(a.dataSync().buffer).equals(Buffer.from(b.dataSync().buffer)),
    ).toBe(true);
    a.dispose();
    b.dispose();
  });

  test('leaks no tensors', () => {
    const buf = solidPng(8, 8, [1, 2, 3]);
    const before = tf.memory().numTensors;
    preprocess(decodePng(buf)).dispose();
    expect(tf.memory().numTensors).toBe(before);
  });
});
