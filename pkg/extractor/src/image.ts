/**
 * Image loading and preprocessing.
 *
 * PNG in. Tensor out. Resize to 224x224 bilinear (half-pixel centers),
 * scale to 0..1, normalize with the standard per-channel mean/std.
 * Channels last, shape [224, 224, 3].
 */
import * as tf from '@tensorflow/tfjs';
import { PNG } from 'pngjs';

export const INPUT_SIZE = 224;

// standard normalization constants for pretrained-classifier inputs
const MEAN = [0.485, 0.456, 0.406];
const STD = [0.229, 0.224, 0.225];

export interface DecodedImage {
  width: number;
  height: number;
  /** RGB, row-major, no alpha. */
  pixels: Uint8Array;
}

/** Decode a PNG buffer to packed RGB. Throws on anything that is not a PNG. */
export function decodePng(buf: Buffer): DecodedImage {
  const png = PNG.sync.read(buf);
  const pixels = new Uint8Array(png.width * png.height * 3);
  for (let i = 0; i < png.width * png.height; i++) {
    pixels[i * 3] = png.data[i * 4];
    pixels[i * 3 + 1] = png.data[i * 4 + 1];
    pixels[i * 3 + 2] = png.data[i * 4 + 2];
  }
  return { width: png.width, height: png.height, pixels };
}

/** Preprocess one decoded image to a normalized [224, 224, 3] tensor. */
export function preprocess(img: DecodedImage): tf.Tensor3D {
  return tf.tidy(() => {
    const raw = tf.tensor3d(
      Float32Array.from(img.pixels),
      [img.height, img.width, 3],
    );
    const resized = tf.image.resizeBilinear(
      raw, [INPUT_SIZE, INPUT_SIZE], false, true,
    );
    return resized.div(255).sub(MEAN).div(STD) as tf.Tensor3D;
  });
}
