/**
 * The embedding network: a small VGG-style stack ending in two fully
 * connected layers; the second FC activation (4096-wide) is the
 * embedding that gets written to the EPR1 file.
 *
 * Weights are generated from a fixed seed instead of loaded from a
 * pretrained checkpoint, so the extractor is self-contained and
 * bit-deterministic. Random-projection features preserve relative
 * distances well enough for the toolkit's geometric analyses; swap in
 * real classifier weights via `FeatureNetwork.fromWeights` when a
 * checkpoint is available (see README).
 */
import * as tf from '@tensorflow/tfjs';
import { mulberry32, fillUniform } from './prng.js';
import { INPUT_SIZE } from './image.js';

export const FEATURE_DIM = 4096;
export const DEFAULT_SEED = 1405;

interface Conv {
  kernel: tf.Tensor4D; // [h, w, inC, outC]
  bias: tf.Tensor1D;
}

interface Dense {
  kernel: tf.Tensor2D; // [in, out]
  bias: tf.Tensor1D;
}

const CONV_CHANNELS = [3, 16, 32, 48];
const FLAT = 7 * 7 * 48; // three stride-2 convs + two 2x2 pools: 224 -> 7

export class FeatureNetwork {
  private convs: Conv[];
  private fc1: Dense;
  private fc2: Dense;

  private constructor(convs: Conv[], fc1: Dense, fc2: Dense) {
    this.convs = convs;
    this.fc1 = fc1;
    this.fc2 = fc2;
  }

  /**
   * Build the default seeded network. Weight draw order is fixed
   * (conv kernels+biases in layer order, then fc1, then fc2) — changing
   * it changes the embedding space.
   */
  static seeded(seed: number = DEFAULT_SEED): FeatureNetwork {
    const rand = mulberry32(seed);
    const convs: Conv[] = [];
    for (let i = 0; i + 1 < CONV_CHANNELS.length; i++) {
      const [inC, outC] = [CONV_CHANNELS[i], CONV_CHANNELS[i + 1]];
      const fanIn = 3 * 3 * inC;
      convs.push({
        kernel: tf.tensor4d(
          fillUniform(new Float32Array(3 * 3 * inC * outC), rand, Math.sqrt(6 / fanIn)),
          [3, 3, inC, outC],
        ),
        bias: tf.tensor1d(fillUniform(new Float32Array(outC), rand, 0.01)),
      });
    }
    const dense = (nIn: number, nOut: number): Dense => ({
      kernel: tf.tensor2d(
        fillUniform(new Float32Array(nIn * nOut), rand, Math.sqrt(6 / nIn)),
        [nIn, nOut],
      ),
      bias: tf.tensor1d(fillUniform(new Float32Array(nOut), rand, 0.01)),
    });
    return new FeatureNetwork(convs, dense(FLAT, FEATURE_DIM), dense(FEATURE_DIM, FEATURE_DIM));
  }

  /** Plug in externally trained weights with the same shapes. */
  static fromWeights(
    convs: { kernel: tf.Tensor4D; bias: tf.Tensor1D }[],
    fc1: Dense,
    fc2: Dense,
  ): FeatureNetwork {
    return new FeatureNetwork(convs, fc1, fc2);
  }

  /** Map a preprocessed batch [N, 224, 224, 3] to embeddings [N, 4096]. */
  embed(batch: tf.Tensor4D): tf.Tensor2D {
    if (batch.shape[1] !== INPUT_SIZE || batch.shape[2] !== INPUT_SIZE) {
      throw new Error(`expected ${INPUT_SIZE}x${INPUT_SIZE} input, got ${batch.shape}`);
    }
    return tf.tidy(() => {
      let x: tf.Tensor4D = batch;
      for (let i = 0; i < this.convs.length; i++) {
        x = tf.relu(
          tf.conv2d(x, this.convs[i].kernel, 2, 'same').add(this.convs[i].bias),
        ) as tf.Tensor4D;
        if (i < 2) {
          x = tf.maxPool(x, 2, 2, 'same');
        }
      }
      const flat = x.reshape([batch.shape[0], FLAT]) as tf.Tensor2D;
      const h = tf.relu(tf.matMul(flat, this.fc1.kernel).add(this.fc1.bias));
      return tf.matMul(h, this.fc2.kernel).add(this.fc2.bias) as tf.Tensor2D;
    });
  }

  dispose(): void {
    for (const c of this.convs) {
      c.kernel.dispose();
      c.bias.dispose();
    }
    for (const d of [this.fc1, this.fc2]) {
      d.kernel.dispose();
      d.bias.dispose();
    }
  }
}
