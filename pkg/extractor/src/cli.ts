#!/usr/bin/env node
/** Command line wrapper around extractFeatures. */
import yargs from 'yargs';
import { hideBin } from 'yargs/helpers';
import { extractFeatures } from './extract.js';

async function main(): Promise<number> {
  const argv = await yargs(hideBin(process.argv))
    .scriptName('epr-extract')
    .usage('$0 --in <image dir> --out <file.epr>')
    .option('in', { type: 'string', demandOption: true, describe: 'directory of PNG images' })
    .option('out', { type: 'string', demandOption: true, describe: 'EPR1 output path' })
    .option('batch-size', { type: 'number', default: 16 })
    .option('device', { type: 'string', default: 'cpu' })
    .option('sort', {
      type: 'boolean',
      default: true,
      describe: 'lexicographic row order (disable to keep directory order)',
    })
    .strict()
    .parse();

  const result = await extractFeatures({
    inputDir: argv.in,
    outPath: argv.out,
    batchSize: argv['batch-size'],
    device: argv.device,
    sortNames: argv.sort,
  });
  console.log(
    `wrote ${result.rows} x ${result.dim} embeddings to ${argv.out}` +
      (result.warnings.length ? ` (${result.warnings.length} skipped)` : ''),
  );
  return 0;
}

main()
  .then(code => process.exit(code))
  .catch(err => {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    process.exit(1);
  });
