#!/usr/bin/env python
# encoding: utf-8
"""
console.py

Command line driver for the codec.

This is the back-end of the `stripcodec` command line script in the 'app' subdir of the source
distribution (or the bin directory of your virtualenv once installed). Each verb maps onto one of
the cmd_* functions below, which receive the parsed argparse namespace.

Results (ratios, timings, tables) are written to stdout, progress and log messages to stderr.
Exit codes are 0 on success, 1 for internal errors, 2 for user errors and 3 for corrupt input.
"""

import sys
import logging
import argparse
from math import ceil

import stripcodec
from stripcodec import CodecError, EXIT_OK, EXIT_INTERNAL, EXIT_USER
from stripcodec.codec import CodecParams, MAGIC, read_blob, build_histogram, entropy_bits, mean_bits
from stripcodec.context import Codec, StageTimings, train, default_workers, CHUNK
from stripcodec.lib import io
from stripcodec.run import stacktrace, Sandbox
from stripcodec.util import files, parse_axis, synth
from stripcodec import metrics

STDOUT = sys.stdout
STDERR = sys.stderr
ERASER = '\r%s\r'%(' '*80)

logger = logging.getLogger('stripcodec')

# (flag, CodecParams field, type) for every lossy knob
PARAM_FLAGS = [
    ('--N', 'N', int),
    ('--E', 'E', int),
    ('--B1', 'B1', int),
    ('--B2', 'B2', int),
    ('--mu', 'mu', float),
    ('--alpha1', 'alpha1', float),
    ('--percentile', 'zone_percentile', float),
    ('--lmax', 'lmax', int),
]

def echo(msg='', err=False):
    stream = STDERR if err else STDOUT
    stream.write(msg + '\n')
    stream.flush()

def progress(written, total, width=20):
    pct = int(ceil(width*written/float(total)))
    dots = "".join(['#'*pct]+['.']*(width-pct))
    return '[%s]' % dots

def _params(opts):
    """CodecParams from the per-field flags (anything unset keeps its typical value)"""
    given = {field: getattr(opts, field) for _, field, _ in PARAM_FLAGS if getattr(opts, field) is not None}
    return CodecParams(**given)

def _strips(paths):
    found = []
    for pth in paths:
        found.extend(files(pth) or [pth])
    return [io.read_signal(pth) for pth in found]

### verbs ###

def cmd_train(opts):
    params = _params(opts)
    strips = _strips(opts.input)
    profile = train(strips, params)
    io.write_profile(opts.output, profile)
    stats = profile.stats
    echo('trained %r' % (params,))
    echo('%i windows, %.3f bits/symbol (entropy bound %.3f)' % (stats['windows'], stats['mean_bits'], stats['entropy_bits']))

def cmd_compress(opts):
    profile = io.read_profile(opts.profile)
    strip = io.read_signal(opts.input)
    codec = Codec(profile, workers=opts.workers)
    blob = codec.compress(strip)
    io.write_bytes(opts.output, blob)

    cr = metrics.compression_ratio(strip.nbytes, len(blob))
    echo('%i samples → %i bytes (CR %.3f)' % (strip.size, len(blob), cr))
    if logger.isEnabledFor(logging.DEBUG):
        hist = build_histogram(codec.quantize_only(strip))
        logger.debug('%.3f bits/symbol vs. entropy bound %.3f', mean_bits(profile.codebook, hist), entropy_bits(hist))

def cmd_decompress(opts):
    codec = Codec(workers=opts.workers, chunk=opts.chunk)
    data = io.read_bytes(opts.input)
    strip = codec.decompress(data)
    io.write_signal(opts.output, strip)

    echo('%i bytes → %i samples using %i workers' % (len(data), strip.size, codec.workers))
    for stage, ns, frac in codec.timings.rows():
        echo('  %-12s %12.3f ms  %5.1f%%' % (stage, ns / 1e6, 100 * frac))
    echo('  %-12s %12.3f ms' % ('total', codec.timings.total_ns / 1e6))
    if opts.timings:
        _write_timings(opts.timings, codec.timings)

def _write_timings(path, timings):
    with io.CsvExportSession(path, ['stage', 'nanoseconds', 'fraction']) as session:
        for stage, ns, frac in timings.rows():
            session.add(dict(stage=stage, nanoseconds=ns, fraction='%.6f' % frac))

class SweepDelegate(object):
    def sweepPoint(self, params, outcome):
        if not outcome.ok:
            STDERR.write(ERASER)
            echo('skipped %r: %s' % (params, outcome.output.strip()), err=True)

    def sweepProgress(self, done, total):
        STDERR.write(ERASER + '%s %i/%i configurations' % (progress(done, total), done, total))
        if done == total:
            STDERR.write(ERASER)
        STDERR.flush()

def cmd_sweep(opts):
    strips = _strips(opts.input)
    profile = io.read_profile(opts.profile) if opts.profile else None
    if opts.domain:
        metrics.within_fidelity(0.0, opts.domain) # reject unknown domains up front

    axes = {}
    for _, field, cast in PARAM_FLAGS:
        spec = getattr(opts, field)
        if spec is not None:
            axes[field] = parse_axis(spec, cast)
    for field, val in CodecParams()._asdict().items():
        # without an explicit B2, zone 1 runs through the last retained bin
        axes.setdefault(field, [Sandbox.SAME_AS_E if field == 'B2' else val])

    box = Sandbox(strips, profile, workers=opts.workers, repetitions=opts.repetitions, delegate=SweepDelegate())
    points = box.run(**axes)
    if not points:
        raise stripcodec.ParamError('None of the swept configurations were valid')

    front = set(pt.coords for pt in metrics.pareto_front(points))
    fields = ['prd', 'cr', 'throughput_gbps'] + list(CodecParams._fields) + ['front']
    if opts.domain:
        fields.append('fidelity')
    with io.CsvExportSession(opts.output, fields, total=len(points)) as session:
        for pt in points:
            row = pt.row()
            row['front'] = int(pt.coords in front)
            if opts.domain:
                row['fidelity'] = int(metrics.within_fidelity(pt.prd, opts.domain))
            session.add(row)

    echo('%i configurations, %i on the pareto front' % (len(points), len(front)))
    for pt in metrics.pareto_front(points):
        echo('  PRD %7.3f%%  CR %8.3f  %r' % (pt.prd, pt.cr, pt.params))
    echo('throughput by PRD band:')
    for lo, hi, count, mean in metrics.prd_bins(points):
        speed = '%.3f GB/s' % mean if mean is not None else '-'
        echo('  %g–%g%%: %i points, %s' % (lo, hi, count, speed))

def cmd_bench(opts):
    blob = io.read_bytes(opts.input)
    report = metrics.measure_throughput(blob, opts.repetitions, opts.workers)
    for label, gbps in report.rows():
        echo('%-8s %10.4f GB/s' % (label, gbps))

    mean = StageTimings.average(report.timings)
    echo('stage breakdown (mean of %i trials):' % len(report.timings))
    for stage, ns, frac in mean.rows():
        echo('  %-12s %12.3f ms  %5.1f%%' % (stage, ns / 1e6, 100 * frac))
    if opts.timings:
        _write_timings(opts.timings, mean)

def cmd_synth(opts):
    strip = synth.sinusoids(opts.samples, opts.components, opts.noise, opts.seed)
    io.write_signal(opts.output, strip)
    echo('wrote %i samples to %s' % (strip.size, opts.output))

def cmd_info(opts):
    data = io.read_bytes(opts.input)
    if data[:len(MAGIC)] == MAGIC:
        blob = read_blob(data)
        echo('compressed strip: %i samples in %i words (%i bytes)' % (blob.sample_count, blob.stream.word_count, len(data)))
        echo('%r' % (blob.params,))
        echo('A0=%g A1=%g' % (blob.table.A0, blob.table.A1))
        echo('CR %.3f' % metrics.compression_ratio(blob.sample_count * 4, len(data)))
        codebook = blob.codebook
    else:
        profile = io.read_profile(opts.input)
        echo('domain profile: %r' % (profile.params,))
        echo('A0=%g A1=%g' % (profile.table.A0, profile.table.A1))
        for key, val in sorted(profile.stats.items()):
            echo('%s: %s' % (key, val))
        codebook = profile.codebook
    lengths = codebook.lengths[codebook.lengths > 0]
    echo('codebook: lmax=%i, lengths %i..%i, kraft %.6f' % (codebook.lmax, lengths.min(), lengths.max(), codebook.kraft))

### argument parsing ###

def _param_flags(parser, sweep=False):
    group = parser.add_argument_group('codec parameters' + (' (comma lists or start:stop[:step] ranges)' if sweep else ''))
    for flag, field, cast in PARAM_FLAGS:
        group.add_argument(flag, dest=field, type=str if sweep else cast, default=None, metavar=field.upper())

def _worker_flags(parser):
    parser.add_argument('--workers', type=int, default=None, help='decoder threads (default: %i)' % default_workers())

def build_parser():
    parser = argparse.ArgumentParser(prog='stripcodec', description='Asymmetric lossy codec for signal strips')
    parser.add_argument('--version', action='version', version='%(prog)s ' + stripcodec.__version__)
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument('-v', '--verbose', action='store_true', help='log debugging detail')
    verbosity.add_argument('-q', '--quiet', action='store_true', help='only log warnings')
    verbs = parser.add_subparsers(dest='verb', metavar='VERB')
    verbs.required = True

    p = verbs.add_parser('train', help='build a domain profile from representative strips')
    p.add_argument('input', nargs='+', help='signal files (raw float32, or .csv/.txt)')
    p.add_argument('-o', '--output', required=True, help='profile path (json)')
    _param_flags(p)
    p.set_defaults(func=cmd_train)

    p = verbs.add_parser('compress', help='compress a strip with a trained profile')
    p.add_argument('input')
    p.add_argument('-p', '--profile', required=True)
    p.add_argument('-o', '--output', required=True)
    _worker_flags(p)
    p.set_defaults(func=cmd_compress)

    p = verbs.add_parser('decompress', help='decode a compressed strip')
    p.add_argument('input')
    p.add_argument('-o', '--output', required=True)
    _worker_flags(p)
    p.add_argument('--chunk', type=int, default=CHUNK, help='words per decode task (default: %(default)s)')
    p.add_argument('--timings', metavar='CSV', default=None, help='write the per-stage timings as csv')
    p.set_defaults(func=cmd_decompress)

    p = verbs.add_parser('sweep', help='rate-distortion sweep over a grid of parameters')
    p.add_argument('input', nargs='+')
    p.add_argument('-o', '--output', required=True, help='csv path for the rate-distortion points')
    p.add_argument('-p', '--profile', default=None, help='evaluate a fixed profile instead of training per configuration')
    p.add_argument('--domain', default=None, help='flag points within this domain\'s fidelity limit (%s)' % ', '.join(sorted(metrics.DOMAIN_PRD_LIMITS)))
    p.add_argument('-r', '--repetitions', type=int, default=1)
    _worker_flags(p)
    _param_flags(p, sweep=True)
    p.set_defaults(func=cmd_sweep)

    p = verbs.add_parser('bench', help='time repeated decompression of a blob')
    p.add_argument('input')
    p.add_argument('-r', '--repetitions', type=int, default=5)
    _worker_flags(p)
    p.add_argument('--timings', metavar='CSV', default=None, help='write the mean per-stage timings as csv')
    p.set_defaults(func=cmd_bench)

    p = verbs.add_parser('synth', help='write a seeded synthetic strip')
    p.add_argument('-o', '--output', required=True)
    p.add_argument('--samples', type=int, default=1 << 16)
    p.add_argument('--components', type=int, default=3)
    p.add_argument('--noise', type=float, default=0.0)
    p.add_argument('--seed', type=int, default=0)
    p.set_defaults(func=cmd_synth)

    p = verbs.add_parser('info', help='describe a profile or compressed blob')
    p.add_argument('input')
    p.set_defaults(func=cmd_info)
    return parser

def main(argv=None):
    parser = build_parser()
    opts = parser.parse_args(argv)

    level = logging.DEBUG if opts.verbose else logging.WARNING if opts.quiet else logging.INFO
    logging.basicConfig(stream=STDERR, level=level, format='%(levelname)s %(name)s: %(message)s')
    logger.setLevel(level)

    try:
        opts.func(opts)
    except CodecError as e:
        echo('stripcodec %s: %s' % (opts.verb, e), err=True)
        return e.exit_code
    except OSError as e:
        echo('stripcodec %s: %s' % (opts.verb, e), err=True)
        return EXIT_USER
    except KeyboardInterrupt:
        STDERR.write(ERASER)
        return EXIT_INTERNAL
    except Exception:
        STDERR.write(stacktrace())
        return EXIT_INTERNAL
    return EXIT_OK

if __name__ == '__main__':
    sys.exit(main())
