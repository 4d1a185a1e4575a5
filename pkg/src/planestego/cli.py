"""Command line interface.

Exit codes: 0 success, 2 capacity/framing error, 64 usage, 66 no input
images, 74 I/O or unreadable image.
"""
import argparse
import os
import sys

from . import analysis
from .errors import (CapacityError, CorruptFileError, FormatError, FramingError, RangeError,
                     StegoError, TruncationError)
from .imageio import SynthKind, load_image, save_image, synth_image
from .numsys import System, build_table, format_table, get_system
from .stego import (EmbedParams, Framing, bits_to_bytes, bytes_to_bits, capacity,
                    embed_message, extract_message, get_framing)
from .validation import check_key

EX_OK = 0
EX_DOMAIN = 2
EX_USAGE = 64
EX_NOINPUT = 66
EX_IOERR = 74

IMAGE_SUFFIXES = (".pgm", ".png")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _system_names():
    return "|".join(s.value for s in System)


def _add_codec_args(p):
    p.add_argument("--system", required=True, help=f"number system ({_system_names()})")
    p.add_argument("--plane", type=int, required=True, help="1-based bit-plane, 1 = least significant")
    p.add_argument("--key", default="0", help="64-bit key, decimal or 0x-hex (default 0)")
    p.add_argument("--framing", default="length", choices=["length", "raw"],
                   help="length: 32-bit big-endian bit count first (default); raw: no header")


def _add_experiment_args(p):
    p.add_argument("images", nargs="?", help="directory of .pgm/.png covers")
    p.add_argument("--synth", metavar="KIND:SEED:WxH",
                   help="synthetic covers instead of a directory (kind: zero|gradient|uniform)")
    p.add_argument("--count", type=int, default=1,
                   help="number of synthetic covers; seeds SEED..SEED+COUNT-1 (default 1)")
    p.add_argument("--system", default="all",
                   help=f"comma-separated systems or 'all' ({_system_names()})")
    p.add_argument("--planes", default="1-8", help="planes as a range or list, e.g. 1-8 or 1,3 (default 1-8)")
    p.add_argument("--key", default="0",
                   help="64-bit key for pixel order and secret bits (capacity does not depend on it)")
    p.add_argument("--out", required=True, help="CSV report path, or - for standard output")


def build_parser():
    parser = _Parser(prog="planestego", description="Bit-plane steganography over positional number systems.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("embed", help="hide a message file in a cover image")
    p.add_argument("cover")
    p.add_argument("message")
    p.add_argument("--out", required=True, help="stego image path (.pgm or .png)")
    _add_codec_args(p)

    p = sub.add_parser("extract", help="recover a message file from a stego image")
    p.add_argument("stego")
    p.add_argument("--out", required=True, help="recovered message path")
    p.add_argument("--raw-length", type=int, help="message length in bits (required with --framing raw)")
    _add_codec_args(p)

    p = sub.add_parser("capacity", help="per-plane capacity report")
    _add_experiment_args(p)

    p = sub.add_parser("quality", help="per-plane PSNR report at full capacity")
    _add_experiment_args(p)
    p.add_argument("--payload-bits", type=int,
                   help="embed at most this many bits per cell instead of full capacity")
    p.add_argument("--avg-out", help="also write per-(system, plane) PSNR averages here")

    p = sub.add_parser("compare", help="capacity and quality comparison summary")
    _add_experiment_args(p)

    p = sub.add_parser("table", help="print canonical decompositions")
    p.add_argument("system", help=_system_names())
    p.add_argument("lo", type=int)
    p.add_argument("hi", type=int)
    return parser


def parse_planes(text):
    planes = set()
    try:
        for part in text.split(","):
            if "-" in part:
                a, b = part.split("-", 1)
                planes.update(range(int(a), int(b) + 1))
            else:
                planes.add(int(part))
    except ValueError:
        raise UsageError(f"bad plane list {text!r}") from None
    if not planes or min(planes) < 1:
        raise UsageError(f"bad plane list {text!r}")
    return sorted(planes)


def parse_systems(text):
    if text.strip().lower() == "all":
        return list(System)
    return [get_system(t) for t in text.split(",") if t.strip()]


def parse_synth(spec, count):
    try:
        kind, seed, size = spec.split(":")
        w, h = (int(x) for x in size.lower().split("x"))
        kind = SynthKind(kind.lower())
        seed = check_key(seed)
    except (ValueError, RangeError):
        raise UsageError(f"bad --synth {spec!r}; expected KIND:SEED:WxH") from None
    if count < 0:
        raise UsageError("--count must be >= 0")
    if w < 1 or h < 1:
        raise UsageError(f"bad --synth size {size!r}")
    return {
        f"{kind.value}_{seed + i}": synth_image(kind, w, h, seed + i)
        for i in range(count)
    }


def load_directory(path):
    names = sorted(n for n in os.listdir(path) if n.lower().endswith(IMAGE_SUFFIXES))
    return {n: load_image(os.path.join(path, n)) for n in names}


def _experiment_images(args):
    if (args.synth is None) == (args.images is None):
        raise UsageError("give either an image directory or --synth")
    if args.synth:
        return parse_synth(args.synth, args.count)
    return load_directory(args.images)


def _write_text(path, text):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n", encoding="ascii") as fh:
            fh.write(text)


def _params(args):
    return EmbedParams(get_system(args.system), args.plane, check_key(args.key),
                       get_framing(args.framing))


def cmd_embed(args):
    params = _params(args)
    cover = load_image(args.cover)
    with open(args.message, "rb") as fh:
        message = bytes_to_bits(fh.read())
    outcome = embed_message(cover, message, params)
    save_image(outcome.stego, args.out)
    print(f"bits_embedded={outcome.bits_embedded}")
    print(f"pixels_visited={outcome.pixels_visited}")
    print(f"pixels_skipped={outcome.pixels_skipped}")
    print(f"capacity={capacity(cover, params.plane, params.system)}")
    print(f"psnr_db={analysis.fmt(analysis.psnr(cover, outcome.stego))}")
    return EX_OK


def cmd_extract(args):
    params = _params(args)
    if params.framing is Framing.RAW and args.raw_length is None:
        raise UsageError("--framing raw needs --raw-length")
    if args.raw_length is not None and args.raw_length < 0:
        raise UsageError("--raw-length must be >= 0")
    stego = load_image(args.stego)
    bits = extract_message(stego, params, args.raw_length)
    with open(args.out, "wb") as fh:
        fh.write(bits_to_bytes(bits))
    print(f"bits_extracted={bits.size}")
    return EX_OK


def _experiment_setup(args):
    check_key(args.key)
    systems = parse_systems(args.system)
    planes = parse_planes(args.planes)
    images = _experiment_images(args)
    if not images:
        print("planestego: no input images", file=sys.stderr)
        return None
    return images, systems, planes


def cmd_capacity(args):
    setup = _experiment_setup(args)
    if setup is None:
        return EX_NOINPUT
    images, systems, planes = setup
    report = analysis.run_capacity_experiment(images, systems, planes)
    _write_text(args.out, report.to_csv())
    return EX_OK


def cmd_quality(args):
    setup = _experiment_setup(args)
    if setup is None:
        return EX_NOINPUT
    images, systems, planes = setup
    if args.payload_bits is not None and args.payload_bits < 0:
        raise UsageError("--payload-bits must be >= 0")
    report = analysis.run_quality_experiment(images, systems, planes, check_key(args.key),
                                             args.payload_bits)
    _write_text(args.out, report.to_csv())
    if args.avg_out:
        _write_text(args.avg_out, report.averages_csv())
    return EX_OK


def cmd_compare(args):
    setup = _experiment_setup(args)
    if setup is None:
        return EX_NOINPUT
    images, systems, planes = setup
    cap = analysis.run_capacity_experiment(images, systems, planes)
    qual = analysis.run_quality_experiment(images, systems, planes, check_key(args.key))
    _write_text(args.out, analysis.comparison_summary(cap, qual).to_text())
    return EX_OK


def cmd_table(args):
    rows = build_table(get_system(args.system), args.lo, args.hi)
    sys.stdout.write(format_table(rows))
    return EX_OK


COMMANDS = {
    "embed": cmd_embed,
    "extract": cmd_extract,
    "capacity": cmd_capacity,
    "quality": cmd_quality,
    "compare": cmd_compare,
    "table": cmd_table,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except CapacityError as exc:
        print(f"planestego: {exc}", file=sys.stderr)
        print(f"required={exc.required} available={exc.available}", file=sys.stderr)
        return EX_DOMAIN
    except (FramingError, TruncationError) as exc:
        print(f"planestego: {exc}", file=sys.stderr)
        return EX_DOMAIN
    except (UsageError, RangeError) as exc:
        print(f"planestego: {exc}", file=sys.stderr)
        return EX_USAGE
    except (OSError, FormatError, CorruptFileError) as exc:
        print(f"planestego: {exc}", file=sys.stderr)
        return EX_IOERR
    except StegoError as exc:
        print(f"planestego: {exc}", file=sys.stderr)
        return EX_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
