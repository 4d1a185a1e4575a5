"""Distortion metrics and the capacity / quality experiments."""
import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import StructuralError
from .numsys import System, get_codec, get_system
from .prng import SplitMix64, random_bits
from .stego import EmbedParams, Framing, capacity, embed_message
from .validation import check_gray_image, check_key, check_same_shape

PEAK = 255.0
DEFAULT_PLANES = tuple(range(1, 9))
CAPACITY_HEADER = ("image", "system", "plane", "capacity_bits", "total_pixels", "capacity_fraction")
QUALITY_HEADER = ("image", "system", "plane", "bits_embedded", "mse", "psnr_db")
AVERAGE_HEADER = ("system", "plane", "mean_psnr_db", "images", "inf_images")


def fmt(x):
    """Six significant digits; infinite PSNR renders as ``INF``."""
    if math.isinf(x):
        return "INF"
    return f"{x:.6g}"


def mse(a, b):
    a = check_gray_image(a, "a")
    b = check_gray_image(b, "b")
    check_same_shape(a, b)
    d = a.astype(np.float64) - b.astype(np.float64)
    return float(np.mean(d * d))


def psnr(a, b):
    """Peak signal-to-noise ratio in dB with peak 255; ``inf`` for identical images."""
    err = mse(a, b)
    if err == 0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / err)


def _images(images):
    items = list(images.items()) if hasattr(images, "items") else list(images)
    if not items:
        raise StructuralError("image set is empty")
    out = [(str(name), check_gray_image(img, str(name))) for name, img in items]
    names = [n for n, _ in out]
    if len(set(names)) != len(names):
        raise StructuralError("image ids must be unique")
    return sorted(out, key=lambda t: t[0])


def _grid(systems, planes):
    systems = sorted({get_system(s) for s in (systems or System)}, key=lambda s: s.order)
    planes = sorted(set(planes))
    for s in systems:
        for p in planes:
            if p <= s.plane_count:
                yield s, p


@dataclass(frozen=True)
class CapacityRow:
    image: str
    system: System
    plane: int
    capacity_bits: int
    total_pixels: int

    @property
    def capacity_fraction(self):
        return self.capacity_bits / self.total_pixels


@dataclass(frozen=True)
class QualityRow:
    image: str
    system: System
    plane: int
    bits_embedded: int
    mse: float
    psnr_db: float


@dataclass(frozen=True)
class QualityAverage:
    system: System
    plane: int
    mean_psnr_db: float
    images: int
    inf_images: int


def _write(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


@dataclass
class CapacityReport:
    rows: list = field(default_factory=list)

    def to_csv(self):
        return _write(CAPACITY_HEADER, (
            (r.image, r.system.value, r.plane, r.capacity_bits, r.total_pixels,
             fmt(r.capacity_fraction))
            for r in self.rows
        ))

    def cell(self, image, system, plane):
        system = get_system(system)
        for r in self.rows:
            if (r.image, r.system, r.plane) == (image, system, plane):
                return r
        raise KeyError((image, system, plane))

    @property
    def images(self):
        return sorted({r.image for r in self.rows})


@dataclass
class QualityReport:
    rows: list = field(default_factory=list)
    payload_bits: int = None

    def averages(self):
        """Arithmetic mean PSNR per (system, plane); infinite rows are excluded and counted."""
        groups = {}
        for r in self.rows:
            groups.setdefault((r.system, r.plane), []).append(r.psnr_db)
        out = []
        for (system, plane), vals in sorted(groups.items(), key=lambda kv: (kv[0][0].order, kv[0][1])):
            finite = [v for v in vals if not math.isinf(v)]
            mean = sum(finite) / len(finite) if finite else math.inf
            out.append(QualityAverage(system, plane, mean, len(vals), len(vals) - len(finite)))
        return out

    def average(self, system, plane):
        system = get_system(system)
        for a in self.averages():
            if (a.system, a.plane) == (system, plane):
                return a.mean_psnr_db
        raise KeyError((system, plane))

    def to_csv(self):
        header = QUALITY_HEADER
        extra = ()
        if self.payload_bits is not None:
            header = header + ("payload",)
            extra = (f"fixed:{self.payload_bits}",)
        return _write(header, (
            (r.image, r.system.value, r.plane, r.bits_embedded, fmt(r.mse), fmt(r.psnr_db)) + extra
            for r in self.rows
        ))

    def averages_csv(self):
        return _write(AVERAGE_HEADER, (
            (a.system.value, a.plane, fmt(a.mean_psnr_db), a.images, a.inf_images)
            for a in self.averages()
        ))

    @property
    def images(self):
        return sorted({r.image for r in self.rows})


def run_capacity_experiment(images, systems=None, planes=DEFAULT_PLANES):
    """Embeddable-pixel count for every (image, system, plane).

    ``images`` is a mapping or an iterable of ``(id, array)`` pairs. Planes
    beyond a system's plane count are omitted.
    """
    rows = []
    for name, img in _images(images):
        for system, plane in _grid(systems, planes):
            rows.append(CapacityRow(name, system, plane, capacity(img, plane, system), img.size))
    return CapacityReport(rows)


def payload_seed(key):
    """Seed of the secret-bit stream, derived from the experiment key."""
    return SplitMix64(check_key(key) ^ 0x5EC12E7B175).next()


def run_quality_experiment(images, systems=None, planes=DEFAULT_PLANES, key=0,
                           payload_bits=None):
    """Embed pseudorandom secret bits and measure the distortion.

    By default every cell is filled to its own capacity, so systems are
    compared at their respective maxima. With ``payload_bits`` each cell
    embeds ``min(payload_bits, capacity)`` bits instead. All cells draw their
    secret bits as prefixes of one stream derived from ``key``.
    """
    key = check_key(key)
    imgs = _images(images)
    longest = max(img.size for _, img in imgs)
    secret = random_bits(payload_seed(key), longest)
    rows = []
    for name, img in imgs:
        for system, plane in _grid(systems, planes):
            params = EmbedParams(system, plane, key, Framing.RAW)
            n = capacity(img, plane, system)
            if payload_bits is not None:
                n = min(n, int(payload_bits))
            outcome = embed_message(img, secret[:n], params)
            err = mse(img, outcome.stego)
            rows.append(QualityRow(
                name, system, plane, outcome.bits_embedded, err,
                math.inf if err == 0 else 10.0 * math.log10(PEAK * PEAK / err),
            ))
    return QualityReport(rows, payload_bits)


def mse_bound(system, plane, bits_embedded, total_pixels):
    """Largest MSE possible when every embedded bit changes its pixel."""
    w = get_codec(system).weights[plane - 1]
    return float(w * w) * bits_embedded / total_pixels


@dataclass
class Comparison:
    """Measured counterpart of the usual per-system comparison table.

    ``usable[system]`` is ``(every pixel usable at plane 1, every pixel usable
    at all other planes tested)``; ``rankings[plane]`` lists systems by
    decreasing average PSNR.
    """

    usable: dict
    rankings: dict

    def to_text(self):
        yes = {True: "Yes", False: "No"}
        lines = ["system,every_pixel_plane1,every_pixel_other_planes"]
        for s, (first, other) in self.usable.items():
            lines.append(f"{s.value},{yes[first]},{yes[other]}")
        lines.append("")
        lines.append("plane,psnr_ranking")
        for plane, order in self.rankings.items():
            lines.append(f"{plane},{'>'.join(s.value for s in order)}")
        return "\n".join(lines) + "\n"


def comparison_summary(capacity_report, quality_report):
    if capacity_report.images != quality_report.images:
        raise StructuralError("capacity and quality reports cover different images")
    full = {}
    for r in capacity_report.rows:
        first, other = full.get(r.system, (True, True))
        ok = r.capacity_bits == r.total_pixels
        if r.plane == 1:
            first = first and ok
        else:
            other = other and ok
        full[r.system] = (first, other)
    usable = {s: full[s] for s in sorted(full, key=lambda s: s.order)}

    rankings = {}
    for a in sorted(quality_report.averages(), key=lambda a: a.plane):
        rankings.setdefault(a.plane, []).append(a)
    rankings = {
        p: [a.system for a in sorted(avgs, key=lambda a: (-a.mean_psnr_db, a.system.order))]
        for p, avgs in rankings.items()
    }
    return Comparison(usable, rankings)
