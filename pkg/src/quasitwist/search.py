"""Seeded search campaigns over 1- and 2-generator quasi-twisted codes.

The pipeline: for each (m, a) in range, factor x^m - a, enumerate the
constacyclic codes, keep one generator per equivalence class, then pair each
representative with p-polynomials (per policy) and f-vectors (exhaustive,
pooled, or seeded-random) and score the assembled codes by budgeted minimum
distance.  Survivors are appended to a JSON-Lines ledger as CodeRecord rows.

Reproducibility contract: a campaign is a pure function of its config.  Work
items carry sub-seeds derived from the config hash, ledger writes happen in
work-item order regardless of worker count, and timestamps honor
SOURCE_DATE_EPOCH, so reruns are byte-identical.
"""

import csv
import hashlib
import itertools
import json
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, replace
from datetime import datetime, timezone
from pathlib import Path

from .constacyclic import cc_enumerate
from .distance import DEFAULT_BUDGET, min_distance
from .equivalence import partition_all
from .errors import DimensionDefect, PreconditionFailed, TargetTableError
from .fields import field_make
from .linear import is_dual_containing, is_lcd, is_reversible, is_self_orthogonal
from .polys import Poly, binomial, gcd
from .qt import (
    FORMS,
    ONE_GEN,
    TWO_GEN_GENERAL,
    TWO_GEN_IDENTITY_G1,
    TWO_GEN_P1,
    TWO_GEN_SHIFTED,
    qt_assemble,
    spec_1gen,
    spec_2gen,
)
from .tables import parse_coeffs, render_coeffs

RECORD_BREAKING = "record_breaking"
TIES_BKLC = "ties_bklc"
BELOW = "below"
UNKNOWN_TARGET = "unknown_target"

P_FIXED_ONE = "fixed1"
P_DIVISORS = "divisors"
P_DEGREE_CAPPED = "degree_capped"

F_EXHAUSTIVE = "exhaustive"
F_RANDOM = "random"
F_POOL = "pool"

# Sampling must terminate: retries per slot before the work item is logged
# as a gcd-unsatisfiable skip.
_SAMPLE_RETRIES = 200

# Budget for re-deriving a stored record: it only has to reproduce a witness
# and a non-contradicting lower bound, not certify from scratch.
VERIFY_BUDGET = 10**7

_TARGET_HEADER = ["q", "n", "k", "d_best"]


def read_targets(path):
    """Load a best-known-distance table: CSV with header q,n,k,d_best.

    Returns {(q, n, k): d_best}.  Any structural problem (missing file, bad
    header, non-integer cell, conflicting duplicate row) is a
    TargetTableError; the search never limps along with a half-read table.
    """
    try:
        fh = open(path, newline="")
    except OSError as exc:
        raise TargetTableError(f"cannot read target table {path}: {exc}") from exc
    targets = {}
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise TargetTableError(f"{path}: empty target table") from None
        if [h.strip() for h in header] != _TARGET_HEADER:
            raise TargetTableError(
                f"{path}: header must be {','.join(_TARGET_HEADER)}, got {header}"
            )
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 4:
                raise TargetTableError(f"{path}:{lineno}: expected 4 columns")
            try:
                q, n, k, d = (int(c) for c in row)
            except ValueError:
                raise TargetTableError(
                    f"{path}:{lineno}: non-integer cell in {row}"
                ) from None
            key = (q, n, k)
            if key in targets and targets[key] != d:
                raise TargetTableError(f"{path}:{lineno}: conflicting d_best for {key}")
            targets[key] = d
    return targets


@dataclass(frozen=True)
class SearchConfig:
    """Everything a campaign depends on.  The hash of this is the campaign id."""

    q: int
    m_range: tuple
    ell_range: tuple
    form: str = TWO_GEN_P1
    shift_constants: tuple = None  # element names; None = every nonzero a
    p_policy: str = P_FIXED_ONE
    p_degree_cap: int = None
    p_degree_floor: int = 0  # identity-g1 scheme stops lowering deg g2 here
    f_mode: str = F_RANDOM
    f_degree_bound: int = None  # exhaustive mode: deg f < bound (default deg h)
    f_trials: int = 50  # random mode: vectors per (representative, p)
    f_pool: tuple = ()  # pool mode: tuples of coefficient strings
    exhaustive_cap: int = 2**16
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    probe_budget: int = 10**5
    min_quality_slack: int = 0
    property_floor: int = 3  # keep LCD/dual-containing finds with d >= this
    min_k: int = None
    max_k: int = None
    partition_mode: str = "multiplier"  # multiplier | refined | none
    target_table: str = None

    def __post_init__(self):
        object.__setattr__(self, "m_range", tuple(self.m_range))
        object.__setattr__(self, "ell_range", tuple(self.ell_range))
        if self.shift_constants is not None:
            object.__setattr__(self, "shift_constants", tuple(self.shift_constants))
        object.__setattr__(self, "f_pool", tuple(tuple(e) for e in self.f_pool))

    def validate(self):
        field = field_make(self.q)
        lo, hi = self.m_range
        if not (1 <= lo <= hi):
            raise PreconditionFailed(f"bad m range {self.m_range}")
        lo, hi = self.ell_range
        if not (1 <= lo <= hi):
            raise PreconditionFailed(f"bad ell range {self.ell_range}")
        if self.form not in FORMS:
            raise PreconditionFailed(f"unknown form {self.form!r}")
        if self.p_policy not in (P_FIXED_ONE, P_DIVISORS, P_DEGREE_CAPPED):
            raise PreconditionFailed(f"unknown p policy {self.p_policy!r}")
        if self.p_policy == P_DEGREE_CAPPED and self.p_degree_cap is None:
            raise PreconditionFailed("degree_capped p policy needs p_degree_cap")
        if self.p_policy != P_FIXED_ONE and self.form in (
            ONE_GEN,
            TWO_GEN_P1,
            TWO_GEN_SHIFTED,
        ):
            raise PreconditionFailed(f"form {self.form} pins p = 1")
        if self.f_mode not in (F_EXHAUSTIVE, F_RANDOM, F_POOL):
            raise PreconditionFailed(f"unknown f mode {self.f_mode!r}")
        if self.f_mode == F_EXHAUSTIVE and self.f_degree_bound is not None:
            if self.q**self.f_degree_bound > self.exhaustive_cap:
                raise PreconditionFailed(
                    f"exhaustive sampling over q^{self.f_degree_bound} "
                    f"candidates per slot exceeds cap {self.exhaustive_cap}"
                )
        if self.f_mode == F_POOL and not self.f_pool:
            raise PreconditionFailed("pool f mode needs a nonempty f_pool")
        if self.partition_mode not in ("multiplier", "refined", "none"):
            raise PreconditionFailed(f"unknown partition mode {self.partition_mode!r}")
        if self.shift_constants is not None:
            for name in self.shift_constants:
                if field.index_of_name(name) == 0:
                    raise PreconditionFailed("shift constant must be nonzero")
        return field

    @property
    def config_hash(self):
        blob = json.dumps(asdict(self), sort_keys=True, default=str)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class CodeRecord:
    """One ledger row.  Generators are stored as coefficient strings so the
    record can be re-assembled and re-verified with no other state."""

    q: int
    n: int
    k: int
    d_lower: int
    d_upper: int
    d_status: str  # exact | bounded | budget_exhausted
    a: str
    form: str
    g: str
    p: str
    f1: tuple
    f2: tuple
    properties: tuple
    classification: str
    config_hash: str
    item_id: str
    sub_seed: str
    timestamp: str

    @property
    def dedup_key(self):
        return (self.q, self.n, self.k, self.a, self.g, self.p, self.f1, self.f2)

    @property
    def params(self):
        return f"[{self.n},{self.k},{self.d_upper}]_{self.q}"

    def to_json(self):
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, line):
        obj = json.loads(line)
        obj["f1"] = tuple(obj["f1"])
        obj["f2"] = tuple(obj["f2"])
        obj["properties"] = tuple(obj["properties"])
        return cls(**obj)


def classify(record, targets):
    """Compare a record's distance against the best-known table.

    The comparison uses d_upper, the weight of an actual codeword; whether
    that value is certified exact is what d_status is for.  A missing
    (q, n, k) key classifies as unknown_target rather than guessing.
    """
    best = targets.get((record.q, record.n, record.k))
    if best is None:
        return UNKNOWN_TARGET
    if record.d_upper > best:
        return RECORD_BREAKING
    if record.d_upper == best:
        return TIES_BKLC
    return BELOW


class Ledger:
    """Append-only CodeRecord sequence with write-through JSONL persistence.

    Records are never mutated; duplicates (same field, parameters, and
    generator strings) are dropped at add() time.
    """

    def __init__(self, path=None):
        self.path = Path(path) if path is not None else None
        self.records = []
        self._seen = set()
        self.stats = None
        if self.path is not None and self.path.exists():
            for line in self.path.read_text().splitlines():
                if line.strip():
                    self._absorb(CodeRecord.from_json(line))

    def _absorb(self, record):
        key = record.dedup_key
        if key in self._seen:
            return False
        self._seen.add(key)
        self.records.append(record)
        return True

    def add(self, record):
        fresh = self._absorb(record)
        if fresh and self.path is not None:
            with open(self.path, "a") as fh:
                fh.write(record.to_json() + "\n")
        return fresh

    def __iter__(self):
        return iter(self.records)

    def __len__(self):
        return len(self.records)

    def write(self, path):
        with open(path, "w") as fh:
            for record in self.records:
                fh.write(record.to_json() + "\n")


def _timestamp():
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    t = int(epoch) if epoch is not None else int(time.time())
    return datetime.fromtimestamp(t, tz=timezone.utc).isoformat()


def spec_from_record(record):
    """Rebuild the generator spec from a ledger row's stored strings."""
    field = field_make(record.q)
    a = field.index_of_name(record.a)
    m = record.n // len(record.f1)
    g = parse_coeffs(record.g, field)
    p = parse_coeffs(record.p, field)
    f1 = tuple(parse_coeffs(s, field) for s in record.f1)
    if record.form == ONE_GEN:
        return spec_1gen(field, m, a, g, f1)
    if record.form == TWO_GEN_SHIFTED:
        return spec_2gen(field, m, a, g, p, f1, (), form=TWO_GEN_SHIFTED)
    f2 = tuple(parse_coeffs(s, field) for s in record.f2)
    return spec_2gen(field, m, a, g, p, f1, f2, form=record.form)


def verify_record(record, budget=VERIFY_BUDGET):
    """Re-derive a ledger row from its stored generators.

    Checks that the assembled code has exactly the stored (n, k) and that a
    fresh distance run never contradicts the stored bounds: the new witness
    cannot beat d_lower, the new lower bound cannot exceed d_upper, and an
    exact stored d must be reproduced when the recheck also certifies.
    """
    spec = spec_from_record(record)
    code = qt_assemble(spec)
    if code.n != record.n or code.rank != record.k:
        return False
    res = min_distance(code.matrix, budget=budget)
    if res.upper < record.d_lower or res.lower > record.d_upper:
        return False
    if res.is_exact and record.d_status == "exact" and res.upper != record.d_upper:
        return False
    return True


@dataclass(frozen=True)
class _WorkItem:
    index: int
    item_id: str
    m: int
    a: int
    ell: int
    g: Poly
    sub_seed: str


@dataclass
class CampaignStats:
    items: int = 0
    candidates: int = 0
    rank_defects: int = 0
    precondition_skips: int = 0
    pruned_by_probe: int = 0
    emitted: int = 0
    gcd_unsatisfiable: int = 0
    oversize_skips: int = 0

    def merge(self, other):
        for name, value in vars(other).items():
            setattr(self, name, getattr(self, name) + value)


def _representatives(field, m, a, mode):
    if mode == "none":
        return [c.g for c in cc_enumerate(field, m, a)]
    classes = partition_all(field, m, a, mode=mode)
    return [cls.representative for cls in classes]


def _work_items(config, field):
    """Deterministic campaign work list: one item per (m, a, ell, generator).

    The generator is g for most forms; for the identity-g1 scheme the
    enumerated object is g2 itself, so the representative plays that role.
    """
    items = []
    h = config.config_hash
    m_lo, m_hi = config.m_range
    ell_lo, ell_hi = config.ell_range
    for m in range(m_lo, m_hi + 1):
        if config.shift_constants is None:
            shift = list(range(1, field.q))
        else:
            shift = [field.index_of_name(s) for s in config.shift_constants]
        for a in shift:
            reps = _representatives(field, m, a, config.partition_mode)
            for ell in range(ell_lo, ell_hi + 1):
                for ri, g in enumerate(reps):
                    item_id = f"m{m}-a{field.names[a]}-l{ell}-r{ri:03d}"
                    sub = hashlib.sha256(f"{h}:{item_id}".encode()).hexdigest()
                    items.append(_WorkItem(len(items), item_id, m, a, ell, g, sub))
    return items


def _p_candidates(config, field, item):
    """The p polynomials to pair with one representative."""
    one = Poly.one(field)
    if config.form in (ONE_GEN, TWO_GEN_P1, TWO_GEN_SHIFTED):
        return [one]
    if config.form == TWO_GEN_IDENTITY_G1:
        # g2 = p is the enumerated representative itself.
        p = item.g
        if p.degree < config.p_degree_floor:
            return []
        if config.p_policy == P_DEGREE_CAPPED and p.degree > config.p_degree_cap:
            return []
        return [p]
    mod = binomial(field, item.m, item.a)
    h1 = mod // item.g
    if config.p_policy == P_FIXED_ONE:
        return [one]
    out = []
    for c in cc_enumerate(field, item.m, item.a):
        p = c.g
        if not (h1 % p).is_zero:
            continue
        if p.degree == h1.degree:
            continue  # p*g = x^m - a leaves no second block
        if config.p_policy == P_DEGREE_CAPPED and p.degree > config.p_degree_cap:
            continue
        out.append(p)
    # Highest degree first: the scheme starts with the largest p and lowers it.
    out.sort(key=lambda p: (-int(p.degree), p.sort_key()))
    return out


def _valid_f(f, h):
    return f.degree < h.degree and gcd(f, h).degree == 0


def _sample_f(rng, field, h):
    """One polynomial with deg f < deg h and gcd(f, h) = 1, or None."""
    d = int(h.degree)
    if d == 0:
        return None
    for _ in range(_SAMPLE_RETRIES):
        f = Poly(field, tuple(rng.randrange(field.q) for _ in range(d)))
        if _valid_f(f, h):
            return f
    return None


def _exhaustive_slot(field, h, bound):
    """Every valid f for one slot, in coefficient order."""
    d = int(h.degree) if bound is None else min(bound, int(h.degree))
    out = []
    for idx in range(field.q**d):
        coeffs = []
        t = idx
        for _ in range(d):
            coeffs.append(t % field.q)
            t //= field.q
        f = Poly(field, tuple(coeffs))
        if _valid_f(f, h):
            out.append(f)
    return out


def _f_vectors(config, field, item, p, rng, stats):
    """Yield (f1, f2) candidate tuples for one (representative, p) pair."""
    mod = binomial(field, item.m, item.a)
    g = item.g if config.form != TWO_GEN_IDENTITY_G1 else Poly.one(field)
    h1 = mod // g
    two_rows = config.form not in (ONE_GEN, TWO_GEN_SHIFTED)
    h2 = mod // (p * g) if two_rows else None
    ell = item.ell
    zero = Poly(field, ())

    if config.f_mode == F_POOL:
        want = 2 * ell if two_rows else ell
        for entry in config.f_pool:
            if len(entry) != want:
                continue
            try:
                polys = tuple(parse_coeffs(s, field) for s in entry)
            except Exception:
                continue
            yield polys[:ell], polys[ell:]
        return

    if config.f_mode == F_EXHAUSTIVE:
        bound = config.f_degree_bound
        eff = int(h1.degree) if bound is None else min(bound, int(h1.degree))
        if field.q**eff > config.exhaustive_cap:
            stats.oversize_skips += 1
            return
        slots = [_exhaustive_slot(field, h1, bound)] * ell
        if two_rows:
            slot2 = _exhaustive_slot(field, h2, bound)
            # The second row's leading block is conventionally zero (the
            # staircase shape); keep it as the first choice.
            slots = slots + [[zero] + slot2] + [slot2] * (ell - 1)
        for combo in itertools.product(*slots):
            yield tuple(combo[:ell]), tuple(combo[ell:])
        return

    # Seeded random mode.
    for _ in range(config.f_trials):
        f1 = tuple(_sample_f(rng, field, h1) for _ in range(ell))
        if any(f is None for f in f1):
            stats.gcd_unsatisfiable += 1
            return
        if not two_rows:
            yield f1, ()
            continue
        f2 = []
        for j in range(ell):
            if j == 0 and rng.randrange(2):
                f2.append(zero)  # zero leading block, half the time
                continue
            f2.append(_sample_f(rng, field, h2))
        if any(f is None for f in f2):
            stats.gcd_unsatisfiable += 1
            return
        yield f1, tuple(f2)


def _build_spec(config, field, item, p, f1, f2):
    one = Poly.one(field)
    if config.form == ONE_GEN:
        return spec_1gen(field, item.m, item.a, item.g, f1)
    if config.form == TWO_GEN_SHIFTED:
        return spec_2gen(field, item.m, item.a, item.g, one, f1, (), form=TWO_GEN_SHIFTED)
    if config.form == TWO_GEN_IDENTITY_G1:
        return spec_2gen(field, item.m, item.a, one, p, f1, f2, form=TWO_GEN_IDENTITY_G1)
    if config.form == TWO_GEN_P1:
        return spec_2gen(field, item.m, item.a, item.g, one, f1, f2, form=TWO_GEN_P1)
    return spec_2gen(field, item.m, item.a, item.g, p, f1, f2, form=TWO_GEN_GENERAL)


def _property_flags(G):
    flags = []
    if is_lcd(G):
        flags.append("lcd")
    if is_dual_containing(G):
        flags.append("dual_containing")
    if is_self_orthogonal(G):
        flags.append("self_orthogonal")
    if is_reversible(G):
        flags.append("reversible")
    return tuple(flags)


def _process_item(config, field, item, targets):
    """All CodeRecords one work item produces, in deterministic order."""
    rng = random.Random(int(item.sub_seed, 16))
    stats = CampaignStats(items=1)
    out = []
    for p in _p_candidates(config, field, item):
        for f1, f2 in _f_vectors(config, field, item, p, rng, stats):
            stats.candidates += 1
            spec = _build_spec(config, field, item, p, f1, f2)
            try:
                spec.validate()
            except PreconditionFailed:
                stats.precondition_skips += 1
                continue
            try:
                code = qt_assemble(spec)
            except DimensionDefect:
                stats.rank_defects += 1
                continue
            k = code.rank
            if config.min_k is not None and k < config.min_k:
                continue
            if config.max_k is not None and k > config.max_k:
                continue
            best = targets.get((config.q, code.n, k))
            flags = _property_flags(code.matrix)
            keep_flags = "lcd" in flags or "dual_containing" in flags

            # Phase one: a cheap enumeration pass just to find codewords.  A
            # witness below the target sinks the candidate before the
            # certified phase spends real budget on it.
            res = min_distance(
                code.matrix, budget=min(config.probe_budget, config.budget)
            )
            if best is not None and res.upper < best - config.min_quality_slack:
                if not (keep_flags and res.upper >= config.property_floor):
                    stats.pruned_by_probe += 1
                    continue
            if not res.is_exact:
                res = min_distance(code.matrix, budget=config.budget)
                if best is not None and res.upper < best - config.min_quality_slack:
                    if not (keep_flags and res.upper >= config.property_floor):
                        stats.pruned_by_probe += 1
                        continue

            record = CodeRecord(
                q=config.q,
                n=code.n,
                k=k,
                d_lower=res.lower,
                d_upper=res.upper,
                d_status=res.status,
                a=field.names[item.a],
                form=config.form,
                g=render_coeffs(spec.g),
                p=render_coeffs(spec.p),
                f1=tuple(render_coeffs(f) for f in spec.f1),
                f2=tuple(render_coeffs(f) for f in spec.f2),
                properties=flags,
                classification="",
                config_hash=config.config_hash,
                item_id=item.item_id,
                sub_seed=item.sub_seed[:16],
                timestamp=_timestamp(),
            )
            record = replace(record, classification=classify(record, targets))
            out.append(record)
    return out, stats


def run_campaign(config, ledger_path=None, checkpoint_path=None, workers=1):
    """Run a search campaign; returns the Ledger of emitted records.

    Resume: if checkpoint_path names a file holding a work-item id, items up
    to and including it are skipped and the existing ledger is extended.
    Worker count affects scheduling only; ledger contents and order are a
    function of the config alone.
    """
    field = config.validate()
    targets = read_targets(config.target_table) if config.target_table else {}
    items = _work_items(config, field)
    ledger = Ledger(ledger_path)
    stats = CampaignStats()

    done_through = -1
    if checkpoint_path is not None and Path(checkpoint_path).exists():
        text = Path(checkpoint_path).read_text().strip()
        by_id = {it.item_id: it.index for it in items}
        if text in by_id:
            done_through = by_id[text]
    pending = [it for it in items if it.index > done_through]

    def handle(item, records, item_stats):
        for record in records:
            if ledger.add(record):
                stats.emitted += 1
        stats.merge(item_stats)
        if checkpoint_path is not None:
            Path(checkpoint_path).write_text(item.item_id + "\n")

    if workers <= 1:
        for item in pending:
            records, item_stats = _process_item(config, field, item, targets)
            handle(item, records, item_stats)
    else:
        # Items are independent; the appender consumes results in submission
        # order, so parallel runs write the same bytes as serial ones.
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                (item, pool.submit(_process_item, config, field, item, targets))
                for item in pending
            ]
            for item, fut in futures:
                records, item_stats = fut.result()
                handle(item, records, item_stats)

    ledger.stats = stats
    return ledger
