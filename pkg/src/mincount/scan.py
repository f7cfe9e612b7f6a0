"""Empirical minimizer buckets from FASTA/FASTQ input and comparison with theory."""

from __future__ import annotations

import bz2
import gzip
import logging
import lzma
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Iterator, Optional, Sequence

from .alphabet import DNA, Alphabet, Word, rank_phi, word_from_code
from .errors import InvalidInputError
from .picount import fmt_float, log_sigma, pi_exact

log = logging.getLogger(__name__)

COMPARE_HEADER = ("minimizer", "rank_phi", "pi_hat", "pi_exact", "log4_f_hat", "log4_f_theory")


@dataclass(frozen=True)
class ScanConfig:
    k: int
    m: int
    alphabet: Alphabet = DNA
    distinct: bool = False

    def __post_init__(self):
        if not 1 <= self.m <= self.k:
            raise InvalidInputError(f"need k >= m >= 1, got k={self.k}, m={self.m}")


def _alphabet_from_meta(meta: dict) -> Alphabet:
    # only the letter order is stored; the default order gets the DNA complement back
    order = meta.get("alphabet", str(DNA))
    return DNA if order == str(DNA) else Alphabet(tuple(order))


@dataclass
class EmpiricalPartition:
    k: int
    m: int
    alphabet: Alphabet = DNA
    counts: dict[Word, int] = field(default_factory=dict)
    total_kmers: int = 0

    @property
    def distinct_minimizers(self) -> int:
        return len(self.counts)

    def to_csv(self, out: IO[str]):
        out.write(f"# k={self.k}\n# m={self.m}\n# total_kmers={self.total_kmers}\n# alphabet={self.alphabet}\n")
        out.write("minimizer,pi_hat\n")
        for w in sorted(self.counts, key=lambda w: w.letters):
            out.write(f"{w},{self.counts[w]}\n")

    @classmethod
    def from_csv(cls, src: IO[str], alphabet: Optional[Alphabet] = None) -> "EmpiricalPartition":
        meta, counts = {}, {}
        header_seen = False
        for lineno, line in enumerate(src, 1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition("=")
                meta[key.strip()] = value.strip()
                continue
            if not header_seen:
                if line != "minimizer,pi_hat":
                    raise InvalidInputError(f"line {lineno}: expected header 'minimizer,pi_hat'")
                header_seen = True
                continue
            if alphabet is None:
                alphabet = _alphabet_from_meta(meta)
            try:
                word, n = line.split(",")
                counts[alphabet.word(word)] = int(n)
            except ValueError as exc:
                raise InvalidInputError(f"line {lineno}: bad row {line!r}") from exc
        try:
            k, m = int(meta["k"]), int(meta["m"])
        except (KeyError, ValueError) as exc:
            raise InvalidInputError("empirical CSV lacks '# k=' / '# m=' metadata") from exc
        alphabet = alphabet or _alphabet_from_meta(meta)
        total = int(meta.get("total_kmers", sum(counts.values())))
        if total != sum(counts.values()):
            raise InvalidInputError("total_kmers does not match the sum of pi_hat")
        return cls(k, m, alphabet, counts, total)


@dataclass(frozen=True)
class ComparisonRow:
    minimizer: Word
    rank_phi: int
    pi_hat: int
    pi_exact: int
    log_f_hat: float
    log_f_theory: float

    def as_fields(self) -> list[str]:
        return [
            str(self.minimizer), str(self.rank_phi), str(self.pi_hat), str(self.pi_exact),
            fmt_float(self.log_f_hat), fmt_float(self.log_f_theory),
        ]


@dataclass(frozen=True)
class ParseError:
    source: str
    line: int
    message: str

    def __str__(self):
        return f"{self.source}:{self.line}: {self.message}"


@dataclass(frozen=True)
class Record:
    name: str
    sequence: str


def open_text(path: str | Path) -> IO[str]:
    """Open a possibly compressed text file, choosing the codec by suffix."""
    path = str(path)
    if path.endswith(".gz"):
        return gzip.open(path, "rt")
    if path.endswith(".bz2"):
        return bz2.open(path, "rt")
    if path.endswith(".xz"):
        return lzma.open(path, "rt")
    return open(path)


def read_records(lines: Iterable[str], source: str = "<input>", errors: Optional[list] = None) -> Iterator[Record]:
    """Parse FASTA or FASTQ, sniffed from the first non-blank line.

    Malformed records are reported into ``errors`` (or logged) and skipped.
    """
    errors = errors if errors is not None else []

    def bad(lineno, msg):
        err = ParseError(source, lineno, msg)
        errors.append(err)
        log.warning("%s", err)

    it = enumerate(lines, 1)
    for lineno, line in it:
        if line.strip():
            first = (lineno, line.rstrip("\r\n"))
            break
    else:
        return
    if first[1].startswith(">"):
        yield from _fasta(first, it, bad)
    elif first[1].startswith("@"):
        yield from _fastq(first, it, bad)
    else:
        bad(first[0], "expected '>' or '@' at the start of the input")


def _fasta(first, it, bad) -> Iterator[Record]:
    name, chunks = first[1][1:].strip(), []
    for lineno, line in it:
        line = line.strip()
        if line.startswith(">"):
            yield Record(name, "".join(chunks))
            name, chunks = line[1:].strip(), []
        elif line.startswith(";"):
            continue
        elif line:
            chunks.append(line)
    yield Record(name, "".join(chunks))


def _fastq(first, it, bad) -> Iterator[Record]:
    pending = first
    while pending is not None:
        lineno, header = pending
        pending = None
        if not header.startswith("@"):
            bad(lineno, "expected '@' header line")
            # resynchronise on the next header
            for lineno, line in it:
                if line.startswith("@"):
                    pending = (lineno, line.rstrip("\r\n"))
                    break
            continue
        body = []
        for _ in range(3):
            nxt = next(it, None)
            if nxt is None:
                break
            body.append((nxt[0], nxt[1].rstrip("\r\n")))
        if len(body) < 3:
            bad(lineno, "truncated FASTQ record")
            return
        (_, seq), (pl, plus), (ql, qual) = body
        if not plus.startswith("+"):
            bad(pl, "expected '+' separator line")
        elif len(qual) != len(seq):
            bad(ql, f"quality length {len(qual)} differs from sequence length {len(seq)}")
        else:
            yield Record(header[1:].strip(), seq.strip())
        for lineno, line in it:
            if line.strip():
                pending = (lineno, line.rstrip("\r\n"))
                break


def _valid_runs(seq: str, alphabet: Alphabet) -> Iterator[list[int]]:
    """Maximal stretches of alphabet letters, as letter indices."""
    index = {s: i for i, s in enumerate(alphabet.symbols)}
    run = []
    for ch in seq.upper():
        code = index.get(ch)
        if code is None:
            if run:
                yield run
            run = []
        else:
            run.append(code)
    if run:
        yield run


def window_minimizers(run: Sequence[int], k: int, m: int, sigma: int) -> Iterator[tuple[int, int]]:
    """(minimizer code, k-mer code) for each length-k window of ``run``.

    m-mer codes are rolled in O(1) and the minimum is kept in a monotone deque,
    so a run of length L costs O(L).
    """
    if len(run) < k:
        return
    mod_m, mod_k = sigma ** m, sigma ** k
    q: deque[tuple[int, int]] = deque()  # (position, code), codes increasing
    mcode = kcode = 0
    for pos, a in enumerate(run):
        mcode = (mcode * sigma + a) % mod_m
        kcode = (kcode * sigma + a) % mod_k
        start = pos - m + 1
        if start < 0:
            continue
        # strict '>' keeps an earlier equal code in front, i.e. leftmost minimum
        while q and q[-1][1] > mcode:
            q.pop()
        q.append((start, mcode))
        first = pos - k + 1
        if first < 0:
            continue
        while q[0][0] < first:
            q.popleft()
        yield q[0][1], kcode


def _count_records(args) -> tuple[Counter, int]:
    seqs, k, m, alphabet = args
    counts, total = Counter(), 0
    for seq in seqs:
        for run in _valid_runs(seq, alphabet):
            for code, _ in window_minimizers(run, k, m, alphabet.size):
                counts[code] += 1
                total += 1
    return counts, total


def _batches(records: Iterable[Record], size: int = 256) -> Iterator[list[str]]:
    batch = []
    for rec in records:
        batch.append(rec.sequence)
        if len(batch) >= size:
            yield batch
            batch = []
    if batch:
        yield batch


def scan_sequences(config: ScanConfig, records: Iterable[Record], workers: int = 1) -> EmpiricalPartition:
    """Bucket every valid k-mer window by its minimizer.

    Windows containing a symbol outside the alphabet are skipped and windows
    never span records.  By default every occurrence counts; with
    ``config.distinct`` each distinct k-mer counts once (single process).
    """
    k, m, alphabet = config.k, config.m, config.alphabet
    codes: Counter = Counter()
    total = 0
    if config.distinct:
        seen = set()
        for rec in records:
            for run in _valid_runs(rec.sequence, alphabet):
                for code, kcode in window_minimizers(run, k, m, alphabet.size):
                    if kcode not in seen:
                        seen.add(kcode)
                        codes[code] += 1
        total = len(seen)
    else:
        jobs = ((batch, k, m, alphabet) for batch in _batches(records))
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(_count_records, jobs))
        else:
            parts = map(_count_records, jobs)
        # Counter addition is associative, so the merge order is irrelevant
        for c, n in parts:
            codes.update(c)
            total += n
    counts = {word_from_code(alphabet, c, m): n for c, n in sorted(codes.items())}
    return EmpiricalPartition(k, m, alphabet, counts, total)


def scan_files(config: ScanConfig, paths: Sequence[str | Path], workers: int = 1,
               errors: Optional[list] = None) -> EmpiricalPartition:
    def records():
        for path in paths:
            with open_text(path) as fh:
                yield from read_records(fh, str(path), errors)

    return scan_sequences(config, records(), workers)


def compare(partition: EmpiricalPartition) -> Iterator[ComparisonRow]:
    """One row per observed minimizer, in lexicographic order."""
    sigma, k = partition.alphabet.size, partition.k
    log_total = log_sigma(partition.total_kmers, sigma) if partition.total_kmers else 0.0
    for w in sorted(partition.counts, key=lambda w: w.letters):
        hat = partition.counts[w]
        exact = pi_exact(w, k)
        yield ComparisonRow(
            w, rank_phi(w), hat, exact,
            log_sigma(hat, sigma) - log_total,
            log_sigma(exact, sigma) - k,
        )
