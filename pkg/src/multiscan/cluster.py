"""Coordinator/worker counting over TCP.

The coordinator gives worker ``rank`` of ``W`` the range returned by
:func:`~multiscan.partition.chunk_bounds`, so node ranges overlap by
``m - 1`` characters exactly like thread chunks do. Each worker builds its
own matcher, counts with a local :class:`~multiscan.engine.Engine` and
replies with one COUNT. The coordinator sums the replies.

Input reaches workers either as a path to a file every worker can read
(the file must already be the flat, header-free text) or inline as the
range's bytes.
"""

from __future__ import annotations

import logging
import os
import socket
import socketserver
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import protocol
from .core import PatternSet, TextLike, as_text
from .engine import Engine, make_matcher, reduce_counts
from .partition import chunk_bounds
from .protocol import Assign, Bye, Count, Error, Hello
from .wu_manber import WmParams

log = logging.getLogger(__name__)

LISTEN_ENV = "MULTISCAN_LISTEN"
DEFAULT_LISTEN = "127.0.0.1:7878"


def parse_address(addr: str) -> tuple[str, int]:
    host, sep, port = addr.rpartition(":")
    if not sep or not port.isdigit():
        raise ValueError(f"address {addr!r} is not HOST:PORT")
    return host or "127.0.0.1", int(port)


def _load_range(job: Assign) -> np.ndarray:
    if job.source == "inline":
        if len(job.data) != job.stop - job.start:
            raise ValueError(f"inline data holds {len(job.data)} bytes, range needs "
                             f"{job.stop - job.start}")
        return as_text(job.data)
    size = os.path.getsize(job.path)
    if job.stop > size:
        raise ValueError(f"range stop {job.stop} exceeds length {size} of {job.path}")
    if job.start > job.stop:
        raise ValueError(f"range start {job.start} > stop {job.stop}")
    with open(job.path, "rb") as fh:
        fh.seek(job.start)
        data = fh.read(job.stop - job.start)
    if len(data) != job.stop - job.start:
        raise ValueError(f"short read from {job.path}")
    return as_text(data)


def run_assignment(job: Assign) -> Count:
    """Execute one ASSIGN locally and build the COUNT reply."""
    if not job.patterns:
        raise ValueError("ASSIGN carries no patterns")
    t0 = time.perf_counter()
    text = _load_range(job)
    t1 = time.perf_counter()
    params = WmParams(job.B, job.B_prime, job.bitshift) if job.algo == "wm" else None
    matcher = make_matcher(job.algo, PatternSet(job.patterns), params)
    t2 = time.perf_counter()
    with Engine(max(job.worker_count, 1)) as eng:
        per_worker, _ = eng.scan(matcher, text, job.tile_size or None)
    t3 = time.perf_counter()
    total = reduce_counts(per_worker)
    t4 = time.perf_counter()
    return Count(total, t1 - t0, t2 - t1, t3 - t2, t4 - t3)


class _Handler(socketserver.BaseRequestHandler):
    def handle(self):
        sock = self.request
        peer = "%s:%s" % self.client_address[:2]
        while True:
            try:
                msg = protocol.recv_message(sock)
            except protocol.ProtocolError as exc:
                log.warning("protocol error from %s: %s", peer, exc)
                _try_send(sock, Error(f"protocol error: {exc}"))
                return
            except (ConnectionError, OSError) as exc:
                log.info("connection from %s dropped: %s", peer, exc)
                return
            if msg is None or isinstance(msg, Bye):
                return
            if isinstance(msg, Hello):
                reply = Hello(f"multiscan worker pid={os.getpid()}")
            elif isinstance(msg, Assign):
                try:
                    reply = run_assignment(msg)
                except Exception as exc:  # reported to the coordinator, not raised
                    log.warning("assignment rank=%d failed: %s", msg.rank, exc)
                    reply = Error(f"{type(exc).__name__}: {exc}")
            else:
                reply = Error(f"unexpected {type(msg).__name__} message")
            if not _try_send(sock, reply):
                return


def _try_send(sock, msg) -> bool:
    try:
        protocol.send_message(sock, msg)
        return True
    except OSError:
        return False


class WorkerServer(socketserver.ThreadingTCPServer):
    allow_reuse_address = True
    daemon_threads = True

    def __init__(self, address: tuple[str, int]):
        super().__init__(address, _Handler)

    @property
    def address(self) -> str:
        host, port = self.server_address[:2]
        return f"{host}:{port}"

    def start(self) -> threading.Thread:
        """Serve on a daemon thread (for tests and in-process clusters)."""
        th = threading.Thread(target=self.serve_forever, daemon=True)
        th.start()
        return th


def serve_worker(listen: str | None = None) -> None:
    """Serve ASSIGN requests forever on ``listen`` (or ``$MULTISCAN_LISTEN``)."""
    listen = listen or os.environ.get(LISTEN_ENV, DEFAULT_LISTEN)
    with WorkerServer(parse_address(listen)) as server:
        log.info("worker listening on %s", server.address)
        server.serve_forever()


class ClusterError(RuntimeError):
    def __init__(self, rank: int, endpoint: str, reason: str):
        super().__init__(f"node rank={rank} ({endpoint}) failed: {reason}")
        self.rank = rank
        self.endpoint = endpoint


@dataclass
class NodeReport:
    rank: int
    endpoint: str
    start: int
    stop: int
    count: int
    load: float
    preprocess: float
    search: float
    reduce: float
    wall: float


@dataclass
class ClusterResult:
    total: int
    nodes: list[NodeReport]
    reduce_seconds: float


def _run_node(endpoint: str, job: Assign, timeout: float | None) -> NodeReport:
    t0 = time.perf_counter()
    try:
        with socket.create_connection(parse_address(endpoint), timeout=timeout) as sock:
            protocol.send_message(sock, job)
            reply = protocol.recv_message(sock)
            _try_send(sock, Bye())
    except (OSError, protocol.ProtocolError) as exc:
        raise ClusterError(job.rank, endpoint, str(exc)) from exc
    if isinstance(reply, Error):
        raise ClusterError(job.rank, endpoint, f"worker error: {reply.message}")
    if not isinstance(reply, Count):
        raise ClusterError(job.rank, endpoint, f"expected COUNT, got {reply!r}")
    return NodeReport(job.rank, endpoint, job.start, job.stop, reply.count, reply.load,
                      reply.preprocess, reply.search, reply.reduce, time.perf_counter() - t0)


def coordinate(endpoints: list[str], algo: str, patterns: PatternSet, *,
               path: str | os.PathLike | None = None, text: TextLike | None = None,
               params: WmParams | None = None, local_workers: int = 1,
               tile_size: int | None = None, timeout: float | None = 600.0) -> ClusterResult:
    """Split the job over *endpoints*, collect COUNT replies and sum them.

    Give either ``path`` (shared-file mode; ``n`` is the file size) or
    ``text`` (each node receives its range inline). Any failing node fails
    the whole job with a :class:`ClusterError` naming it.
    """
    if not endpoints:
        raise ValueError("need at least one worker endpoint")
    if (path is None) == (text is None):
        raise ValueError("give exactly one of path or text")
    params = params or WmParams()
    t = None
    if path is not None:
        n = os.path.getsize(path)
        path = os.path.abspath(path)
    else:
        t = as_text(text)
        n = t.size
    size = len(endpoints)
    jobs = []
    for rank in range(size):
        start, stop = chunk_bounds(rank, size, n, patterns.m)
        jobs.append(Assign(
            algo=algo, source="path" if path else "inline", rank=rank, size=size, n=n,
            start=start, stop=stop, patterns=patterns.patterns, path=path or "",
            data=b"" if t is None else t[start:stop].tobytes(), B=params.B,
            B_prime=params.B_prime, bitshift=params.bitshift, worker_count=local_workers,
            tile_size=tile_size or 0))

    with ThreadPoolExecutor(max_workers=size) as pool:
        futures = [pool.submit(_run_node, ep, job, timeout) for ep, job in zip(endpoints, jobs)]
        nodes = []
        for fut in futures:
            nodes.append(fut.result())
    r0 = time.perf_counter()
    total = sum(node.count for node in nodes)
    return ClusterResult(total, nodes, time.perf_counter() - r0)
