"""FastAPI application exposing the package over HTTP.

The CLI talks to this app in process by default, so every feature goes
through the same request/response models whether or not a server is
running.  Search wall time is reported in a response header rather
than the body, keeping derive responses byte-identical across worker
counts.
"""

from __future__ import annotations

import base64
import binascii
import time

import numpy as np
from fastapi import FastAPI, HTTPException, Query, Response
from fastapi.responses import JSONResponse

from .. import __version__
from ..block2d import BlockImage, compress_demo, forward_2d, quant_fold, read_pgm, write_pgm
from ..comparison import comparison_table
from ..dctcore import TransformKind, orthogonalize, ternary_matrix
from ..kernels import dct2_kernel, dct4_kernel, export_graph, kernel_graph
from ..search import SearchConfig, search
from .schemas import (
    BenchRepeat,
    BenchRequest,
    BenchResponse,
    CompressReport,
    CompressRequest,
    CompressResponse,
    DeriveRequest,
    DeriveResponse,
    FlowgraphResponse,
    MatrixCandidate,
    Transform1DRequest,
    Transform1DResponse,
    Transform2DRequest,
    Transform2DResponse,
    VerifyResponse,
    VerifyRow,
)

app = FastAPI(title="ternary-dct", version=__version__)


@app.exception_handler(ValueError)
async def value_error_handler(request, exc: ValueError):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/derive", response_model=DeriveResponse)
def derive(req: DeriveRequest, response: Response) -> DeriveResponse:
    config = SearchConfig(target=TransformKind(req.target), top_k=req.top_k, parallel_width=req.jobs)
    result = search(config)
    response.headers["x-wall-time-s"] = f"{result.wall_time_s:.3f}"
    return DeriveResponse(
        target=req.target,
        top_k=req.top_k,
        candidates=[
            MatrixCandidate(
                matrix=[list(row) for row in cand.entries],
                error=round(cand.error, 6),
                additions=cand.additions,
            )
            for cand in result.candidates
        ],
        explored_count=result.explored_count,
        pruned_count=result.pruned_count,
    )


@app.get("/verify", response_model=VerifyResponse)
def verify() -> VerifyResponse:
    rows, passed = comparison_table()
    return VerifyResponse(
        rows=[
            VerifyRow(
                method_name=row.method_name,
                error_energy=row.error_energy,
                additions=row.additions,
                multiplications=row.multiplications,
                total=row.total,
                complexity_source=row.complexity_source,
            )
            for row in rows
        ],
        passed=passed,
    )


def _kernel_for(target: str):
    return dct2_kernel if TransformKind(target) is TransformKind.DCT2 else dct4_kernel


@app.post("/transform1d", response_model=Transform1DResponse)
def transform1d(req: Transform1DRequest) -> Transform1DResponse:
    kernel = _kernel_for(req.target)
    out = kernel(np.asarray(req.vector, dtype=np.int64), checked=True)
    ortho = None
    if req.orthogonal:
        d, _ = orthogonalize(ternary_matrix(req.target))
        ortho = [float(v) for v in d * out]
    return Transform1DResponse(target=req.target, output=[int(v) for v in out], orthogonal_output=ortho)


@app.post("/transform2d", response_model=Transform2DResponse)
def transform2d(req: Transform2DRequest) -> Transform2DResponse:
    block = np.asarray(req.block, dtype=np.int64)
    out = forward_2d(block, req.target)
    ortho = None
    if req.orthogonal:
        scaled = quant_fold(req.target) * out
        ortho = [[float(v) for v in row] for row in scaled]
    return Transform2DResponse(
        target=req.target,
        output=[[int(v) for v in row] for row in out],
        orthogonal_output=ortho,
    )


@app.post("/compress", response_model=CompressResponse)
def compress(req: CompressRequest) -> CompressResponse:
    try:
        raw = base64.b64decode(req.pgm_base64, validate=True)
    except binascii.Error as exc:
        raise HTTPException(status_code=400, detail=f"invalid base64: {exc}") from exc
    image = read_pgm(raw)
    result, psnr_db = compress_demo(image, req.target, req.retained)
    return CompressResponse(
        report=CompressReport(
            kind=req.target,
            retained=req.retained,
            psnr_db=round(psnr_db, 4),
            width=image.width,
            height=image.height,
        ),
        pgm_base64=base64.b64encode(write_pgm(result)).decode("ascii"),
    )


@app.get("/flowgraph", response_model=FlowgraphResponse)
def flowgraph(
    target: str = Query(...),
    format: str = Query("json"),
) -> FlowgraphResponse:
    try:
        kind = TransformKind(target)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=f"target must be 'ii' or 'iv', got {target!r}") from exc
    if format not in ("dot", "json"):
        raise HTTPException(status_code=422, detail=f"format must be 'dot' or 'json', got {format!r}")
    return FlowgraphResponse(target=kind.value, format=format, content=export_graph(kernel_graph(kind), format))


@app.post("/bench", response_model=BenchResponse)
def bench(req: BenchRequest) -> BenchResponse:
    rng = np.random.default_rng(req.seed)
    pool = rng.integers(0, 256, size=(min(req.iterations, 1024), 4, 4), dtype=np.int64)
    repeats = []
    for _ in range(req.repeats):
        start = time.perf_counter()
        done = 0
        while done < req.iterations:
            batch = pool[: min(len(pool), req.iterations - done)]
            forward_2d(batch, req.target)
            done += len(batch)
        seconds = time.perf_counter() - start
        repeats.append(
            BenchRepeat(
                seconds=seconds,
                blocks_per_second=req.iterations / seconds if seconds > 0 else float(req.iterations),
            )
        )
    return BenchResponse(
        target=req.target,
        iterations=req.iterations,
        seed=req.seed,
        repeats=repeats,
        best_blocks_per_second=max(r.blocks_per_second for r in repeats),
    )
