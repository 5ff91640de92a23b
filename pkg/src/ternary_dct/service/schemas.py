"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Annotated, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

TargetName = Literal["ii", "iv"]

Sample = Annotated[int, Field(ge=-(1 << 15), le=(1 << 15) - 1)]
Vector4 = Annotated[list[Sample], Field(min_length=4, max_length=4)]
Block4 = Annotated[list[Vector4], Field(min_length=4, max_length=4)]


class DeriveRequest(BaseModel):
    target: TargetName
    top_k: int = Field(default=1, ge=1, le=4096)
    jobs: int = Field(default=1, ge=1, le=64)


class MatrixCandidate(BaseModel):
    matrix: list[list[int]]
    error: float
    additions: int


class DeriveResponse(BaseModel):
    target: TargetName
    top_k: int
    candidates: list[MatrixCandidate]
    explored_count: int
    pruned_count: int


class VerifyRow(BaseModel):
    method_name: str
    error_energy: float
    additions: int
    multiplications: int
    total: int
    complexity_source: Literal["cited", "recomputed"]


class VerifyResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    rows: list[VerifyRow]
    passed: bool = Field(alias="pass")


class Transform1DRequest(BaseModel):
    target: TargetName
    vector: Vector4
    orthogonal: bool = False


class Transform1DResponse(BaseModel):
    target: TargetName
    output: list[int]
    orthogonal_output: Optional[list[float]] = None


class Transform2DRequest(BaseModel):
    target: TargetName
    block: Block4
    orthogonal: bool = False


class Transform2DResponse(BaseModel):
    target: TargetName
    output: list[list[int]]
    orthogonal_output: Optional[list[list[float]]] = None


class CompressRequest(BaseModel):
    target: TargetName
    retained: int = Field(ge=1, le=16)
    pgm_base64: str


class CompressReport(BaseModel):
    kind: TargetName
    retained: int
    psnr_db: float
    width: int
    height: int


class CompressResponse(BaseModel):
    report: CompressReport
    pgm_base64: str


class FlowgraphResponse(BaseModel):
    target: TargetName
    format: Literal["dot", "json"]
    content: str


class BenchRequest(BaseModel):
    target: TargetName
    iterations: int = Field(default=1000, ge=1, le=10_000_000)
    repeats: int = Field(default=3, ge=1, le=10)
    seed: int = 0


class BenchRepeat(BaseModel):
    seconds: float
    blocks_per_second: float


class BenchResponse(BaseModel):
    target: TargetName
    iterations: int
    seed: int
    repeats: list[BenchRepeat]
    best_blocks_per_second: float
