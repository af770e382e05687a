"""Graph export schema."""

from typing import List, Literal

from pydantic import BaseModel, Field


class GraphExport(BaseModel):
    """A graph approximation with integer vertex coordinates over one denominator."""

    level: int = Field(..., ge=0, description="Graph level m")
    kind: Literal["gamma", "omega"] = Field(..., description="Gasket graph or domain graph")
    denominator: int = Field(..., gt=0, description="Common coordinate denominator 2^(m+1)")
    vertices: List[List[int]] = Field(..., description="[num_x, num_y, den] per vertex")
    edges: List[List[int]] = Field(..., description="Vertex index pairs i < j")
    boundary: List[int] = Field(default_factory=list, description="Boundary vertex indices")
    skeleton: List[int] = Field(default_factory=list, description="Skeleton chain indices")

    class Config:
        json_schema_extra = {
            "example": {
                "level": 0,
                "kind": "gamma",
                "denominator": 2,
                "vertices": [[1, 2, 2], [0, 0, 2], [2, 0, 2]],
                "edges": [[0, 1], [0, 2], [1, 2]],
                "boundary": [0, 1, 2],
                "skeleton": [],
            }
        }
