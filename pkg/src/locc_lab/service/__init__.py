"""Service layer: pydantic models, handlers, and the FastAPI app."""

from .app import app

__all__ = ["app"]
