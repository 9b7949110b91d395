from .pool import partition, run_chunks

__all__ = ["partition", "run_chunks"]
