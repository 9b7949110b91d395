from pathlib import Path


def load_env(path: Path | None = None) -> bool:
    """Load `LORCOMP_*` overrides from a `.env` file; returns whether one was found."""
    from dotenv import load_dotenv

    if path is None:
        return load_dotenv()
    return load_dotenv(path)
