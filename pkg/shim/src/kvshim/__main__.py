"""Run the service: PORT env var selects the port (default 8750)."""

from __future__ import annotations

import os

import uvicorn

from kvshim.app import create_app


def main() -> None:
    port = int(os.environ.get("PORT", "8750"))
    uvicorn.run(create_app(), host="0.0.0.0", port=port)


if __name__ == "__main__":
    main()
