"""Allow running as `python -m cellplan`."""

from cellplan.cli.main import app

app()
