"""Command-line front door for SyncLab."""
