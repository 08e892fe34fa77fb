"""Data models, schemas and errors for SyncLab."""
