"""Integration tests for the SyncLab command line and batch scripts."""
