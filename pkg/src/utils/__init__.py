"""Utility modules for SyncLab."""
