"""Unit tests for SyncLab services, models and utilities."""
