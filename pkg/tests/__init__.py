"""Test suite for SyncLab."""
