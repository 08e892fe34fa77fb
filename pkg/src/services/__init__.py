"""Graph, spectral, verification and search services for SyncLab."""
