"""SyncLab: Laplacian eigenratio synchronizability toolkit."""

__version__ = "0.1.0"
