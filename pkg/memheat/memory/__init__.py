# -*- coding: utf-8 -*-
from memheat.memory.compression import (
    CompressedHistory,
    CompressedKernel,
    compress_kernel,
)
from memheat.memory.history import (
    DirectMemory,
    HistoryBuffer,
    MemoryQuadrature,
    g_circ_grad,
    g_prime_circ_grad,
    history_push,
    kernel_weight_sum,
    memory_convolution,
)

__all__ = [
    "CompressedHistory",
    "CompressedKernel",
    "DirectMemory",
    "HistoryBuffer",
    "MemoryQuadrature",
    "compress_kernel",
    "g_circ_grad",
    "g_prime_circ_grad",
    "history_push",
    "kernel_weight_sum",
    "memory_convolution",
]
