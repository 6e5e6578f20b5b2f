# -*- coding: utf-8 -*-
from memheat.kernel.certificate import (
    KernelCertificate,
    RateFunction,
    certify_g2,
)
from memheat.kernel.relaxation import (
    KernelFamily,
    Memoryless,
    PowerLaw,
    PureExp,
    RelaxationKernel,
    StretchedExp,
    Tabulated,
    kernel_from_config,
    kernel_mass_deficit,
    make_kernel,
    numerical_mass,
)

__all__ = [
    "KernelCertificate",
    "KernelFamily",
    "Memoryless",
    "PowerLaw",
    "PureExp",
    "RateFunction",
    "RelaxationKernel",
    "StretchedExp",
    "Tabulated",
    "certify_g2",
    "kernel_from_config",
    "kernel_mass_deficit",
    "make_kernel",
    "numerical_mass",
]
