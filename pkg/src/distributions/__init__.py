# Distributions Module - Isotropic Log-Concave Densities
from .density import Density1D, LogConcaveDensity
from .grid import GridFunction
from .families import (
    Convolution1D,
    Gaussian1D,
    GaussianDensity,
    Laplace1D,
    ProductDensity,
    Uniform1D,
)
from .catalog import (
    catalog_1d,
    catalog_nd,
    catalog_pairs_1d,
    cdf_1d,
    convolve_interpolate,
    density_from_spec,
    make_isotropic_laplace,
    make_isotropic_uniform,
    make_mixed_uniform_laplace,
    make_standard_gaussian,
    quantile_1d,
    sample,
    whiten,
)
