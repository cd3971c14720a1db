from jtd.telegraph.densities import (TelegraphDensityQuery, compare_bessel_with_series, jump_shift, jump_telegraph_atom,
                                     jump_telegraph_pdf, jump_telegraph_pdf_bessel, jump_telegraph_pdf_n, pde_residual,
                                     q_density)
from jtd.telegraph.mixture import jtd_pdf, telegraph_diffusion_pdf, telegraph_diffusion_point_mass
