"""Single-photon numerics: grids, polarization, wave functions, scalar products, boosts and localization."""
