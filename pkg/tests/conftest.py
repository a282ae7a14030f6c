import numpy as np
import pytest

import fadelab as fl


@pytest.fixture(scope="session")
def models():
    return fl.catalog()


def jakes_like_table(lambda_d=0.45, gamma=0.9, depth=1e-9, n_bulk=401, n_edge=64):
    """Tabulated Doppler-style density diverging like (lambda_d^2 - lam^2)^-gamma
    at the band edges; gamma in (1/2, 1) keeps the mass finite while the
    squared density diverges polynomially."""
    d = lambda_d * np.geomspace(depth, 0.5, n_edge)
    inner = np.sort(np.unique(np.concatenate([
        np.linspace(-lambda_d * 0.5, lambda_d * 0.5, n_bulk),
        lambda_d - d, -(lambda_d - d)])))
    grid = np.unique(np.concatenate([[-0.5], [-lambda_d], inner, [lambda_d], [0.5]]))
    vals = np.zeros_like(grid)
    inside = np.abs(grid) < lambda_d
    vals[inside] = (lambda_d ** 2 - grid[inside] ** 2) ** (-gamma)
    vals /= np.trapezoid(vals, grid)
    return grid, vals


@pytest.fixture(scope="session")
def jakes_model():
    grid, vals = jakes_like_table()
    return fl.tabulated_density(grid, vals)


def write_density_table(path, grid, vals):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("lambda,value\n")
        for g, v in zip(grid, vals):
            fh.write(f"{g:.17g},{v:.17g}\n")
    return path
