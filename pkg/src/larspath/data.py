"""Bundled data sets."""
from importlib import resources

import numpy as np

DIABETES_COLUMNS = ("AGE", "SEX", "BMI", "BP", "S1", "S2", "S3", "S4", "S5", "S6")


def diabetes_csv_path():
    return resources.files("larspath").joinpath("data", "diabetes.csv")


def load_diabetes():
    """The 442-patient diabetes data: ``(x, y, column_names)`` in original units."""
    with resources.as_file(diabetes_csv_path()) as p:
        data = np.loadtxt(p, delimiter=",", skiprows=1)
    return data[:, :10], data[:, 10], list(DIABETES_COLUMNS)


def config_path(name):
    """Path of a bundled experiment config such as ``"turlach_centered.cfg"``."""
    return resources.files("larspath").joinpath("configs", name)
