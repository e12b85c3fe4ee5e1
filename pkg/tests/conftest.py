import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from rcp.geometry import PolygonWithHoles

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


SQUARE = PolygonWithHoles.normalized([(0, 0), (1, 0), (1, 1), (0, 1)])
LSHAPE = PolygonWithHoles.normalized([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])
HOLED = PolygonWithHoles.normalized([(0, 0), (3, 0), (3, 3), (0, 3)], [[(1, 1), (2, 1), (2, 2), (1, 2)]])
POLYGONS = {"square": SQUARE, "lshape": LSHAPE, "holed": HOLED}


def same_answer(a, b):
    return a == b
