import math

import numpy as np
import pytest

from common.exceptions import OutOfDomainError, InvalidParameterError
from modules.geometry.conformal import project_conformal
from modules.geometry.generators import gen_polygon, gen_circle
from modules.geometry.models import ConformalPatch, HemisphereSurface, PlaneSurface
from modules.geometry.paths import arc_length

RADIUS = 0.05


@pytest.fixture
def hemisphere() -> HemisphereSurface:
    return HemisphereSurface(center=np.zeros(3), radius=RADIUS)


class TestProjectConformal:
    def test_plane__identity(self):
        path = gen_polygon([(0.0, 0.0), (0.1, 0.05)], closed=False)
        projection = project_conformal(ConformalPatch(PlaneSurface(normal=(0, 0, 1)), path))
        assert np.allclose(projection.path.samples, path.samples, atol=1e-15)
        assert np.allclose(projection.approaches, [0.0, 0.0, -1.0])
        assert projection.distortion == pytest.approx(0.0, abs=1e-12)
        assert projection.within_bound

    def test_plane__offset_surface(self):
        path = gen_polygon([(0.0, 0.0), (0.05, 0.0)], closed=False)
        surface = PlaneSurface(normal=(0, 0, 1), offset=0.02)
        projection = project_conformal(ConformalPatch(surface, path))
        assert np.allclose(projection.path.samples[:, 2], 0.02)

    def test_hemisphere__quarter_great_circle(self, hemisphere):
        path = gen_polygon([(0.0, 0.0), (RADIUS * math.pi / 2, 0.0)], closed=False)
        projection = project_conformal(ConformalPatch(hemisphere, path))
        samples = projection.path.samples
        assert np.allclose(samples[0], [0.0, 0.0, RADIUS], atol=1e-12)
        assert np.allclose(samples[-1], [RADIUS, 0.0, 0.0], atol=1e-12)
        # approach at the equator is horizontal
        end_approach = projection.approaches[-1]
        assert abs(math.asin(end_approach[2])) <= 1e-6
        assert np.allclose(end_approach, [-1.0, 0.0, 0.0], atol=1e-9)
        # radial lines keep their length
        assert projection.distortion == pytest.approx(0.0, abs=1e-4)

    def test_hemisphere__poses_on_surface(self, hemisphere):
        path = gen_circle(0.06, sample_step=0.001)
        projection = project_conformal(ConformalPatch(hemisphere, path))
        radii = np.linalg.norm(projection.path.samples - hemisphere.center, axis=1)
        assert np.all(np.abs(radii - RADIUS) <= 1e-9)
        normals = projection.path.samples / RADIUS
        assert np.allclose(projection.approaches, -normals, atol=1e-9)
        # headings are tangent to the surface
        assert np.allclose(np.sum(projection.headings * projection.approaches, axis=1), 0.0)

    def test_hemisphere__distortion_reported(self, hemisphere):
        path = gen_circle(0.06, sample_step=0.001)
        projection = project_conformal(ConformalPatch(hemisphere, path))
        length_3d = arc_length(projection.path.samples)
        assert abs(length_3d - path.length) / path.length == pytest.approx(projection.distortion)
        assert projection.distortion > 0

    def test_hemisphere__path_too_long__out_of_domain(self, hemisphere):
        path = gen_polygon([(-RADIUS * 2, 0.0), (RADIUS * 2, 0.0)], closed=False)
        with pytest.raises(OutOfDomainError) as exc_info:
            project_conformal(ConformalPatch(hemisphere, path))

        error = exc_info.value
        assert error.exit_code == 3
        assert error.arc_position == pytest.approx(0.0)
        assert error.details["arc_positions"]

    def test_non_planar_parameter_path__fail(self, hemisphere):
        path = gen_polygon([(0.0, 0.0, 0.0), (0.01, 0.0, 0.01)], closed=False)
        with pytest.raises(InvalidParameterError):
            project_conformal(ConformalPatch(hemisphere, path))

    def test_poses__frames(self, hemisphere):
        path = gen_polygon([(0.0, 0.0), (0.02, 0.0)], closed=False)
        poses = project_conformal(ConformalPatch(hemisphere, path)).poses
        assert len(poses) == len(path.samples)
        assert np.allclose(poses[0].approach, [0.0, 0.0, -1.0])
        assert np.allclose(poses[0].heading, [1.0, 0.0, 0.0])
