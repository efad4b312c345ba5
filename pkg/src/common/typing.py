import numpy as np
from numpy.typing import NDArray

# (N, 3) float arrays of world coordinates / unit vectors, meters
Points = NDArray[np.float64]
Vectors = NDArray[np.float64]
