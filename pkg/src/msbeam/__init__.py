"""Multi-beam metasurface coding with far-field and link-level evaluation."""

from .coding import (BeamTarget, IncidentWave, TdmBudget, phase_only_profile, sdm_partition_profile,
                     single_beam_profile, superpose, tdm_subframe_length)
from .farfield import (AngleGrid, Pattern, directivity, peak_directions, radiation_pattern, realized_gain,
                       specular_level)
from .surface import (DielectricState, PhaseProfile, ComplexProfile, StateCodebook, UnitCellGrid, build_grid,
                      canonical_codebook, dielectric_reflection_phase, quantize_profile)

__version__ = "0.1.0"
