"""trajgraft: multi-agent trajectory forecasting on synthetic driving scenes.

Per-agent state encoding, BEV deformable cross-attention with recurrently
refined reference trajectories, text-driven debiased contrastive guidance,
and Gaussian-mixture trajectory decoding, trained end-to-end on a
self-contained reverse-mode tensor tape.
"""

__version__ = "0.1.0"
