"""Generators, reduction registry, equivalence trials, bundles and the command line."""

from .generators import KINDS, gen_planted
from .instances import Instance, Verdict, agree, decide
from .registry import REGISTRY, Reduction
from .trials import PIPELINES, PipelineSpec, TrialReport, check_equivalence, check_pipeline, run_pipeline, run_trial

__all__ = ["KINDS", "gen_planted", "Instance", "Verdict", "agree", "decide", "REGISTRY", "Reduction", "PIPELINES",
           "PipelineSpec", "TrialReport", "check_equivalence", "check_pipeline", "run_pipeline", "run_trial"]
