"""Gendered field-normalised log citation impact analysis.

Name-based first-author gender inference, NLCS/MNLCS with t-based confidence
intervals and shape diagnostics, yearly and period gender comparisons, and
cumulative top-percentile female share curves.
"""

from .corpus import (ANALYSIS, FEMALE, MALE, REFERENCE, UNKNOWN, Article, Corpus, CorpusError,
                     GenderedArticle, Predicate, filter_corpus)
from .gender import (NameEvidence, NameGenderTable, ThresholdRule, assign_gender,
                     coverage_summary, required_evidence)
from .ingest import parse_corpus, parse_name_table, serialize_corpus
from .normalize import (ReferenceMeans, ScoredArticle, log_citations, nlcs, reference_means,
                        score_corpus)
from .percentile import PercentileCurve, cumulative_curve, top_share
from .stats import GroupImpact, confidence_interval, group_impact, mnlcs, shape_diagnostics
from .synth import SynthSpec, generate, oracle_diff
from .trends import period_summary, solo_series, yearly_series

__version__ = "0.1.0"
