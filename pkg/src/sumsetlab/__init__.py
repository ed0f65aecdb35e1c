"""sumsetlab: exact sumset, stabilizer, and density computations.

The package has three layers:

* finite machinery: groups, lattices, bitset sumsets, certificates, sweeps;
* symbolic machinery: interval unions, schedules, the set DSL, AP-segment
  evaluation;
* density machinery: Folner prefixes, defect and density reports, the
  refinement search and theorem checkers.
"""

from .apsets import APUnion
from .boxes import Box, PeriodicBoxSet, box_defect, count_predicate
from .errors import (BudgetError, CapacityError, CheckFailure, DslSyntaxError,
                     HypothesisError, PreconditionError, SumsetLabError)
from .folner import (DefectReport, DensityReport, FilteredTerm, FolnerPrefix,
                     LadReport, UbdReport, boxes_prefix, coset_filter_prefix,
                     defect_report, density, explicit_prefix, intervals_prefix,
                     lad_scan, parse_prefix, suffix_prefix,
                     symmetric_boxes_prefix, ubd_estimate, ubd_window_search)
from .groups import (FiniteGroup, QuotientGroup, Subgroup, enumerate_subgroups,
                     make_group, parse_elements, parse_group_spec, quotient,
                     subgroup_closure)
from .lattices import (Sublattice, enumerate_sublattices, hnf_reduce,
                       lattice_quotient, reduce_mod_lattice)
from .intervals import (IntervalUnion, count_periodized, iu_boolean, iu_count,
                        iu_sumset, periodize_union)
from .refine import (ConditionReport, KjResult, KneserLadReport, PipelineReport,
                     RefinementResult, find_missing_element,
                     kj_stabilizer_periodic, refinement_search, ubd_pipeline,
                     verify_folner_theorem, verify_kneser_lad)
from .sumsets import (DenseSet, KneserCertificate, is_periodic, kj_reduce,
                      kneser_certificate, periodize, quotient_image, stabilizer,
                      subgroup_of, sumset, sumset_fft)
from .sweeps import (CheckOutcome, SweepStats, check_gap_bound, check_jin_analog,
                     check_push_analog, check_two_subgroups, sweep_exhaustive,
                     sweep_random)
from .symbolic import (Blocks, Diff, Intersect, Interval, Periodic, Schedule,
                       Shift, StructuredSet, Union, parse_schedule, parse_set,
                       structural_breakpoints, to_intervals)

__version__ = "0.1.0"
