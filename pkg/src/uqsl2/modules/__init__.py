"""Weight modules of U_q(sl2), stored level by level down to a chosen depth."""

from .analysis import (CompletenessReport, DecompositionDepthError, DecompositionError,
                       PairCheck, Summand, completeness_check, decompose, summand_model, summary)
from .constructors import (finite_simple, s_module, t_module, t_quotient, theorem_z_vector,
                           verma, z_coefficient)
from .core import (DepthExceeded, ModuleError, ModuleMap, ModuleVector, Weight, WeightModule,
                   identity_map)
from .homs import hom_search, is_isomorphic, map_from_generator
from .ops import (add_characters, align, align_all, apply, casimir_matrix, character,
                  direct_sum, generalized_eigenspace, pad_top, quotient, restricted_dual,
                  submodule_generated, trim_top, truncate)
from .specs import (DEFAULT_DEPTH, SpecError, build, module_from_json, module_to_json,
                    parse_spec, zero_module)

__all__ = [
    "CompletenessReport", "DEFAULT_DEPTH", "DecompositionDepthError", "DecompositionError", "DepthExceeded",
    "ModuleError", "ModuleMap", "ModuleVector", "PairCheck", "SpecError", "Summand", "Weight",
    "WeightModule", "add_characters", "align", "align_all", "apply", "build", "casimir_matrix",
    "character", "completeness_check", "decompose", "direct_sum", "finite_simple",
    "generalized_eigenspace", "hom_search", "identity_map", "is_isomorphic",
    "map_from_generator", "module_from_json", "module_to_json", "pad_top", "parse_spec",
    "quotient", "restricted_dual", "s_module", "submodule_generated", "summand_model",
    "summary", "t_module", "t_quotient", "theorem_z_vector", "trim_top", "truncate", "verma",
    "z_coefficient", "zero_module",
]
