#pragma once

#include <cstddef>
#include <vector>

#include "grpdef/presentations.hpp"
#include "grpdef/quotients.hpp"
#include "grpdef/words.hpp"

namespace grpdef {

/// HLT coset enumeration with coincidence processing. On success the table
/// is compacted and renumbered in BFS order from coset 0 (generators in
/// order, then inverses). Throws BudgetExceeded when more than `max_cosets`
/// cosets are live at once; that is not a proof of infinite index.
CosetTable todd_coxeter(const Presentation& p, const std::vector<Word>& subgroup_generators,
                        std::size_t max_cosets = kDefaultMaxCosets);

/// BFS renumbering from coset 0, as applied by todd_coxeter.
CosetTable canonical_renumbering(const CosetTable& t);

}  // namespace grpdef
