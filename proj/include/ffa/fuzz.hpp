#pragma once

#include <string>
#include <vector>

namespace ffa {

struct FuzzParams {
  unsigned max_constants = 3;
  unsigned max_depth = 3;
  unsigned max_asserts = 4;
  /// Prime moduli the generator draws sorts from; one per script.
  std::vector<unsigned> moduli = {3, 5};
};

/// Deterministic well-sorted script text for a seed: equalities and Boolean
/// structure over random field terms, literal spellings mixed between the
/// indexed and annotated forms with out-of-range coefficients included, and
/// division/reciprocal kept frequent. Ends with check-sat. The same seed and
/// params always produce byte-identical text.
std::string fuzz_generate(unsigned long seed, const FuzzParams& params = {});

}  // namespace ffa
