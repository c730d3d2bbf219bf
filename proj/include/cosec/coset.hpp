#pragma once

#include "cosec/code.hpp"
#include "cosec/matrix.hpp"
#include "cosec/rng.hpp"

namespace cosec {

/// Coset encoding: a uniform z with H z^T = m. The message is hidden in
/// which coset of C = ker H the word lands in; the randomness hides
/// everything else.
FieldVector coset_encode(const LinearCode& code, const FieldVector& m, SeededRng& rng);

/// Syndrome decoding: m = H z^T.
FieldVector coset_decode(const LinearCode& code, const FieldVector& z);

}  // namespace cosec
