#include "cosec/coset.hpp"

#include <sstream>

#include "cosec/errors.hpp"

namespace cosec {

FieldVector coset_encode(const LinearCode& code, const FieldVector& m, SeededRng& rng) {
    if (m.size() != code.r()) {
        std::ostringstream os;
        os << "message length " << m.size() << " does not match code dimension " << code.r();
        throw DimensionMismatchError(os.str());
    }
    return sample_coset(code.h(), m, rng);
}

FieldVector coset_decode(const LinearCode& code, const FieldVector& z) {
    if (z.size() != code.n()) {
        std::ostringstream os;
        os << "word length " << z.size() << " does not match code length " << code.n();
        throw DimensionMismatchError(os.str());
    }
    return matvec(code.h(), z);
}

}  // namespace cosec
