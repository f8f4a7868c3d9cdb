#pragma once

#include <stdexcept>
#include <string>

namespace hopfore {

// Base class for every error thrown by the library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define HOPFORE_DEFINE_ERROR(name)                                            \
    struct name : error {                                                      \
        using error::error;                                                    \
    }

// scalar / matrix
HOPFORE_DEFINE_ERROR(domain_mismatch);
HOPFORE_DEFINE_ERROR(not_a_field);
HOPFORE_DEFINE_ERROR(not_square);
HOPFORE_DEFINE_ERROR(division_by_zero);

// ore
HOPFORE_DEFINE_ERROR(tower_mismatch);
HOPFORE_DEFINE_ERROR(degree_bound_exceeded);
HOPFORE_DEFINE_ERROR(variable_out_of_level);

// hopf
HOPFORE_DEFINE_ERROR(enumeration_too_large);
HOPFORE_DEFINE_ERROR(not_a_hopf_ideal);

// action
HOPFORE_DEFINE_ERROR(stabilization_not_reached);
HOPFORE_DEFINE_ERROR(not_faithful_at_bound);

// charp
HOPFORE_DEFINE_ERROR(centrality_failed);
HOPFORE_DEFINE_ERROR(p_polynomial_search_exceeded);
HOPFORE_DEFINE_ERROR(not_free_over_base);
HOPFORE_DEFINE_ERROR(reduction_mismatch);

// reduce
HOPFORE_DEFINE_ERROR(not_semisimple);
HOPFORE_DEFINE_ERROR(denominator_vanishes);

// pipeline / io
HOPFORE_DEFINE_ERROR(parse_error);
HOPFORE_DEFINE_ERROR(validation_error);

#undef HOPFORE_DEFINE_ERROR

} // namespace hopfore
