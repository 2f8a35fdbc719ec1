#pragma once

#include <stdexcept>
#include <string>

namespace cyclo {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct zero_inverse : error {
    zero_inverse() : error("inverse of zero residue") {}
};

struct non_unit : error {
    non_unit() : error("series is not a unit (constant term is zero)") {}
};

struct degenerate_x : error {
    explicit degenerate_x(const std::string& what) : error("degenerate x: " + what) {}
};

struct excluded_t : error {
    explicit excluded_t(const std::string& what) : error("excluded t: " + what) {}
};

struct bad_input : error {
    explicit bad_input(const std::string& what) : error(what) {}
};

struct duplicate_entry : error {
    explicit duplicate_entry(const std::string& what) : error("duplicate audit entry: " + what) {}
};

struct non_coprime_norm : error {
    non_coprime_norm() : error("norm is not coprime to the modulus") {}
};

struct divisible_by_one_minus_zeta : error {
    divisible_by_one_minus_zeta() : error("element divisible by 1-zeta (augmentation is 0 mod p)") {}
};

struct indefinite_unsupported : error {
    indefinite_unsupported() : error("operation requires a negative (definite) discriminant") {}
};

struct index_range : error {
    explicit index_range(const std::string& what) : error("index out of range: " + what) {}
};

} // namespace cyclo
