#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fermatk {

enum class Errc {
    unsupported_field,
    both_zero,
    zero_element,
    cap_exceeded,
    singular_curve,
    unsupported_prime,
    bad_reduction,
    even_q,
    zero_twist,
    non_rational_j,
    non_unit,
    trivial_triple,
    odd_wild_part,
    malformed_record,
    eigenvalue_bound_violation,
    duplicate_label,
    non_integral_level,
    insufficient_data,
    unsupported_exponent,
    not_applicable,
    missing_eigenvalue,
    incomplete_dataset,
    field_mismatch,
    invalid_argument,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code)
    {
    }

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace fermatk
