#pragma once

#include <stdexcept>
#include <string>

namespace besseltrace {

// Base for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// gcd(a,c) != 1 where a unit was required.
struct not_coprime_error : error {
    using error::error;
};

// Gamma evaluated at a nonpositive integer.
struct pole_error : error {
    using error::error;
};

// Argument or order outside the validated accuracy envelope.
struct out_of_range_error : error {
    using error::error;
};

// Series/integral parameter outside its convergence region.
struct divergent_parameter_error : error {
    using error::error;
};

struct not_a_divisor_error : error {
    using error::error;
};

// Value requested at a point where the definition degenerates (e.g. eta at t=0).
struct undefined_at_zero_error : error {
    using error::error;
};

struct zero_function_error : error {
    using error::error;
};

// Hankel combinations are singular at integer order.
struct integer_order_error : error {
    using error::error;
};

// An exact integer division failed; signals a contract violation upstream.
struct inexact_division_error : error {
    using error::error;
};

// A truncated sum's tail could not be driven below tolerance.
struct tail_error : error {
    using error::error;
};

struct io_error : error {
    using error::error;
};

struct invalid_value_error : error {
    using error::error;
};

} // namespace besseltrace
