#pragma once

#include <stdexcept>
#include <string>

namespace nott {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operands belong to different coefficient rings.
struct ring_mismatch_error : error {
  using error::error;
};

// Parameters outside the domain an operation is defined for.
struct parameter_domain_error : error {
  using error::error;
};

// Residue requested at a pole of order >= 2.
struct higher_order_pole_error : error {
  using error::error;
};

// Reduction mod p hit a denominator that vanishes mod p.
struct not_reducible_error : error {
  using error::error;
};

// A specialization left some variable unassigned.
struct incomplete_specialization_error : error {
  using error::error;
};

// Two routes that must agree disagreed.  Indicates a bug; never expected.
struct internal_inconsistency_error : error {
  using error::error;
};

struct parse_error : error {
  using error::error;
};

}  // namespace nott
