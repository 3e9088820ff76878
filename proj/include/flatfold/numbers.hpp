#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace flatfold {

// All arithmetic in this library is exact. Int is an arbitrary-precision
// integer, Rat an arbitrary-precision rational kept in lowest terms with
// positive denominator (gmp canonical form).
using Int = mpz_class;
using Rat = mpq_class;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// Library error with a stable machine-readable code ("bad-rational",
// "cap-exceeded", ...). The CLI maps these into JSON error objects.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Parses "p/q" or "p" (optional sign, base 10). Rejects zero denominators
// and anything gmp cannot read.
Rat parse_rat(const std::string& text);

// Formats as "p/q", or "p" when the denominator is 1. Inverse of parse_rat
// on canonical values.
std::string format_rat(const Rat& value);

// value - floor(value): the representative of value mod 1 in [0, 1).
Rat frac(const Rat& value);

inline bool is_integer(const Rat& value) { return value.get_den() == 1; }

// Floor of p/q as an Int (gmp fdiv).
Int floor_div(const Int& p, const Int& q);

}  // namespace flatfold
