#include "flatfold/numbers.hpp"

namespace flatfold {

Rat parse_rat(const std::string& text) {
  if (text.empty()) throw Error("bad-rational", "empty rational literal");
  Rat value;
  try {
    value = Rat(text);
  } catch (const std::invalid_argument&) {
    throw Error("bad-rational", "unparseable rational literal: " + text);
  }
  if (value.get_den() == 0)
    throw Error("bad-rational", "zero denominator in rational literal: " + text);
  value.canonicalize();
  return value;
}

std::string format_rat(const Rat& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rat frac(const Rat& value) {
  Int fl = floor_div(value.get_num(), value.get_den());
  Rat out = value - Rat(fl);
  out.canonicalize();
  return out;
}

Int floor_div(const Int& p, const Int& q) {
  Int out;
  mpz_fdiv_q(out.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  return out;
}

}  // namespace flatfold
