#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace shamoduli {

// Arbitrary precision rational. GMP keeps every arithmetic result in lowest
// terms with a positive denominator; construction from raw parts goes through
// make_rational / parse_rational which canonicalize.
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;
using Triple = std::array<Rational, 3>;

Rational make_rational(long num, long den = 1);

// Accepts "p", "p/q", "-p/q". Rejects zero denominators and anything else.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

Triple cross(const Triple& a, const Triple& b);
Rational dot(const Triple& a, const Triple& b);
Rational det3(const Triple& a, const Triple& b, const Triple& c);

// Seeded stream of small rationals. Used wherever the construction needs a
// "generic" choice; every such choice is followed by an explicit check.
class RationalStream {
 public:
  explicit RationalStream(std::uint64_t seed, long magnitude = 97) : engine_(seed), magnitude_(magnitude) {}

  Rational next();
  Rational next_nonzero();
  // Uniform in (0, 1) with denominator <= magnitude.
  Rational next_unit();
  long next_int(long lo, long hi);

 private:
  std::mt19937_64 engine_;
  long magnitude_;
};

}  // namespace shamoduli
