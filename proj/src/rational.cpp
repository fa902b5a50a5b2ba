#include "shamoduli/rational.hpp"

#include "shamoduli/error.hpp"

namespace shamoduli {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ProportionalLines: return "ProportionalLines";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::DegenerateBasePoints: return "DegenerateBasePoints";
    case ErrorCode::BadIndexSize: return "BadIndexSize";
    case ErrorCode::BasePointOnSpecialLine: return "BasePointOnSpecialLine";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EndpointOnWall: return "EndpointOnWall";
    case ErrorCode::NoChainFound: return "NoChainFound";
    case ErrorCode::BadN: return "BadN";
    case ErrorCode::UnstableReplacement: return "UnstableReplacement";
    case ErrorCode::NotDestabilized: return "NotDestabilized";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::EmptyIntersection: return "EmptyIntersection";
    case ErrorCode::DimensionUnderflow: return "DimensionUnderflow";
    case ErrorCode::FirstWeightNotOne: return "FirstWeightNotOne";
    case ErrorCode::NonGenericConditions: return "NonGenericConditions";
    case ErrorCode::NotMaximallyDegenerate: return "NotMaximallyDegenerate";
    case ErrorCode::NoContributor: return "NoContributor";
    case ErrorCode::MultipleContributors: return "MultipleContributors";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Rational make_rational(long num, long den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  auto valid_int = [](const std::string& part) {
    if (part.empty()) return false;
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw Error(ErrorCode::ParseError, "not an exact rational: '" + s + "'");
  mpz_class n(num), d(den);
  if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Triple cross(const Triple& a, const Triple& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Rational dot(const Triple& a, const Triple& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Rational det3(const Triple& a, const Triple& b, const Triple& c) { return dot(a, cross(b, c)); }

Rational RationalStream::next() {
  std::uniform_int_distribution<long> num(-magnitude_, magnitude_);
  std::uniform_int_distribution<long> den(1, magnitude_);
  return make_rational(num(engine_), den(engine_));
}

Rational RationalStream::next_nonzero() {
  for (;;) {
    Rational q = next();
    if (q != 0) return q;
  }
}

Rational RationalStream::next_unit() {
  std::uniform_int_distribution<long> den(2, magnitude_);
  long d = den(engine_);
  std::uniform_int_distribution<long> num(1, d - 1);
  return make_rational(num(engine_), d);
}

long RationalStream::next_int(long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  return dist(engine_);
}

}  // namespace shamoduli
