#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "shamoduli/chow.hpp"
#include "shamoduli/projgeom.hpp"
#include "shamoduli/sha.hpp"
#include "shamoduli/weights.hpp"
#include "shamoduli/wonderful.hpp"

namespace shamoduli {

using Json = nlohmann::ordered_json;

// Rationals travel as exact strings, never floats.
Json to_json(const Rational& q);
Json to_json(const RationalVector& v);
Json to_json(const IndexSet& I);
Json to_json(const ProjPoint& p);
Json to_json(const ProjLine& l);
Json to_json(const Wall& w);
Json to_json(const LineArrangement& arr);
Json to_json(const StratumLabel& label);
Json to_json(const Sha& x);

Rational rational_from_json(const Json& j);
RationalVector rational_vector_from_json(const Json& j);
IndexSet index_set_from_json(const Json& j);
ProjPoint point_from_json(const Json& j);
Sha sha_from_json(const Json& j);

Json parse_json(std::string_view text);
std::string dump(const Json& j);

Sha read_sha_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// "1,1,1/2" -> rationals; "1,2,3" -> ints. ParseError on malformed input.
RationalVector parse_rational_list(std::string_view text);
std::vector<int> parse_int_list(std::string_view text);

}  // namespace shamoduli
