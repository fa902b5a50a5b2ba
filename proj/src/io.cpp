#include "shamoduli/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "shamoduli/error.hpp"

namespace shamoduli {

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const RationalVector& v) {
  Json j = Json::array();
  for (const auto& q : v) j.push_back(to_string(q));
  return j;
}

Json to_json(const IndexSet& I) {
  Json j = Json::array();
  for (int i : I) j.push_back(i);
  return j;
}

Json to_json(const ProjPoint& p) { return to_json(RationalVector(p.coords().begin(), p.coords().end())); }
Json to_json(const ProjLine& l) { return to_json(RationalVector(l.coords().begin(), l.coords().end())); }

Json to_json(const Wall& w) {
  Json j;
  j["kind"] = w.kind == WallKind::MultiplePoint ? "W" : "Wtilde";
  j["I"] = to_json(w.indices);
  return j;
}

Json to_json(const LineArrangement& arr) {
  Json j;
  j["n"] = arr.n();
  if (arr.base_params()) j["a"] = to_json(*arr.base_params());
  if (arr.s()) j["s"] = to_json(*arr.s());
  Json lines = Json::array();
  for (const auto& l : arr.lines()) lines.push_back(to_json(l));
  j["lines"] = lines;
  return j;
}

Json to_json(const StratumLabel& label) {
  Json j = Json::array();
  for (const auto& J : label.factors) j.push_back(to_json(J));
  return j;
}

namespace {

Json tree_json(const Sha& x, int v) {
  const auto& c = x.component(v);
  Json j;
  j["id"] = c.id;
  j["markings"] = to_json(x.markings(v));
  if (c.parent) {
    const auto& par = x.component(*c.parent);
    for (const auto& at : par.attachments)
      if (at.child == v) j["attachment"] = to_json(at.point);
  } else {
    j["attachment"] = nullptr;
  }
  Json kids = Json::array();
  for (int ch : c.children) kids.push_back(tree_json(x, ch));
  j["children"] = kids;
  return j;
}

void collect_parents(const Json& node, std::optional<int> parent, std::map<int, std::optional<int>>& out) {
  if (!node.is_object() || !node.contains("id")) throw Error(ErrorCode::ParseError, "tree node needs an id");
  int id = node.at("id").get<int>();
  if (!out.emplace(id, parent).second) throw Error(ErrorCode::ParseError, "duplicate tree id " + std::to_string(id));
  if (node.contains("children"))
    for (const auto& ch : node.at("children")) collect_parents(ch, id, out);
}

void check_tree(const Sha& x, const Json& node) {
  int id = node.at("id").get<int>();
  if (node.contains("markings") && index_set_from_json(node.at("markings")) != x.markings(id))
    throw Error(ErrorCode::ParseError, "markings of vertex " + std::to_string(id) + " disagree with the plane models");
  if (node.contains("attachment") && !node.at("attachment").is_null()) {
    ProjPoint p = point_from_json(node.at("attachment"));
    const auto& par = x.component(*x.component(id).parent);
    for (const auto& at : par.attachments)
      if (at.child == id && !(at.point == p))
        throw Error(ErrorCode::ParseError, "attachment point of vertex " + std::to_string(id) + " disagrees");
  }
  if (node.contains("children"))
    for (const auto& ch : node.at("children")) check_tree(x, ch);
}

}  // namespace

Json to_json(const Sha& x) {
  Json j;
  j["n"] = x.n();
  j["tree"] = tree_json(x, 0);
  Json models = Json::array();
  for (const auto& c : x.components()) {
    Json m;
    m["id"] = c.id;
    m["labels"] = to_json(c.labels);
    m["a"] = to_json(c.a);
    m["s"] = to_json(c.s);
    Json lines = Json::array();
    auto model = c.plane_model();
    for (const auto& l : model.lines()) lines.push_back(to_json(l));
    m["lines"] = lines;
    models.push_back(m);
  }
  j["plane_models"] = models;
  return j;
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw Error(ErrorCode::ParseError, "rational must be a string \"p/q\" or an integer");
  return parse_rational(j.get<std::string>());
}

RationalVector rational_vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected an array of rationals");
  RationalVector v;
  for (const auto& e : j) v.push_back(rational_from_json(e));
  return v;
}

IndexSet index_set_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected an array of indices");
  std::vector<int> v;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw Error(ErrorCode::ParseError, "index must be an integer");
    v.push_back(e.get<int>());
  }
  return IndexSet(v);
}

ProjPoint point_from_json(const Json& j) {
  auto v = rational_vector_from_json(j);
  if (v.size() != 3 || all_zero(v)) throw Error(ErrorCode::ParseError, "point needs three coordinates, not all zero");
  return ProjPoint(v[0], v[1], v[2]);
}

Sha sha_from_json(const Json& j) {
  try {
    int n = j.at("n").get<int>();
    std::map<int, std::optional<int>> parents;
    collect_parents(j.at("tree"), std::nullopt, parents);
    std::vector<ComponentSpec> specs;
    for (const auto& m : j.at("plane_models")) {
      ComponentSpec sp;
      sp.id = m.at("id").get<int>();
      auto it = parents.find(sp.id);
      if (it == parents.end()) throw Error(ErrorCode::ParseError, "plane model " + std::to_string(sp.id) + " missing from tree");
      sp.parent = it->second;
      sp.labels = index_set_from_json(m.at("labels"));
      sp.a = rational_vector_from_json(m.at("a"));
      sp.s = rational_vector_from_json(m.at("s"));
      specs.push_back(std::move(sp));
    }
    if (specs.size() != parents.size()) throw Error(ErrorCode::ParseError, "tree and plane models list different vertices");
    std::sort(specs.begin(), specs.end(), [](const auto& p, const auto& q) { return p.id < q.id; });
    for (auto& sp : specs)
      if (!all_zero(sp.s)) sp.s = canonical_homogeneous(sp.s);
    Sha x = Sha::assemble(n, specs);
    for (const auto& m : j.at("plane_models")) {
      if (!m.contains("lines")) continue;
      auto model = x.component(m.at("id").get<int>()).plane_model();
      const auto& lines = m.at("lines");
      if (static_cast<int>(lines.size()) != model.n()) throw Error(ErrorCode::ParseError, "line count disagrees with labels");
      for (int i = 1; i <= model.n(); ++i) {
        auto v = rational_vector_from_json(lines.at(static_cast<std::size_t>(i - 1)));
        if (v.size() != 3 || all_zero(v) || !(ProjLine(v[0], v[1], v[2]) == model.line(i)))
          throw Error(ErrorCode::ParseError, "explicit line disagrees with the standard-coordinate model");
      }
    }
    check_tree(x, j.at("tree"));
    return x;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Sha read_sha_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return sha_from_json(parse_json(buf.str()));
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
}

namespace {

std::vector<std::string> split_commas(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

RationalVector parse_rational_list(std::string_view text) {
  RationalVector v;
  if (text.empty()) return v;
  for (const auto& item : split_commas(text)) v.push_back(parse_rational(item));
  return v;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> v;
  if (text.empty()) return v;
  for (const auto& item : split_commas(text)) {
    Rational q = parse_rational(item);
    if (q.get_den() != 1 || !q.get_num().fits_sint_p()) throw Error(ErrorCode::ParseError, "expected an integer, got " + item);
    v.push_back(static_cast<int>(q.get_num().get_si()));
  }
  return v;
}

}  // namespace shamoduli
