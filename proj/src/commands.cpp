#include "shamoduli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <thread>

#include "shamoduli/error.hpp"

namespace shamoduli {

namespace {

// Runs f(0..count-1) on up to `threads` workers; results land by index, so the
// output never depends on scheduling.
template <class T>
std::vector<T> parallel_map(std::size_t count, int threads, const std::function<T(std::size_t)>& f) {
  std::vector<T> out(count);
  const std::size_t workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) out[i] = f(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

WeightVector weights_of(const RunConfig& cfg) {
  if (!cfg.weights) return default_base_weight(cfg.n).w0;
  if (static_cast<int>(cfg.weights->size()) != cfg.n)
    throw Error(ErrorCode::LengthMismatch, "--weights needs exactly n entries");
  return WeightVector(*cfg.weights);
}

Json base_args(const RunConfig& cfg) {
  Json a;
  a["n"] = cfg.n;
  a["seed"] = cfg.seed;
  return a;
}

Sha load_sha(const RunConfig& cfg) {
  if (!cfg.sha_path) throw Error(ErrorCode::InvalidArgument, "--sha <file> is required");
  return read_sha_file(*cfg.sha_path);
}

Report cmd_building_set(const RunConfig& cfg) {
  Report r;
  auto w = weights_of(cfg);
  r.args = base_args(cfg);
  r.args["weights"] = to_json(w.values());
  auto elems = building_set(cfg.n, w);
  Json list = Json::array();
  std::map<int, int> by_codim;
  for (const auto& e : elems) {
    Json j;
    j["I"] = to_json(e.I);
    j["codim"] = e.codim;
    list.push_back(j);
    ++by_codim[e.codim];
  }
  Json counts = Json::array();
  for (auto [c, k] : by_codim) counts.push_back(Json{{"codim", c}, {"count", k}});
  r.result["count"] = elems.size();
  r.result["counts_by_codim"] = counts;
  r.result["elements"] = list;
  r.text = std::to_string(elems.size()) + " building set elements\n";
  return r;
}

Report cmd_strata(const RunConfig& cfg) {
  Report r;
  auto w = weights_of(cfg);
  int depth = cfg.depth.value_or(cfg.n - 3);
  r.args = base_args(cfg);
  r.args["weights"] = to_json(w.values());
  r.args["depth"] = depth;
  auto labels = strata(cfg.n, w, depth, cfg.budget, cfg.seed);
  Json list = Json::array();
  std::size_t zero_dim = 0;
  for (const auto& l : labels) {
    auto r_codims = transversal_codims(l, cfg.n);
    int dim = cfg.n - 3 - r_codims.back();
    if (dim == 0 && !l.factors.empty()) ++zero_dim;
    Json j;
    j["factors"] = to_json(l);
    j["codims"] = r_codims;
    j["dim"] = dim;
    list.push_back(j);
  }
  r.result["count"] = labels.size();
  r.result["zero_dimensional"] = zero_dim;
  r.result["strata"] = list;
  r.certificates.push_back("every nonempty label realized by exact s-coordinates");
  r.dot = strata_poset_dot(labels);
  r.text = std::to_string(labels.size()) + " strata, " + std::to_string(zero_dim) + " zero-dimensional\n";
  return r;
}

Report cmd_blowup_order(const RunConfig& cfg) {
  Report r;
  auto w = weights_of(cfg);
  r.args = base_args(cfg);
  r.args["weights"] = to_json(w.values());
  Json list = Json::array();
  for (const auto& e : blow_up_sequence(cfg.n, w)) list.push_back(to_json(e.I));
  r.result["order"] = list;
  for (const auto& I : list) r.text += I.dump() + "\n";
  return r;
}

Report cmd_stable_replace(const RunConfig& cfg) {
  Report r;
  Sha x = load_sha(cfg);
  if (!cfg.I) throw Error(ErrorCode::InvalidArgument, "--I is required");
  IndexSet I(*cfg.I);
  RationalVector mu = cfg.mu ? *cfg.mu : generic_mu(x.component(cfg.vertex), I, cfg.seed);
  r.args["sha"] = *cfg.sha_path;
  r.args["vertex"] = cfg.vertex;
  r.args["I"] = to_json(I);
  r.args["mu"] = to_json(mu);
  Sha y = stable_replacement(x, cfg.vertex, I, mu);
  auto bad = invariant_violations(y);
  if (!bad.empty()) throw Error(ErrorCode::InvalidArgument, "internal: " + bad.front());
  r.result = to_json(y);
  r.certificates.push_back("rooted tree, connected broken lines, no overlapping lines");
  r.dot = dual_graph(y).to_dot();
  r.text = "replacement at vertex " + std::to_string(cfg.vertex) + " along " + I.str() + ": " + std::to_string(y.size()) +
           " components\n";
  return r;
}

Report cmd_dual_graph(const RunConfig& cfg) {
  Report r;
  Sha x = load_sha(cfg);
  r.args["sha"] = *cfg.sha_path;
  auto g = dual_graph(x);
  Json nodes = Json::array();
  for (const auto& v : g.nodes) {
    Json j;
    j["id"] = v.id;
    j["root"] = !v.parent.has_value();
    j["markings"] = to_json(v.markings);
    j["children"] = v.children;
    nodes.push_back(j);
  }
  r.result["nodes"] = nodes;
  r.dot = g.to_dot();
  r.text = r.dot;
  return r;
}

Report cmd_cycle_class(const RunConfig& cfg) {
  Report r;
  Sha x = load_sha(cfg);
  r.args["sha"] = *cfg.sha_path;
  r.args["oracle"] = cfg.oracle;
  std::vector<MVector> ms;
  if (cfg.m) {
    if (static_cast<int>(cfg.m->size()) != x.n() || !is_mvector(*cfg.m))
      throw Error(ErrorCode::InvalidArgument, "--m needs n entries in {0,1,2} summing to 3");
    ms.push_back(*cfg.m);
    r.args["m"] = *cfg.m;
  } else {
    ms = all_mvectors(x.n());
  }
  auto cls = cycle_class(x);
  std::vector<int> oracle;
  if (cfg.oracle) {
    oracle = parallel_map<int>(ms.size(), cfg.threads, [&](std::size_t k) {
      int total = 0;
      for (const auto& c : x.components()) {
        auto config = dual_config(c, x.n());
        auto conds = generic_conditions(config, ms[k], cfg.seed + 7919 * k + static_cast<std::uint64_t>(c.id));
        auto v = reparametrized_orbit_system(config, conds);
        if (v == OrbitVerdict::Infinite) return -1;
        total += static_cast<int>(v);
      }
      return total;
    });
  }
  Json list = Json::array();
  std::size_t agree = 0;
  for (std::size_t k = 0; k < ms.size(); ++k) {
    Json j;
    j["m"] = ms[k];
    j["c"] = cls.coeffs.at(ms[k]);
    if (cfg.oracle) {
      j["oracle"] = oracle[k];
      if (oracle[k] == cls.coeffs.at(ms[k])) ++agree;
    }
    list.push_back(j);
  }
  r.result["coefficients"] = list;
  r.result["support"] = cfg.m ? static_cast<std::size_t>(cls.coeffs.at(ms[0]) != 0) : cls.support();
  if (cfg.oracle) r.certificates.push_back("linear-system oracle agrees on " + std::to_string(agree) + "/" + std::to_string(ms.size()));
  r.text = "support " + r.result["support"].dump() + "\n";
  return r;
}

Report cmd_exclusion(const RunConfig& cfg) {
  Report r;
  r.args["n"] = cfg.n;
  auto cert = exclusion_certificate(cfg.n);
  r.result["verdict"] = cert.full_result.feasible ? "FEASIBLE" : "INFEASIBLE";
  r.result["triple"] = cert.triple;
  Json sets = Json::array();
  for (const auto& I : cert.index_sets) sets.push_back(to_json(I));
  r.result["index_sets"] = sets;
  r.result["farkas"] = to_json(cert.full_result.farkas);
  r.result["relaxed_verdict"] = cert.relaxed_result.feasible ? "FEASIBLE" : "INFEASIBLE";
  r.result["relaxed_witness"] = to_json(cert.relaxed_result.witness);
  r.result["ones_solve_relaxed"] = cert.ones_solve_relaxed;
  if (verify_farkas(cert.full, cert.full_result.farkas)) r.certificates.push_back("Fourier-Motzkin Farkas multipliers verified");
  if (verify_farkas(cert.full, cert.direct_farkas)) r.certificates.push_back("triple + (2) + positivity combination verified");
  if (cert.relaxed.satisfied_by(cert.relaxed_result.witness)) r.certificates.push_back("relaxed witness satisfies every row");
  r.text = r.result["verdict"].get<std::string>() + " witness (" + std::to_string(cert.triple[0]) + "," +
           std::to_string(cert.triple[1]) + "," + std::to_string(cert.triple[2]) + ")\n";
  return r;
}

Report cmd_family_check(const RunConfig& cfg) {
  Report r;
  r.args = base_args(cfg);
  r.args["trials"] = cfg.trials;
  auto results = parallel_map<int>(static_cast<std::size_t>(cfg.trials), cfg.threads, [&](std::size_t k) {
    std::uint64_t seed = cfg.seed * 1000003ULL + k;
    RationalStream rng(seed);
    RationalVector a = generic_base_params(cfg.n, seed);
    RationalVector s(static_cast<std::size_t>(cfg.n - 2));
    do {
      for (auto& q : s) q = rng.next();
    } while (all_zero(s));
    ProjPoint t(rng.next_nonzero(), rng.next(), rng.next());
    return verify_universal_family(cfg.n, a, s, t) ? 1 : 0;
  });
  int passed = 0;
  for (int v : results) passed += v;
  r.result["trials"] = cfg.trials;
  r.result["passed"] = passed;
  r.text = std::to_string(passed) + "/" + std::to_string(cfg.trials) + " identities hold\n";
  return r;
}

Report cmd_walls(const RunConfig& cfg) {
  Report r;
  auto w0 = default_base_weight(cfg.n);
  WeightVector w = cfg.weights ? weights_of(cfg) : WeightVector::ones(cfg.n);
  r.args = base_args(cfg);
  r.args["weights"] = to_json(w.values());
  Json walls = Json::array();
  for (const auto& wall : walls_between(w0.w0, w)) walls.push_back(to_json(wall));
  Json chain = Json::array();
  for (const auto& g : weight_chain(w0, w, cfg.seed)) chain.push_back(to_json(g.values()));
  r.result["base_weight"] = to_json(w0.w0.values());
  r.result["walls"] = walls;
  r.result["chain"] = chain;
  r.certificates.push_back("consecutive chain entries separated by exactly one multiple-point wall");
  r.text = std::to_string(walls.size()) + " walls, chain of length " + std::to_string(chain.size()) + "\n";
  return r;
}

Report cmd_h_locus(const RunConfig& cfg) {
  Report r;
  if (!cfg.I) throw Error(ErrorCode::InvalidArgument, "--I is required");
  IndexSet I(*cfg.I);
  I.check_bounds(cfg.n);
  RationalVector a = generic_base_params(cfg.n, cfg.seed);
  r.args = base_args(cfg);
  r.args["I"] = to_json(I);
  auto eqs = h_locus_equations(cfg.n, a, I);
  Json list = Json::array();
  for (const auto& e : eqs) list.push_back(to_json(e));
  std::size_t rk = rank(Matrix(eqs));
  r.result["a"] = to_json(a);
  r.result["equations"] = list;
  r.result["rank"] = rk;
  r.result["dim"] = cfg.n - 3 - static_cast<int>(rk);
  r.text = "rank " + std::to_string(rk) + ", dim H(I) = " + std::to_string(cfg.n - 3 - static_cast<int>(rk)) + "\n";
  return r;
}

using Handler = Report (*)(const RunConfig&);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"building-set", cmd_building_set}, {"strata", cmd_strata},         {"blowup-order", cmd_blowup_order},
      {"stable-replace", cmd_stable_replace}, {"dual-graph", cmd_dual_graph}, {"cycle-class", cmd_cycle_class},
      {"exclusion", cmd_exclusion},       {"family-check", cmd_family_check}, {"walls", cmd_walls},
      {"h-locus", cmd_h_locus},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"building-set", "strata",      "blowup-order", "stable-replace", "dual-graph",
                                              "cycle-class",  "exclusion",   "family-check", "walls",          "h-locus"};
  return names;
}

Report run_command(const std::string& name, const RunConfig& cfg) {
  auto it = handlers().find(name);
  if (it == handlers().end()) throw Error(ErrorCode::InvalidArgument, "unknown command " + name);
  if (cfg.n < 3) throw Error(ErrorCode::BadN, "n >= 3 required");
  if (cfg.budget == 0) throw Error(ErrorCode::InvalidArgument, "budget must be positive");
  auto start = std::chrono::steady_clock::now();
  Report r = it->second(cfg);
  r.command = name;
  if (cfg.timing)
    r.microseconds =
        std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string render(const Report& r, Format format) {
  if (format == Format::Dot) {
    if (r.dot.empty()) throw Error(ErrorCode::InvalidArgument, r.command + " has no DOT view");
    return r.dot;
  }
  if (format == Format::Text) {
    std::string out = r.text;
    for (const auto& c : r.certificates) out += "certificate: " + c + "\n";
    return out;
  }
  Json j;
  j["command"] = r.command;
  j["args"] = r.args;
  j["result"] = r.result;
  j["certificates"] = r.certificates;
  if (r.microseconds) j["microseconds"] = *r.microseconds;
  return dump(j);
}

int exit_code(ErrorCode code) { return code == ErrorCode::BudgetExceeded ? 3 : 2; }

}  // namespace shamoduli
