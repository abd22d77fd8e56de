// Batch front end: reads a JSON scenario, runs one command, emits a JSON report.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "e6iso/albert.hpp"
#include "e6iso/hermtriple.hpp"
#include "e6iso/idealgeom.hpp"
#include "e6iso/octonion.hpp"
#include "e6iso/wittforms.hpp"

using json = nlohmann::ordered_json;
using namespace e6iso;

namespace {

constexpr const char* kVersion = "1.0.0";

enum Exit { ok = 0, suite_failure = 1, config_error = 2, undecided = 3 };

[[noreturn]] void bad_config(const std::string& msg) { throw Error(ErrorCode::ConfigParseError, msg); }

std::string get_string(const json& cfg, const char* key, const std::string& fallback = {}) {
  if (!cfg.contains(key)) {
    if (fallback.empty()) bad_config(std::string("missing key '") + key + "'");
    return fallback;
  }
  if (!cfg[key].is_string()) bad_config(std::string("'") + key + "' must be a string");
  return cfg[key].get<std::string>();
}

std::vector<std::string> get_strings(const json& cfg, const char* key, std::size_t n,
                                     std::vector<std::string> fallback = {}) {
  if (!cfg.contains(key)) {
    if (fallback.empty()) bad_config(std::string("missing key '") + key + "'");
    return fallback;
  }
  const auto& a = cfg[key];
  if (!a.is_array() || (n && a.size() != n))
    bad_config(std::string("'") + key + "' must be a list of " + std::to_string(n) + " strings");
  std::vector<std::string> out;
  for (const auto& e : a) {
    if (!e.is_string()) bad_config(std::string("'") + key + "' entries must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::uint64_t get_count(const json& cfg, const char* key, std::uint64_t fallback) {
  if (!cfg.contains(key)) return fallback;
  if (!cfg[key].is_number_unsigned()) bad_config(std::string("'") + key + "' must be a non-negative integer");
  return cfg[key].get<std::uint64_t>();
}

// FNV-1a over the serialized coordinates.
std::string digest(const json& j) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct Run {
  json cfg;
  std::string command;
  std::uint64_t seed = 1;
  std::uint64_t budget = 5000;
};

// ---------------------------------------------------------------- builders

template <class F>
OctonionAlgebra<F> make_octonions(const F& k, const json& cfg) {
  if (!cfg.contains("octonion")) return OctonionAlgebra<F>::zorn(k);
  const auto& o = cfg["octonion"];
  if (o.is_string()) {
    auto s = o.get<std::string>();
    if (s == "zorn" || s == "split") return OctonionAlgebra<F>::zorn(k);
    bad_config("octonion must be \"zorn\" or a list of three Cayley-Dickson parameters");
  }
  auto p = get_strings(cfg, "octonion", 3);
  return OctonionAlgebra<F>::cayley_dickson(k, k.parse(p[0]), k.parse(p[1]), k.parse(p[2]));
}

template <class F>
AlbertAlgebra<F> make_albert(const F& k, const json& cfg) {
  auto g = get_strings(cfg, "gamma", 3, {"1", "1", "1"});
  return AlbertAlgebra<F>(make_octonions(k, cfg), {k.parse(g[0]), k.parse(g[1]), k.parse(g[2])});
}

template <class F>
EtaleAlgebra<F> make_etale(const F& k, const json& cfg) {
  return EtaleAlgebra<F>::parse(k, get_string(cfg, "K", "split"));
}

template <class F>
json coords(const F& k, const std::vector<typename F::Scalar>& v) {
  json a = json::array();
  for (const auto& s : v) a.push_back(k.str(s));
  return a;
}

// ---------------------------------------------------------------- verify

template <class F>
int cmd_verify(const F& k, const Run& run, json& rep) {
  auto A = make_albert(k, run.cfg);
  Rng rng(run.seed);
  auto samples = get_count(run.cfg, "samples", 1000);
  bool finite = k.is_finite();
  bool psi_default = finite && A.octonions().is_zorn() && k.size() == 3;
  auto suites = get_strings(run.cfg, "suites", 0, psi_default ? std::vector<std::string>{"identities", "composition", "psi_table"}
                                                             : std::vector<std::string>{"identities", "composition"});
  bool pass = true;
  json out = json::object();
  for (const auto& s : suites) {
    if (s == "identities") {
      auto r = identity_suite(A, samples, rng);
      json c = json::object();
      for (const auto& [name, cnt] : r.counts) c[name] = {{"checked", cnt.checked}, {"failed", cnt.failed}};
      out["identities"] = {{"tuples", r.tuples}, {"counts", c}, {"pass", r.ok()}};
      pass = pass && r.ok();
    } else if (s == "composition") {
      const auto& C = A.octonions();
      bool exhaustive = finite && k.size() == 2;
      CompositionReport r;
      if constexpr (detail::is_finite_field<F>) {
        r = exhaustive ? composition_law_exhaustive(C) : composition_law_check(C, samples, rng);
      } else {
        r = composition_law_check(C, samples, rng);
      }
      out["composition"] = {{"mode", exhaustive ? "exhaustive" : "random"},
                            {"pairs", r.pairs},
                            {"norm_failures", r.norm_failures},
                            {"conj_failures", r.conj_failures},
                            {"alternative_failures", r.left_alt_failures + r.right_alt_failures},
                            {"pass", r.ok()}};
      pass = pass && r.ok();
    } else if (s == "psi_table") {
      if constexpr (detail::is_finite_field<F>) {
        auto r = psi_table_check(A, rng);
        json rows = json::array();
        for (const auto& row : r.rows)
          rows.push_back({{"dim_x", row.label}, {"expected", row.expected}, {"got", row.got}, {"pass", row.ok()}});
        out["psi_table"] = {{"rows", rows}, {"pass", r.ok()}};
        pass = pass && r.ok();
      } else {
        bad_config("psi_table needs a finite field");
      }
    } else {
      bad_config("unknown suite '" + s + "'");
    }
  }
  rep["suites"] = out;
  rep["verdict"] = pass ? "pass" : "fail";
  return pass ? ok : suite_failure;
}

// ---------------------------------------------------------------- witness

template <class F>
json witness_json(const HermTriple<F>& T, const Witness<F>& w, Rng& rng, bool& verified) {
  const F& k = T.base();
  const auto& AK = T.extended();
  json x = coords(k, T.to_vec(w.x));
  json v = coords(k, T.to_vec(w.v));
  bool adj = AK.adjoint(w.x).is_zero() && !w.x.is_zero();
  bool cross_ok = AK.cross(T.iota(w.x), w.v) == w.x;
  json cls;
  try {
    auto c = witness_classify(T, w.x, rng);
    cls = {{"trace_zero", c.trace_zero}, {"verified", c.verified}};
    if (c.nilpotent) cls["nilpotent"] = coords(k, c.nilpotent->coords());
  } catch (const Error& e) {
    cls = {{"error", e.what()}, {"verified", false}};
  }
  verified = adj && cross_ok && cls["verified"].get<bool>();
  return {{"strategy", strategy_name(w.via)},
          {"x", x},
          {"v", v},
          {"transcript", {{"adjoint_zero", adj}, {"x_equals_iota_x_cross_v", cross_ok}, {"classification", cls}}},
          {"hash_x", digest(x)},
          {"hash_v", digest(v)}};
}

template <class F>
std::vector<WitnessStrategy> strategy_order(const F& k, const EtaleAlgebra<F>& K, const json& cfg) {
  std::vector<WitnessStrategy> order;
  if (cfg.contains("strategies")) {
    for (const auto& s : get_strings(cfg, "strategies", 0)) {
      if (s == "nilpotent") order.push_back(WitnessStrategy::nilpotent);
      else if (s == "subalgebra") order.push_back(WitnessStrategy::subalgebra);
      else if (s == "search") order.push_back(WitnessStrategy::search);
      else bad_config("unknown strategy '" + s + "'");
    }
    return order;
  }
  if (K.is_split())
    order = {WitnessStrategy::subalgebra, WitnessStrategy::nilpotent};
  else
    order = {WitnessStrategy::nilpotent, WitnessStrategy::subalgebra};
  if (k.is_finite()) order.push_back(WitnessStrategy::search);
  return order;
}

template <class F>
json find_witness(const HermTriple<F>& T, const std::vector<WitnessStrategy>& order, std::uint64_t budget,
                  std::uint64_t seed, bool& found, bool& verified) {
  json budgets = json::object();
  for (auto s : order) {
    Rng rng(seed);
    auto w = isotropy_witness_search(T, s, budget, rng);
    budgets[strategy_name(s)] = budget;
    if (w) {
      found = true;
      auto j = witness_json(T, *w, rng, verified);
      j["seed"] = seed;
      return j;
    }
  }
  found = false;
  verified = true;
  return {{"status", "NotFound"}, {"budgets_used", budgets}, {"seed", seed}};
}

template <class F>
int cmd_witness(const F& k, const Run& run, json& rep) {
  auto A = make_albert(k, run.cfg);
  auto K = make_etale(k, run.cfg);
  auto order = strategy_order(k, K, run.cfg);
  HermTriple<F> T(A, K);
  bool found = false, verified = false;
  rep["K"] = K.name();
  rep["witness"] = find_witness(T, order, run.budget, run.seed, found, verified);
  rep["verdict"] = found ? (verified ? "witness" : "unverified") : "not_found";
  return verified ? ok : suite_failure;
}

// ---------------------------------------------------------------- psi

template <class F>
int cmd_psi(const F& k, const Run& run, json& rep) {
  if constexpr (detail::is_finite_field<F>) {
    auto A = make_albert(k, run.cfg);
    Rng rng(run.seed);
    auto r = psi_table_check(A, rng, get_count(run.cfg, "restarts", 40));
    json rows = json::array();
    for (const auto& row : r.rows)
      rows.push_back({{"dim_x", row.label},
                      {"expected", row.expected},
                      {"got", row.got},
                      {"psi_inner", row.psi_is_inner},
                      {"zero_bracket_match", row.zero_bracket_match},
                      {"extra", row.extra_ok},
                      {"pass", row.ok()}});
    rep["rows"] = rows;
    rep["restarts"] = r.restarts;
    rep["verdict"] = r.ok() ? "pass" : "fail";
    return r.ok() ? ok : suite_failure;
  } else {
    (void)k;
    (void)run;
    (void)rep;
    bad_config("psi needs a finite field");
  }
}

// ---------------------------------------------------------------- embed

template <class F>
int cmd_embed(const F& k, const Run& run, json& rep) {
  auto C = make_octonions(k, run.cfg);
  auto K = make_etale(k, run.cfg);
  auto r = k.parse(get_string(run.cfg, "r", "1"));
  auto s = K.parse(get_string(run.cfg, "s", "1"));
  Rng rng(run.seed);
  auto w = embed_kxK(C, r, s, K, rng, get_count(run.cfg, "samples", 200));
  HermTriple<F> T(w.map.A, K);
  const auto& AK = T.extended();
  bool cross_ok = solve_cross_partner(T, w.x).has_value();
  bool trace_one = AK.trace(w.x) == K.one();
  json out = {{"gamma", coords(k, {w.map.A.gamma()[0], w.map.A.gamma()[1], w.map.A.gamma()[2]})},
              {"phi_1_0", coords(k, w.phi_1_0.coords())},
              {"phi_0_1", coords(k, w.phi_0_1.coords())},
              {"phi_0_d", coords(k, w.phi_0_d.coords())},
              {"unital", w.unital},
              {"norm_checks", w.norm_checks},
              {"norms_ok", w.norms_ok},
              {"closed_under_sharp", w.closed},
              {"witness", {{"x", coords(k, T.to_vec(w.x))}, {"x_equals_iota_x_cross_v", cross_ok}, {"trace_one", trace_one}}}};
  bool pass = w.unital && w.norms_ok && w.closed && cross_ok && trace_one;
  if (k.characteristic() != 2) {
    auto fr = frame_from_embedding(C, K, s);
    out["frame"] = {{"idempotent", fr.idempotent}, {"orthogonal", fr.orthogonal}, {"sum_one", fr.sum_one},
                    {"trace_one", fr.trace_one},   {"descent_fixed", fr.descent_fixed}};
    pass = pass && fr.ok();
  }
  rep["embedding"] = out;
  rep["verdict"] = pass ? "pass" : "fail";
  return pass ? ok : suite_failure;
}

// ---------------------------------------------------------------- index

json witt_json(const TowerField& F, const DiagForm& f, const WittClass& w) {
  json j = {{"form", form_string(F, f)},
            {"dim", f.dim()},
            {"witt_index", w.witt_index},
            {"kernel", form_string(F, w.kernel)},
            {"hyperbolic", w.is_zero()}};
  if (w.signature) j["signature"] = *w.signature;
  return j;
}

FormEntry delta_of(const TowerField& F, const json& cfg) {
  if (cfg.contains("delta")) return parse_entry(F, get_string(cfg, "delta"));
  auto ks = get_string(cfg, "K", "split");
  if (ks == "split") return FormEntry{1, 0};
  if (F.depth() != 0) bad_config("over a tower give K by its square class 'delta'");
  auto any = parse_field(F.name());
  return std::visit(
      [&](const auto& k) -> FormEntry {
        auto K = EtaleAlgebra<std::decay_t<decltype(k)>>::parse(k, ks);
        if (K.is_split()) return FormEntry{1, 0};
        return parse_entry(F, k.str(K.delta()));
      },
      any);
}

int cmd_index(const Run& run, json& rep) {
  const auto& cfg = run.cfg;
  std::vector<std::string> vars = cfg.contains("vars") ? get_strings(cfg, "vars", 0) : std::vector<std::string>{};
  auto F = TowerField::parse(get_string(cfg, "field"), vars);
  FormAlbertData A;
  bool split_c = !cfg.contains("octonion") || (cfg["octonion"].is_string() &&
                                                (cfg["octonion"] == "zorn" || cfg["octonion"] == "split"));
  std::array<std::string, 3> cl{"1", "1", "1"};
  if (!split_c) {
    auto c = get_strings(cfg, "octonion", 3);
    cl = {c[0], c[1], c[2]};
  }
  auto g = get_strings(cfg, "gamma", 3, {"1", "1", "1"});
  for (int i = 0; i < 3; ++i) {
    A.c[i] = parse_entry(F, cl[i]);
    A.gamma[i] = parse_entry(F, g[i]);
  }
  FormEntry delta = delta_of(F, cfg);

  auto r = classify_index(F, A, delta);
  rep["tower"] = F.name();
  rep["delta"] = entry_string(F, delta);
  json gn = json::array();
  for (const auto& e : r.inv.gamma_normalized) gn.push_back(entry_string(F, e));
  rep["gamma_normalized"] = gn;
  rep["f3"] = witt_json(F, r.inv.f3_form, r.inv.f3);
  rep["f5"] = witt_json(F, r.inv.f5_form, r.inv.f5);
  json search = {{"tried", r.search.tried}, {"complete", r.search.complete}};
  if (r.search.gamma) {
    json gj = json::array();
    for (const auto& e : *r.search.gamma) gj.push_back(entry_string(F, e));
    search["gamma"] = gj;
    auto gf = pfister(F, *r.search.gamma);
    auto gk = tensor(F, gf, k_norm_form(F, delta));
    search["gamma_times_K"] = witt_json(F, gk, witt_decompose(gk, F));
    auto g3 = tensor(F, gf, r.inv.f3_form);
    search["gamma_times_f3"] = witt_json(F, g3, witt_decompose(g3, F));
  } else {
    search["gamma"] = nullptr;
    search["absence"] = r.search.complete ? "proved: the pool decides the signature criterion"
                                          : "not proved: search is one-sided here";
  }
  rep["mt3_search"] = search;
  rep["mt3prime"] = mt3prime_check(F, A, delta);
  if (r.killed_by_k) rep["killed_by_K"] = *r.killed_by_k;
  rep["label"] = tits_label_name(r.label);
  rep["reason"] = r.reason;

  // Over a prime field the algebra itself is at hand: attach a witness.
  if (!F.is_rational() && F.depth() == 0 && r.search.gamma) {
    GaloisField k(F.p());
    auto scalar = [&](const FormEntry& e) { return k.from_int(e.unit.get_si()); };
    auto C = OctonionAlgebra<GaloisField>::cayley_dickson(k, scalar(A.c[0]), scalar(A.c[1]), scalar(A.c[2]));
    AlbertAlgebra<GaloisField> AA(C, {scalar(A.gamma[0]), scalar(A.gamma[1]), scalar(A.gamma[2])});
    auto K = is_square(F, delta) ? EtaleAlgebra<GaloisField>::split(k)
                                 : EtaleAlgebra<GaloisField>::from_polynomial(k, k.zero(), -scalar(delta));
    HermTriple<GaloisField> T(AA, K);
    bool found = false, verified = false;
    rep["witness"] = find_witness(T, strategy_order(k, K, cfg), run.budget, run.seed, found, verified);
    if (found && !verified) return suite_failure;
  }
  if (r.label == TitsIndexLabel::undecided) {
    rep["error"] = std::string("UndecidedRegime: ") + r.reason;
    return undecided;
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Albert algebras, hermitian triples and isotropy of groups of type 2E6"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path, out_path;
  std::uint64_t seed = 0, budget = 0;
  bool quiet = false;
  app.add_option("--config", config_path, "Scenario file (JSON)")->required();
  auto* seed_opt = app.add_option("--seed", seed, "Random seed");
  auto* budget_opt = app.add_option("--budget", budget, "Search budget per strategy");
  app.add_option("--out", out_path, "Write the JSON report here");
  app.add_flag("--quiet", quiet, "Do not print the report");
  app.add_subcommand("verify", "Identity, composition and psi-table suites");
  app.add_subcommand("index", "Tits index from the Albert invariants and K");
  app.add_subcommand("witness", "Isotropy witness for the hermitian triple");
  app.add_subcommand("psi", "Inner ideals and their psi partners");
  app.add_subcommand("embed", "Standard k x K embedding and its frame");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? ok : config_error;
  }

  Run run;
  run.command = app.get_subcommands().front()->get_name();
  json rep;
  int status = ok;
  try {
    std::ifstream in(config_path);
    if (!in) bad_config("cannot read " + config_path);
    try {
      run.cfg = json::parse(in);
    } catch (const json::exception& e) {
      bad_config(e.what());
    }
    if (!run.cfg.is_object()) bad_config("scenario must be a JSON object");
    run.seed = seed_opt->count() ? seed : get_count(run.cfg, "seed", 1);
    run.budget = budget_opt->count() ? budget : get_count(run.cfg, "budget", 5000);
    rep["version"] = kVersion;
    rep["command"] = run.command;
    rep["scenario"] = run.cfg;
    rep["seed"] = run.seed;
    rep["budget"] = run.budget;
    if (run.command == "index") {
      status = cmd_index(run, rep);
    } else {
      auto field = parse_field(get_string(run.cfg, "field"));
      rep["field"] = std::visit([](const auto& k) { return k.name(); }, field);
      status = std::visit(
          [&](const auto& k) {
            if (run.command == "verify") return cmd_verify(k, run, rep);
            if (run.command == "witness") return cmd_witness(k, run, rep);
            if (run.command == "psi") return cmd_psi(k, run, rep);
            return cmd_embed(k, run, rep);
          },
          field);
    }
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::UndecidedRegime: status = undecided; break;
      case ErrorCode::ConstructionFailed: status = suite_failure; break;
      default: status = config_error;
    }
    rep["error"] = e.what();
  }
  if (status == config_error && !rep.contains("command")) {
    std::cerr << rep["error"].get<std::string>() << "\n";
    return status;
  }
  rep["exit_code"] = status;
  std::string text = rep.dump(2) + "\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return config_error;
    }
    out << text;
  }
  if (!quiet) std::cout << text;
  if (status != ok && rep.contains("error")) std::cerr << rep["error"].get<std::string>() << "\n";
  return status;
}
