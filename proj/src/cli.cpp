#include "ecms/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "CLI11.hpp"
#include "ecms/elliptic.hpp"
#include "ecms/oracle.hpp"
#include "ecms/verify.hpp"

namespace ecms {

namespace {

constexpr const char* kVersion = "ecms 1.0.0";

Weight parse_lambda(int n, const std::string& text) {
  std::vector<int> parts;
  std::string cur;
  for (char ch : text + ",") {
    if (ch == ',') {
      if (cur.empty()) throw config_error("bad lambda: " + text);
      parts.push_back(std::stoi(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (static_cast<int>(parts.size()) > n) throw config_error("lambda has more than N parts");
  parts.resize(n, 0);
  return Weight(n, std::move(parts));
}

nlohmann::ordered_json rat_json(const Rat& q) {
  nlohmann::ordered_json j;
  j["num"] = q.get_num().get_str();
  j["den"] = q.get_den().get_str();
  return j;
}

nlohmann::ordered_json ratio_val_json(const RatioVal& v) {
  nlohmann::ordered_json j;
  j["q_num"] = v.q.get_num().get_str();
  j["q_den"] = v.q.get_den().get_str();
  j["s_num"] = v.s.get_num().get_str();
  j["s_den"] = v.s.get_den().get_str();
  j["value"] = fmt17(v.value());
  return j;
}

nlohmann::ordered_json header(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  j["command"] = cfg.command;
  return j;
}

Coupling coupling_of(const RunConfig& cfg) { return Coupling(cfg.N, rat_parse(cfg.beta)); }

nlohmann::ordered_json series_json(const SeriesCoeffs& s, const std::vector<double>& ps,
                                   double p0) {
  nlohmann::ordered_json j;
  j["lambda"] = s.label.str();
  if (!s.branch.empty()) j["branch"] = s.branch;
  nlohmann::ordered_json energy = nlohmann::ordered_json::array();
  for (int k = 0; k <= s.K; ++k) {
    nlohmann::ordered_json e = rat_json(s.energy[k]);
    e["order"] = k;
    energy.push_back(std::move(e));
  }
  j["energy_coefficients"] = std::move(energy);
  nlohmann::ordered_json vecs = nlohmann::ordered_json::array();
  for (int k = 0; k <= s.K; ++k) {
    nlohmann::ordered_json ord = nlohmann::ordered_json::array();
    for (const auto& [w, v] : s.vectors[k]) {
      nlohmann::ordered_json t = ratio_val_json(v);
      t["partition"] = w.str();
      ord.push_back(std::move(t));
    }
    vecs.push_back(std::move(ord));
  }
  j["vector_coefficients"] = std::move(vecs);
  nlohmann::ordered_json evals = nlohmann::ordered_json::array();
  for (double p : ps) {
    SeriesEval ev = series_eval(s, p);
    nlohmann::ordered_json e;
    e["p"] = fmt17(p);
    e["energy"] = fmt17(ev.energy);
    e["tail_estimate"] = fmt17(ev.tail_estimate);
    if (std::abs(p) >= p0) e["warning"] = "p at or above the separation bound p0";
    evals.push_back(std::move(e));
  }
  j["evaluations"] = std::move(evals);
  return j;
}

}  // namespace

nlohmann::ordered_json cmd_jack(const RunConfig& cfg) {
  Coupling c = coupling_of(cfg);
  if (cfg.lambdas.empty()) throw config_error("jack requires --lambda");
  nlohmann::ordered_json out = header(cfg);
  out["N"] = c.N;
  out["beta"] = rat_str(c.beta);
  nlohmann::ordered_json items = nlohmann::ordered_json::array();
  JackEngine engine(c);
  for (const auto& text : cfg.lambdas) {
    Weight lam = parse_lambda(c.N, text);
    const JackPolynomial& jp = engine.jack(lam);
    nlohmann::ordered_json item;
    item["lambda"] = lam.str();
    item["eigenvalue"] = rat_json(jp.eigenvalue);
    // fixed-degree view: keys as partitions of |lambda|*
    nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
    for (const auto& [w, q] : jp.expansion.terms()) {
      nlohmann::ordered_json t;
      std::vector<int> parts = w.parts();
      int lift = static_cast<int>((lam.total() - w.total()) / c.N);
      for (auto& p : parts) p += lift;
      std::string key;
      for (size_t i = 0; i < parts.size(); ++i)
        key += (i ? "," : "") + std::to_string(parts[i]);
      t["partition"] = key;
      t["coeff"] = rat_json(q);
      coeffs.push_back(std::move(t));
    }
    item["coefficients"] = std::move(coeffs);
    item["sympoly"] = sympoly_to_json(jp.expansion);
    items.push_back(std::move(item));
  }
  out["jacks"] = std::move(items);
  return out;
}

nlohmann::ordered_json cmd_spectrum(const RunConfig& cfg) {
  Coupling c = coupling_of(cfg);
  if (cfg.lambdas.empty()) throw config_error("spectrum requires --lambda");
  for (double p : cfg.p_values)
    if (!(std::abs(p) < 1.0)) throw config_error("|p| must be < 1");
  const int K = cfg.order;
  if (K < 0) throw config_error("order must be >= 0");

  std::vector<Weight> lams;
  int needed_L = 0;
  for (const auto& text : cfg.lambdas) {
    lams.push_back(parse_lambda(c.N, text));
    for (const auto& mu : coupling_ball(lams.back(), K, c))
      needed_L = std::max(needed_L, static_cast<int>(mu.total()));
  }
  int L = cfg.cutoff.value_or(needed_L);
  BasisWindow win(c, L);
  JackEngine engine(c);
  std::vector<OrderKMatrix> orders;
  for (int k = 1; k <= K; ++k) orders.push_back(wk_matrix(k, win, engine, Exec::Parallel));

  double p0 = 1.0;
  try {
    p0 = p0_solve(c);
  } catch (const config_error&) {
    // beta = 1: free case, no separation bound needed
  }

  nlohmann::ordered_json out = header(cfg);
  out["N"] = c.N;
  out["beta"] = rat_str(c.beta);
  out["order"] = K;
  out["cutoff"] = L;
  out["p0"] = fmt17(p0);
  nlohmann::ordered_json states = nlohmann::ordered_json::array();
  bool unresolved = false;
  std::string unresolved_note;
  for (const auto& lam : lams) {
    DegenerateBlock block = degeneracy_scan(lam, K, c);
    nlohmann::ordered_json state;
    state["lambda"] = lam.str();
    nlohmann::ordered_json members = nlohmann::ordered_json::array();
    for (const auto& m : block.members) members.push_back(m.str());
    state["degeneracy"] = std::move(members);
    if (block.members.size() == 1) {
      state["series"] = series_json(rs_series(lam, K, win, orders), cfg.p_values, p0);
    } else {
      BlockSeriesResult res = degenerate_block_series(block, K, win, orders, engine);
      state["resolved"] = res.resolved;
      if (!res.note.empty()) state["note"] = res.note;
      nlohmann::ordered_json branches = nlohmann::ordered_json::array();
      for (const auto& b : res.branches)
        branches.push_back(series_json(b, cfg.p_values, p0));
      state["branches"] = std::move(branches);
      if (!res.resolved) {
        unresolved = true;
        unresolved_note = res.note;
      }
    }
    states.push_back(std::move(state));
  }
  out["states"] = std::move(states);
  if (unresolved) {
    out["unresolved_degeneracy"] = true;
    out["unresolved_note"] = unresolved_note;
  }
  return out;
}

nlohmann::ordered_json cmd_diag(const RunConfig& cfg) {
  Coupling c = coupling_of(cfg);
  if (cfg.p_values.empty()) throw config_error("diag requires --p");
  int L = cfg.cutoff.value_or(8);
  BasisWindow win(c, L);
  JackEngine engine(c);
  nlohmann::ordered_json out = header(cfg);
  out["N"] = c.N;
  out["beta"] = rat_str(c.beta);
  out["cutoff"] = L;
  out["order"] = cfg.order;
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  for (double p : cfg.p_values) {
    TruncatedOperator t = t_matrix(p, win, cfg.order, engine, Exec::Parallel);
    SpectralReport rep = diag_truncated(t);
    nlohmann::ordered_json r;
    r["p"] = fmt17(p);
    r["dim"] = rep.dim;
    nlohmann::ordered_json evs = nlohmann::ordered_json::array();
    nlohmann::ordered_json res = nlohmann::ordered_json::array();
    for (double e : rep.eigenvalues) evs.push_back(fmt17(e));
    for (double e : rep.residuals) res.push_back(fmt17(e));
    r["eigenvalues"] = std::move(evs);
    r["residuals"] = std::move(res);
    runs.push_back(std::move(r));
  }
  out["runs"] = std::move(runs);
  return out;
}

nlohmann::ordered_json cmd_bounds(const RunConfig& cfg) {
  Coupling c = coupling_of(cfg);
  nlohmann::ordered_json out = header(cfg);
  out["N"] = c.N;
  out["beta"] = rat_str(c.beta);
  out["n_gram"] = weight_gram_denominator(c.N);
  out["k_den"] = c.k_den;
  std::vector<double> samples = cfg.p_values;
  if (samples.empty()) samples = {0.001, 0.005, 0.01, 0.05, 0.1, 0.2};
  nlohmann::ordered_json ws = nlohmann::ordered_json::array();
  for (double p : samples) {
    nlohmann::ordered_json w;
    w["p"] = fmt17(p);
    w["w_max"] = fmt17(w_max(Nome(p), c));
    ws.push_back(std::move(w));
  }
  out["w_max_samples"] = std::move(ws);
  out["p0"] = fmt17(p0_solve(c));
  return out;
}

nlohmann::ordered_json cmd_wp(const RunConfig& cfg) {
  if (cfg.p_values.empty()) throw config_error("wp requires --p");
  nlohmann::ordered_json out = header(cfg);
  out["x"] = fmt17(cfg.x);
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  for (double p : cfg.p_values) {
    Nome nome(p);
    WpEval q = wp_qseries({cfg.x, 0.0}, nome, cfg.terms);
    nlohmann::ordered_json r;
    r["p"] = fmt17(p);
    r["qseries"] = fmt17(q.value.real());
    r["qseries_tail_bound"] = fmt17(q.tail_bound);
    if (p != 0.0) {
      std::complex<double> l = wp_lattice({cfg.x, 0.0}, nome.tau(), cfg.lattice_cutoff);
      r["lattice"] = fmt17(l.real());
      r["difference"] = fmt17(std::abs(q.value - l));
    }
    runs.push_back(std::move(r));
  }
  out["runs"] = std::move(runs);
  return out;
}

nlohmann::ordered_json cmd_verify(const RunConfig& cfg) {
  Suite suite = run_suite(cfg.suite, !cfg.quick);
  nlohmann::ordered_json out = header(cfg);
  out["suite"] = cfg.suite;
  out.update(suite_to_json(suite));
  return out;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string spectrum_csv(const nlohmann::ordered_json& result) {
  std::string out = "kind,lambda,branch,order,p,num,den,value,error\n";
  auto emit_series = [&](const nlohmann::ordered_json& s) {
    std::string lam = s.at("lambda").get<std::string>();
    std::string branch = s.contains("branch") ? s.at("branch").get<std::string>() : "";
    for (const auto& e : s.at("energy_coefficients"))
      out += "coeff," + csv_escape(lam) + "," + branch + "," +
             std::to_string(e.at("order").get<int>()) + ",," + e.at("num").get<std::string>() +
             "," + e.at("den").get<std::string>() + ",,\n";
    for (const auto& e : s.at("evaluations"))
      out += "eval," + csv_escape(lam) + "," + branch + ",," + e.at("p").get<std::string>() +
             ",,," + e.at("energy").get<std::string>() + "," +
             e.at("tail_estimate").get<std::string>() + "\n";
  };
  for (const auto& st : result.at("states")) {
    if (st.contains("series")) emit_series(st.at("series"));
    if (st.contains("branches"))
      for (const auto& b : st.at("branches")) emit_series(b);
  }
  return out;
}

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  // atomic per-job write: temp file in the target directory, then rename
  std::filesystem::path target(cfg.output);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw config_error("cannot open output file: " + cfg.output);
    f << text;
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace

std::string render_output(const RunConfig& cfg, const nlohmann::ordered_json& result) {
  if (cfg.format == "csv") {
    if (cfg.command == "spectrum") return spectrum_csv(result);
    throw config_error("csv format is only available for spectrum");
  }
  return result.dump(2) + "\n";
}

int run_cli(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"spectra of the elliptic deformation of the trigonometric inverse-sin^2 chain"};
  app.set_config("--config");
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--N", cfg.N, "number of particles (>= 2)");
    sub->add_option("--beta", cfg.beta, "coupling constant, rational a/b");
    sub->add_option("--output", cfg.output, "write the result to this path");
    sub->add_option("--format", cfg.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* jack = app.add_subcommand("jack", "exact Jacobi polynomial expansion");
  add_common(jack);
  jack->add_option("--lambda", cfg.lambdas, "partition, e.g. 2,0");

  CLI::App* spectrum = app.add_subcommand("spectrum", "perturbation series and evaluations");
  add_common(spectrum);
  spectrum->add_option("--lambda", cfg.lambdas, "target state partition(s)");
  spectrum->add_option("--order", cfg.order, "series order K");
  spectrum->add_option("--cutoff", cfg.cutoff, "basis window cutoff L (default: fit the ball)");
  spectrum->add_option("--p", cfg.p_values, "evaluation points, |p| < 1");

  CLI::App* diag = app.add_subcommand("diag", "dense truncated diagonalization");
  add_common(diag);
  diag->add_option("--p", cfg.p_values, "nome values");
  diag->add_option("--cutoff", cfg.cutoff, "basis window cutoff L");
  diag->add_option("--order", cfg.order, "number of potential orders K");

  CLI::App* bounds = app.add_subcommand("bounds", "perturbation norm bound and p0");
  add_common(bounds);
  bounds->add_option("--p", cfg.p_values, "sample points for W_max");

  CLI::App* wp = app.add_subcommand("wp", "both elliptic evaluations and their difference");
  add_common(wp);
  wp->add_option("--x", cfg.x, "evaluation point");
  wp->add_option("--p", cfg.p_values, "nome values");
  wp->add_option("--terms", cfg.terms, "q-series terms");
  wp->add_option("--cutoff", cfg.lattice_cutoff, "lattice rows");

  CLI::App* verify = app.add_subcommand("verify", "consistency suites");
  add_common(verify);
  verify->add_option("--suite", cfg.suite, "jack|cauchy|norms|wp|symmetry|perturbation|rank")
      ->check(CLI::IsMember({"jack", "cauchy", "norms", "wp", "symmetry", "perturbation", "rank"}));
  verify->add_flag("--quick", cfg.quick, "reduced desk scale");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::fprintf(stderr, "error: config: %s\n", e.what());
    return kExitConfig;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    nlohmann::ordered_json result;
    if (cfg.command == "jack") result = cmd_jack(cfg);
    else if (cfg.command == "spectrum") result = cmd_spectrum(cfg);
    else if (cfg.command == "diag") result = cmd_diag(cfg);
    else if (cfg.command == "bounds") result = cmd_bounds(cfg);
    else if (cfg.command == "wp") result = cmd_wp(cfg);
    else if (cfg.command == "verify") result = cmd_verify(cfg);
    write_output(cfg, render_output(cfg, result));
    if (cfg.command == "verify" && !result.at("pass").get<bool>()) return kExitConsistency;
    if (cfg.command == "spectrum" && result.contains("unresolved_degeneracy"))
      return kExitDegenerate;
    return kExitOk;
  } catch (const degeneracy_error& e) {
    std::fprintf(stderr, "error: degeneracy: %s\n", e.what());
    return kExitDegenerate;
  } catch (const consistency_error& e) {
    std::fprintf(stderr, "error: consistency: %s\n", e.what());
    return kExitConsistency;
  } catch (const config_error& e) {
    std::fprintf(stderr, "error: config: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: config: %s\n", e.what());
    return kExitConfig;
  }
}

}  // namespace ecms
