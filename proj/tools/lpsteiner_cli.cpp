// Command-line front end for the lpsteiner shared library. All computation
// goes through the C API in lpsteiner/lpsteiner.h; this translation unit only
// parses options, assembles bodies and regions, and serializes reports.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lpsteiner/lpsteiner.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitVerify = 4;

struct CliError {
  int exit_code;
  std::string message;
};

[[noreturn]] void die(int code, const std::string& msg) { throw CliError{code, msg}; }

void check(lps_status st, int exit_code = kExitNumeric) {
  if (st == LPS_OK) return;
  const int code = (st == LPS_ERR_INVALID_ARGUMENT || st == LPS_ERR_P_EQUALS_MINUS_N ||
                    st == LPS_ERR_T_OUT_OF_RANGE || st == LPS_ERR_UNSUPPORTED_DIMENSION ||
                    st == LPS_ERR_TRUNCATION_TOO_LARGE || st == LPS_ERR_IO)
                       ? kExitConfig
                       : exit_code;
  die(code, lps_last_error());
}

struct BodyHandle {
  lps_body* ptr = nullptr;
  ~BodyHandle() { lps_body_free(ptr); }
};
struct QuadHandle {
  lps_quadrature* ptr = nullptr;
  ~QuadHandle() { lps_quadrature_free(ptr); }
};
struct RegionHandle {
  lps_region* ptr = nullptr;
  ~RegionHandle() { lps_region_free(ptr); }
};
struct GridHandle {
  lps_grid* ptr = nullptr;
  ~GridHandle() { lps_grid_free(ptr); }
};

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (...) {
      die(kExitConfig, std::string("bad ") + what + " list entry: " + item);
    }
  }
  if (out.empty()) die(kExitConfig, std::string("empty ") + what + " list");
  return out;
}

struct PValue {
  lps_p_kind kind = LPS_P_FINITE;
  double value = 0.0;
  std::string token;
};

PValue parse_p(const std::string& token) {
  PValue p;
  p.token = token;
  if (token == "inf" || token == "+inf") {
    p.kind = LPS_P_POS_INF;
  } else if (token == "-inf") {
    p.kind = LPS_P_NEG_INF;
  } else {
    try {
      p.value = std::stod(token);
    } catch (...) {
      die(kExitConfig, "bad --p value: " + token + " (expect a number, inf or -inf)");
    }
  }
  return p;
}

json p_to_json(const PValue& p) {
  if (p.kind == LPS_P_POS_INF) return "inf";
  if (p.kind == LPS_P_NEG_INF) return "-inf";
  return p.value;
}

json value_or_inf(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return nullptr;
  return v;
}

// --body accepts inline tokens (ball:R, ellipsoid:a,b[,c..], square:a,
// cube:a) or the path of a body-spec JSON file
struct BodySpec {
  std::string token;
  json canonical;                 // resolved body description for the report
  void build(int n_flag, BodyHandle& out) const;
};

BodySpec parse_body(const std::string& token, int n_flag) {
  BodySpec spec;
  spec.token = token;
  const auto colon = token.find(':');
  const std::string head = token.substr(0, colon);
  if (head == "ball" || head == "ellipsoid" || head == "square" || head == "cube") {
    if (colon == std::string::npos)
      die(kExitConfig, "inline body needs parameters, e.g. ball:2 or ellipsoid:1,2");
    const std::string args = token.substr(colon + 1);
    if (head == "ball") {
      const double R = parse_list(args, "ball radius")[0];
      spec.canonical = {{"kind", "ball"}, {"radius", R}, {"n", n_flag > 0 ? n_flag : 3}};
    } else if (head == "ellipsoid") {
      const auto axes = parse_list(args, "ellipsoid axes");
      if (n_flag > 0 && n_flag != int(axes.size()))
        die(kExitConfig, "--n disagrees with the ellipsoid axis count");
      spec.canonical = {{"kind", "ellipsoid"}, {"axes", axes}};
    } else {
      const double a = parse_list(args, "halfwidth")[0];
      json verts = json::array();
      if (head == "square") {
        for (auto [x, y] : {std::pair{a, a}, {-a, a}, {-a, -a}, {a, -a}})
          verts.push_back({x, y});
      } else {
        for (int sx : {-1, 1})
          for (int sy : {-1, 1})
            for (int sz : {-1, 1}) verts.push_back({sx * a, sy * a, sz * a});
      }
      spec.canonical = {{"kind", "polytope"}, {"vertices", verts}};
    }
    return spec;
  }
  // otherwise a file path
  std::ifstream in(token);
  if (!in) die(kExitConfig, "cannot open body file: " + token);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    spec.canonical = json::parse(ss.str());
  } catch (const std::exception& e) {
    die(kExitConfig, std::string("body file is not valid JSON: ") + e.what());
  }
  return spec;
}

void BodySpec::build(int /*n_flag*/, BodyHandle& out) const {
  check(lps_body_from_json(canonical.dump().c_str(), &out.ptr), kExitConfig);
}

struct RegionSpec {
  std::string token;
  json canonical;
};

RegionSpec parse_region(const std::string& token) {
  RegionSpec spec;
  spec.token = token;
  spec.canonical = token;
  return spec;
}

// region tokens: full | cap:cx,..,cn:angle | sector:t0:t1 |
// halfspace:a1,..,an:b | ball:c1,..,cn:r  (the last two are spatial
// pullbacks through the reverse Gauss map)
void build_region(const std::string& token, const BodyHandle& body, RegionHandle& out) {
  if (token == "full" || token.empty()) {
    check(lps_region_full(&out.ptr), kExitConfig);
    return;
  }
  const auto c1 = token.find(':');
  if (c1 == std::string::npos) die(kExitConfig, "bad --region token: " + token);
  const std::string head = token.substr(0, c1);
  const auto c2 = token.rfind(':');
  if (c2 == c1) die(kExitConfig, "region needs two ':' separators: " + token);
  const auto mid = parse_list(token.substr(c1 + 1, c2 - c1 - 1), "region vector");
  const double last = parse_list(token.substr(c2 + 1), "region scalar")[0];
  if (head == "cap") {
    check(lps_region_cap(int(mid.size()), mid.data(), last, &out.ptr), kExitConfig);
  } else if (head == "sector") {
    if (mid.size() != 1) die(kExitConfig, "sector:theta0:theta1 expects two angles");
    check(lps_region_sector(mid[0], last, &out.ptr), kExitConfig);
  } else if (head == "halfspace") {
    check(lps_region_halfspace_pullback(body.ptr, mid.data(), last, &out.ptr), kExitConfig);
  } else if (head == "ball") {
    check(lps_region_ball_pullback(body.ptr, mid.data(), last, &out.ptr), kExitConfig);
  } else {
    die(kExitConfig, "unknown region kind: " + head);
  }
}

void emit(const json& report, const std::string& out_path) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) die(kExitConfig, "cannot open output file: " + out_path);
    out << text;
  }
}

void emit_raw(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) die(kExitConfig, "cannot open output file: " + out_path);
    out << text;
  }
}

// shared command options
struct Common {
  std::string body_token;
  int n = 0; // 0 = unset; balls default to n = 3
  std::string p_token = "1";
  double s = 0.0;
  int quad_level = 5;
  int M = 24, Kmax = 24;
  double tol = 1e-6;
  std::string t_token;
  std::string out_path;
  std::string format = "json";
  int threads = 0;
  bool allow_near_beta = false;

  void add_to(CLI::App* cmd, bool with_truncation = true) {
    cmd->add_option("--body", body_token, "body: ball:R | ellipsoid:a,b[,c..] | square:a | cube:a | spec.json")
        ->required();
    cmd->add_option("--n", n, "dimension for ball bodies (default 3)")->check(CLI::Range(2, 5));
    cmd->add_option("--p", p_token, "exponent p (number, inf, -inf)");
    cmd->add_option("--s", s, "mixed-surface-area parameter s (default 0)");
    cmd->add_option("--quad-level", quad_level, "quadrature refinement level (default 5)");
    if (with_truncation) {
      cmd->add_option("--M", M, "series truncation in m (default 24)");
      cmd->add_option("--Kmax", Kmax, "series truncation in k (default 24)");
    }
    cmd->add_option("--tol", tol, "tolerance for pass/fail checks");
    cmd->add_option("--t", t_token, "comma list of offsets t");
    cmd->add_option("--out", out_path, "output file (default stdout)");
    cmd->add_option("--format", format, "output format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--threads", threads, "worker thread cap (0 = hardware)");
    cmd->add_flag("--allow-near-beta", allow_near_beta, "permit t in (0.95 beta, beta)");
  }

  json config_json(const char* command, const BodySpec& body) const {
    json cfg;
    cfg["schema"] = "lp-steiner/1";
    cfg["command"] = command;
    cfg["body"] = body.canonical;
    cfg["p"] = p_to_json(parse_p(p_token));
    cfg["s"] = s;
    cfg["quad_level"] = quad_level;
    cfg["M"] = M;
    cfg["Kmax"] = Kmax;
    cfg["tol"] = tol;
    cfg["format"] = format;
    // --threads caps workers without changing results, so it stays out of
    // the canonical config: reports are bit-identical across thread counts
    cfg["allow_near_beta"] = allow_near_beta;
    return cfg;
  }
};

void reject_p_equals_minus_n(const PValue& p, int n) {
  if (p.kind == LPS_P_FINITE && std::abs(p.value + n) < 1e-9)
    die(kExitConfig, "p = -n is rejected here; use `asp --neg-n` for the L_{-n} functional");
}

int body_dim_of(const BodyHandle& body) {
  int n = 0;
  check(lps_body_dim(body.ptr, &n), kExitConfig);
  return n;
}

std::vector<double> resolve_t_list(const Common& opt, double beta,
                                   std::initializer_list<double> fractions) {
  if (!opt.t_token.empty()) {
    auto ts = parse_list(opt.t_token, "t");
    for (double t : ts)
      if (t < 0.0 || t >= beta)
        die(kExitConfig, "t = " + std::to_string(t) + " is outside [0, beta) with beta = " +
                             std::to_string(beta));
    return ts;
  }
  std::vector<double> ts;
  for (double f : fractions) ts.push_back(f * beta);
  return ts;
}

// ---------------------------------------------------------------------------

int cmd_asp(const Common& opt, bool neg_n) {
  const BodySpec spec = parse_body(opt.body_token, opt.n);
  BodyHandle body;
  spec.build(opt.n, body);
  const int n = body_dim_of(body);
  const PValue p = parse_p(opt.p_token);
  if (!neg_n) reject_p_equals_minus_n(p, n);

  json report = opt.config_json(neg_n ? "asp --neg-n" : "asp", spec);
  report["functional"] = neg_n ? "l_neg_n_asa" : (opt.s != 0.0 ? "mixed_asa" : "lp_asa");
  auto value_at = [&](int level) {
    QuadHandle quad;
    check(lps_quadrature_build(n, level, &quad.ptr), kExitConfig);
    double value = 0.0;
    if (neg_n) {
      size_t node = 0;
      check(lps_neg_n_asa(body.ptr, quad.ptr, &value, &node));
      report["node"] = node;
    } else if (opt.s != 0.0) {
      check(lps_mixed_asa(body.ptr, quad.ptr, p.kind, p.value, opt.s, &value));
    } else {
      check(lps_asa(body.ptr, quad.ptr, p.kind, p.value, &value));
    }
    return value;
  };
  const double value = value_at(opt.quad_level);
  report["value"] = value;
  report["quad_level"] = opt.quad_level;
  if (opt.quad_level > 1) {
    const double delta = std::abs(value - value_at(opt.quad_level - 1));
    report["refinement_delta"] = delta;
    report["est_error"] = delta; // empirical proxy: change from level-1
  } else {
    report["refinement_delta"] = nullptr;
    report["est_error"] = nullptr;
  }
  emit(report, opt.out_path);
  return 0;
}

int cmd_expand(const Common& opt, const std::string& import_path) {
  GridHandle grid;
  json cfg;
  if (!import_path.empty()) {
    std::ifstream in(import_path);
    if (!in) die(kExitConfig, "cannot open grid file: " + import_path);
    std::stringstream ss;
    ss << in.rdbuf();
    check(lps_grid_from_json(ss.str().c_str(), &grid.ptr), kExitConfig);
  } else {
    const BodySpec spec = parse_body(opt.body_token, opt.n);
    BodyHandle body;
    spec.build(opt.n, body);
    const int n = body_dim_of(body);
    const PValue p = parse_p(opt.p_token);
    reject_p_equals_minus_n(p, n);
    QuadHandle quad;
    check(lps_quadrature_build(n, opt.quad_level, &quad.ptr), kExitConfig);
    check(lps_grid_build(body.ptr, quad.ptr, p.kind, p.value, opt.s, opt.M, opt.Kmax, nullptr,
                         &grid.ptr));
  }
  char* text = nullptr;
  check(opt.format == "csv" ? lps_grid_to_csv(grid.ptr, &text) : lps_grid_to_json(grid.ptr, &text));
  std::unique_ptr<char, void (*)(char*)> guard(text, lps_string_free);
  emit_raw(text, opt.out_path);
  double w00 = 0.0, beta = 0.0;
  check(lps_grid_entry(grid.ptr, 0, 0, &w00));
  check(lps_grid_beta(grid.ptr, &beta));
  std::fprintf(stderr, "W[0][0] = %.12g, beta = %.12g\n", w00, beta);
  return 0;
}

int cmd_verify(const Common& opt, const std::string& p_list_token, const std::string& s_list_token) {
  const BodySpec spec = parse_body(opt.body_token, opt.n);
  BodyHandle body;
  spec.build(opt.n, body);
  const int n = body_dim_of(body);
  int is_poly = 0;
  check(lps_body_is_polytope(body.ptr, &is_poly), kExitConfig);
  double beta = 0.0;
  check(lps_body_beta(body.ptr, &beta), kExitConfig);

  json report = opt.config_json("verify", spec);
  json entries = json::array();
  bool all_pass = true;

  if (is_poly) {
    std::vector<PValue> ps;
    if (!p_list_token.empty()) {
      std::stringstream ss(p_list_token);
      std::string item;
      while (std::getline(ss, item, ',')) ps.push_back(parse_p(item));
    } else {
      for (double v : {1.0, 2.0, 5.0}) ps.push_back(PValue{LPS_P_FINITE, v, std::to_string(v)});
    }
    const auto ts = resolve_t_list(opt, beta, {0.25, 0.5});
    for (const auto& p : ps) {
      if (p.kind != LPS_P_FINITE)
        die(kExitConfig, "polytope sweeps use finite p");
      for (double t : ts) {
        double series = 0.0, direct = 0.0, prev = 0.0;
        check(lps_polytope_series(body.ptr, p.value, opt.s, opt.M, t, 3, &series));
        check(lps_direct_polytope_asa(body.ptr, p.value, opt.s, t, 3, &direct));
        json e;
        e["p"] = p_to_json(p);
        e["s"] = opt.s;
        e["t"] = t;
        e["series"] = value_or_inf(series);
        e["direct"] = value_or_inf(direct);
        if (std::isfinite(series) && opt.M > 0) {
          check(lps_polytope_series(body.ptr, p.value, opt.s, opt.M - 1, t, 3, &prev));
          e["tail"] = std::abs(series - prev); // magnitude of the last retained term
        } else {
          e["tail"] = nullptr;
        }
        bool pass;
        if (std::isinf(series) || std::isinf(direct)) {
          pass = std::isinf(series) && std::isinf(direct);
          e["rel_error"] = nullptr;
        } else {
          const double rel = std::abs(series - direct) / std::abs(direct);
          e["rel_error"] = rel;
          pass = rel <= opt.tol;
        }
        e["pass"] = pass;
        all_pass = all_pass && pass;
        entries.push_back(std::move(e));
      }
    }
  } else {
    std::vector<PValue> ps;
    if (!p_list_token.empty()) {
      std::stringstream ss(p_list_token);
      std::string item;
      while (std::getline(ss, item, ',')) ps.push_back(parse_p(item));
    } else {
      for (const char* tok : {"-6", "-0.5", "0", "0.5", "1", "2", "7", "inf", "-inf"}) {
        PValue p = parse_p(tok);
        if (p.kind == LPS_P_FINITE && std::abs(p.value + n) < 1e-9) continue;
        ps.push_back(p);
      }
    }
    std::vector<double> slist = {0.0, -1.0, 2.0};
    if (!s_list_token.empty()) slist = parse_list(s_list_token, "s");
    const auto ts = resolve_t_list(opt, beta, {0.0, 0.1, 0.3, 0.5});

    QuadHandle quad;
    check(lps_quadrature_build(n, opt.quad_level, &quad.ptr), kExitConfig);
    for (const auto& p : ps) {
      if (p.kind == LPS_P_FINITE && std::abs(p.value + n) < 1e-9)
        die(kExitConfig, "p = -n in the sweep; drop it or use asp --neg-n");
      for (double s : slist) {
        GridHandle grid;
        check(lps_grid_build(body.ptr, quad.ptr, p.kind, p.value, s, opt.M, opt.Kmax, nullptr,
                             &grid.ptr));
        for (double t : ts) {
          double series = 0.0, tail = 0.0, direct = 0.0;
          int converged = 0, flagged = 0;
          check(lps_grid_eval(grid.ptr, t, 1e-8, opt.allow_near_beta ? 1 : 0, &series, &tail,
                              &converged, &flagged));
          check(lps_direct_parallel_asa(body.ptr, quad.ptr, p.kind, p.value, s, t, nullptr,
                                        &direct));
          const double rel = std::abs(series - direct) / std::abs(direct);
          const bool pass = rel <= opt.tol;
          all_pass = all_pass && pass;
          json e;
          e["p"] = p_to_json(p);
          e["s"] = s;
          e["t"] = t;
          e["series"] = series;
          e["direct"] = direct;
          e["rel_error"] = rel;
          e["tail"] = tail;
          e["converged"] = converged != 0;
          e["pass"] = pass;
          entries.push_back(std::move(e));
        }
      }
    }
  }
  report["results"] = std::move(entries);
  report["all_pass"] = all_pass;
  emit(report, opt.out_path);
  return all_pass ? 0 : kExitVerify;
}

int cmd_measures(const Common& opt, const std::string& region_token, int m, int k) {
  const BodySpec spec = parse_body(opt.body_token, opt.n);
  BodyHandle body;
  spec.build(opt.n, body);
  const int n = body_dim_of(body);
  const PValue p = parse_p(opt.p_token);
  reject_p_equals_minus_n(p, n);
  double beta = 0.0;
  check(lps_body_beta(body.ptr, &beta), kExitConfig);

  RegionHandle region;
  build_region(region_token, body, region);
  QuadHandle quad;
  check(lps_quadrature_build(n, opt.quad_level, &quad.ptr), kExitConfig);

  json report = opt.config_json("measures", spec);
  report["region"] = region_token.empty() ? "full" : region_token;
  report["m"] = m;
  report["k"] = k;

  double smk = 0.0;
  check(lps_area_measure(body.ptr, quad.ptr, p.kind, p.value, m, k, region.ptr, &smk));
  report["S_mk"] = smk;
  report["C_mk"] = smk; // boundary and sphere measures share the masked sum

  GridHandle grid;
  check(lps_grid_build(body.ptr, quad.ptr, p.kind, p.value, 0.0, opt.M, opt.Kmax, region.ptr,
                       &grid.ptr));
  const auto ts = resolve_t_list(opt, beta, {0.3});
  json checks = json::array();
  bool all_pass = true;
  for (double t : ts) {
    double series = 0.0, tail = 0.0, direct = 0.0;
    int converged = 0, flagged = 0;
    check(lps_grid_eval(grid.ptr, t, 1e-8, opt.allow_near_beta ? 1 : 0, &series, &tail, &converged,
                        &flagged));
    check(lps_direct_parallel_asa(body.ptr, quad.ptr, p.kind, p.value, 0.0, t, region.ptr,
                                  &direct));
    const double rel = std::abs(series - direct) / std::abs(direct);
    const bool pass = rel <= opt.tol;
    all_pass = all_pass && pass;
    json e;
    e["t"] = t;
    e["local_series"] = series;
    e["local_direct"] = direct;
    e["rel_error"] = rel;
    e["tail"] = tail;
    e["pass"] = pass;
    checks.push_back(std::move(e));
  }
  report["local_checks"] = std::move(checks);
  report["all_pass"] = all_pass;
  emit(report, opt.out_path);
  return all_pass ? 0 : kExitVerify;
}

int cmd_polytope(const Common& opt, int refine) {
  const BodySpec spec = parse_body(opt.body_token, opt.n);
  BodyHandle body;
  spec.build(opt.n, body);
  int is_poly = 0;
  check(lps_body_is_polytope(body.ptr, &is_poly), kExitConfig);
  if (!is_poly) die(kExitConfig, "the polytope command needs a polytope body");
  const PValue p = parse_p(opt.p_token);
  if (p.kind != LPS_P_FINITE) die(kExitConfig, "the polytope command needs finite p");
  double beta = 0.0;
  check(lps_body_beta(body.ptr, &beta), kExitConfig);
  const auto ts = resolve_t_list(opt, beta, {0.25, 0.5});

  json report = opt.config_json("polytope", spec);
  report["refine"] = refine;
  json entries = json::array();
  for (double t : ts) {
    double series = 0.0, direct = 0.0;
    check(lps_polytope_series(body.ptr, p.value, opt.s, opt.M, t, refine, &series));
    check(lps_direct_polytope_asa(body.ptr, p.value, opt.s, t, refine, &direct));
    json e;
    e["t"] = t;
    e["series"] = value_or_inf(series);
    e["direct"] = value_or_inf(direct);
    if (!std::isinf(series) && !std::isinf(direct))
      e["rel_error"] = std::abs(series - direct) / std::abs(direct);
    entries.push_back(std::move(e));
  }
  report["results"] = std::move(entries);
  emit(report, opt.out_path);
  return 0;
}

int cmd_renyi(const Common& opt, int m, int k) {
  const BodySpec spec = parse_body(opt.body_token, opt.n);
  BodyHandle body;
  spec.build(opt.n, body);
  const int n = body_dim_of(body);
  const PValue p = parse_p(opt.p_token);
  reject_p_equals_minus_n(p, n);
  if (p.kind != LPS_P_FINITE)
    die(kExitConfig, "alpha = p/(n+p) tends to 1 at p = +-inf; the divergence is undefined");
  QuadHandle quad;
  check(lps_quadrature_build(n, opt.quad_level, &quad.ptr), kExitConfig);
  double alpha = 0.0, divergence = 0.0, hellinger = 0.0;
  check(lps_renyi(body.ptr, quad.ptr, p.kind, p.value, m, k, &alpha, &divergence, &hellinger));
  json report = opt.config_json("renyi", spec);
  report["m"] = m;
  report["k"] = k;
  report["alpha"] = alpha;
  report["divergence"] = divergence;
  report["hellinger"] = hellinger;
  emit(report, opt.out_path);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"L_p Steiner expansions and affine surface areas of convex bodies"};
  app.require_subcommand(1);

  Common opt;
  bool neg_n = false;
  std::string import_path, p_list, s_list, region_token = "full";
  int m = 0, k = 0, refine = 3;

  auto* asp = app.add_subcommand("asp", "L_p (mixed) affine surface area");
  opt.add_to(asp, false);
  asp->add_flag("--neg-n", neg_n, "evaluate the max-based L_{-n} functional");

  auto* expand = app.add_subcommand("expand", "build and export an expansion grid");
  opt.add_to(expand);
  expand->add_option("--import", import_path, "re-export an existing grid file");
  expand->get_option("--body")->required(false);

  auto* verify = app.add_subcommand("verify", "series-vs-direct verification sweep");
  opt.add_to(verify);
  verify->add_option("--p-list", p_list, "comma list of p values (default sweep)");
  verify->add_option("--s-list", s_list, "comma list of s values (default 0,-1,2)");

  auto* measures = app.add_subcommand("measures", "local curvature/area measures");
  opt.add_to(measures);
  measures->add_option("--region", region_token,
                       "full | cap:c..:angle | sector:t0:t1 | halfspace:a..:b | ball:c..:r");
  measures->add_option("--m", m, "measure index m");
  measures->add_option("--k", k, "measure index k");

  auto* polytope = app.add_subcommand("polytope", "polytope Steiner series");
  opt.add_to(polytope);
  polytope->add_option("--refine", refine, "cone quadrature refinement (default 3)");

  auto* renyi = app.add_subcommand("renyi", "Renyi divergence / Hellinger integral");
  opt.add_to(renyi);
  renyi->add_option("--m", m, "index m");
  renyi->add_option("--k", k, "index k");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e); // --help
    app.exit(e);
    return kExitConfig;
  }

  try {
    lps_set_thread_cap(opt.threads);
    if (opt.M < 0 || opt.Kmax < opt.M || opt.Kmax > 64)
      die(kExitConfig, "need 0 <= M <= Kmax <= 64");
    if (asp->parsed()) return cmd_asp(opt, neg_n);
    if (expand->parsed()) {
      if (import_path.empty() && opt.body_token.empty())
        die(kExitConfig, "expand needs --body or --import");
      return cmd_expand(opt, import_path);
    }
    if (verify->parsed()) return cmd_verify(opt, p_list, s_list);
    if (measures->parsed()) {
      if (k < m) die(kExitConfig, "need k >= m");
      if (opt.tol == 1e-6 && app.get_subcommand("measures")->get_option("--tol")->empty())
        opt.tol = 1e-4; // node-mask tolerance
      return cmd_measures(opt, region_token, m, k);
    }
    if (polytope->parsed()) return cmd_polytope(opt, refine);
    if (renyi->parsed()) return cmd_renyi(opt, m, k);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}
