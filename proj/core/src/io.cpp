#include "nash/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "nash/campaign.hpp"
#include "nash/error.hpp"

namespace nash {
namespace {

using json = nlohmann::json;

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(Errc::ParseError, msg); }

double parse_real(std::string_view s, std::string_view context) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
    parse_fail("invalid number '" + std::string(s) + "' in " + std::string(context));
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double finite_number(const json& j, const std::string& what) {
  if (!j.is_number()) parse_fail(what + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) parse_fail(what + " must be finite");
  return v;
}

cd json_complex(const json& j, const std::string& what) {
  if (j.is_number()) return {finite_number(j, what), 0.0};
  if (j.is_string()) return parse_complex(j.get<std::string>());
  if (!j.is_array() || j.size() != 2) parse_fail(what + " must be a [re, im] pair");
  return {finite_number(j[0], what), finite_number(j[1], what)};
}

json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    parse_fail(std::string(what) + ": " + e.what());
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    parse_fail(std::string("config field '") + key + "' has the wrong type");
  }
}

}  // namespace

cd parse_complex(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) parse_fail("empty complex literal");
  if (s.back() != 'i') return {parse_real(s, text), 0.0};
  s.remove_suffix(1);
  // Split at the last sign that is not the leading one or an exponent sign.
  std::size_t split_at = std::string_view::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split_at = i;
      break;
    }
  }
  auto imag_part = [&](std::string_view t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_real(t, text);
  };
  if (split_at == std::string_view::npos) return {0.0, imag_part(s)};
  return {parse_real(s.substr(0, split_at), text), imag_part(s.substr(split_at))};
}

std::string format_complex(cd z) {
  std::string im = fmt(z.imag());
  if (im.front() != '-') im = "+" + im;
  return fmt(z.real()) + im + "i";
}

BivarPoly parse_poly_json(std::string_view text) {
  const json j = parse_json(text, "polynomial JSON");
  if (!j.is_object() || !j.contains("coeffs")) parse_fail("polynomial JSON needs a 'coeffs' field");
  const json& rows = j["coeffs"];
  if (!rows.is_array() || rows.empty()) parse_fail("'coeffs' must be a nonempty array of rows");
  std::vector<std::vector<cd>> data;
  std::size_t width = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const json& row = rows[i];
    if (!row.is_array()) parse_fail("each row of 'coeffs' must be an array");
    if (i == 0) width = row.size();
    else if (row.size() != width) parse_fail("ragged 'coeffs' array");
    std::vector<cd> r;
    for (const json& c : row) r.push_back(json_complex(c, "coefficient"));
    data.push_back(std::move(r));
  }
  if (width == 0) parse_fail("'coeffs' rows must be nonempty");
  BivarPoly s = BivarPoly::from_rows(data);
  if (j.contains("k")) {
    if (!j["k"].is_number_integer()) parse_fail("'k' must be an integer");
    const int k = j["k"].get<int>();
    if (k < 0) parse_fail("'k' must be >= 0");
    if (s.deg_total() > k) parse_fail("polynomial degree exceeds the declared k");
  }
  return s;
}

std::string poly_to_json(const BivarPoly& s, int k) {
  json rows = json::array();
  const int nz = std::max(s.deg_z() + 1, 1);
  const int nw = std::max(s.deg_w() + 1, 1);
  for (int i = 0; i < nz; ++i) {
    json row = json::array();
    for (int jj = 0; jj < nw; ++jj) {
      const cd c = s.coeff(i, jj);
      row.push_back({c.real(), c.imag()});
    }
    rows.push_back(row);
  }
  json out;
  out["k"] = k >= 0 ? k : std::max(s.deg_total(), 0);
  out["coeffs"] = rows;
  return out.dump() + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

BivarPoly read_poly_file(const std::filesystem::path& path) { return parse_poly_json(read_text_file(path)); }

std::vector<cd> parse_path_json(std::string_view text) {
  const json j = parse_json(text, "path JSON");
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
    parse_fail("path JSON needs a 'points' array");
  std::vector<cd> pts;
  for (const json& p : j["points"]) pts.push_back(json_complex(p, "path point"));
  if (pts.empty()) parse_fail("path must have at least one point");
  return pts;
}

std::string path_to_json(const std::vector<cd>& pts) {
  json arr = json::array();
  for (cd p : pts) arr.push_back({p.real(), p.imag()});
  return json{{"points", arr}}.dump() + "\n";
}

CompactSpec parse_compact(std::string_view text) {
  const auto parts = split(text, ':');
  const std::string_view kind = parts[0];
  auto samples = [&](std::size_t idx) {
    if (parts.size() <= idx) return 512;
    const double v = parse_real(parts[idx], text);
    if (v != std::floor(v) || v < 1 || v > 1e7) parse_fail("sample count must be a positive integer");
    return static_cast<int>(v);
  };
  if (kind == "disk" && (parts.size() == 3 || parts.size() == 4)) {
    const double r = parse_real(parts[2], text);
    if (r < 0) parse_fail("disk radius must be >= 0");
    return CompactSpec::disk(parse_complex(parts[1]), r, samples(3));
  }
  if (kind == "segment" && (parts.size() == 3 || parts.size() == 4))
    return CompactSpec::segment(parse_complex(parts[1]), parse_complex(parts[2]), samples(3));
  if (kind == "points" && parts.size() == 2) {
    std::vector<cd> pts;
    for (std::string_view p : split(parts[1], ',')) pts.push_back(parse_complex(p));
    return CompactSpec::finite(std::move(pts));
  }
  parse_fail("compact spec must be disk:C:R[:n], segment:A:B[:n] or points:A,B,...; got '" + std::string(text) + "'");
}

std::string format_compact(const CompactSpec& k) {
  switch (k.kind) {
    case CompactSpec::Kind::ClosedDisk:
      return "disk:" + format_complex(k.center) + ":" + fmt(k.radius) + ":" + std::to_string(k.samples);
    case CompactSpec::Kind::Segment:
      return "segment:" + format_complex(k.a) + ":" + format_complex(k.b) + ":" + std::to_string(k.samples);
    case CompactSpec::Kind::FinitePoints: {
      std::string s = "points:";
      for (std::size_t i = 0; i < k.points.size(); ++i) s += (i ? "," : "") + format_complex(k.points[i]);
      return s;
    }
  }
  return {};
}

DomainSpec parse_domain(std::string_view text) {
  const CompactSpec k = parse_compact(text);
  if (k.kind != CompactSpec::Kind::ClosedDisk) parse_fail("domain spec must be disk:C:R[:n]");
  if (k.radius <= 0) parse_fail("domain radius must be positive");
  return DomainSpec{k.center, k.radius, k.samples};
}

std::string format_domain(const DomainSpec& d) {
  return "disk:" + format_complex(d.center) + ":" + fmt(d.radius) + ":" + std::to_string(d.boundary_samples);
}

UnivarPoly parse_real_coeffs(std::string_view text) {
  std::vector<cd> c;
  for (std::string_view p : split(text, ',')) c.emplace_back(parse_real(p, text), 0.0);
  return UnivarPoly(std::move(c));
}

CampaignConfig parse_config_json(std::string_view text) {
  const json j = parse_json(text, "config JSON");
  if (!j.is_object()) parse_fail("config must be a JSON object");
  static const char* const kKnown[] = {"k",          "rho",       "K",        "omega",          "n_samples",
                                       "seed",       "tolerances", "taylor_radius", "J",          "cauchy_m",
                                       "valency_probes", "tijdeman", "threads", "checks",       "m"};
  for (const auto& [key, _] : j.items())
    if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown))
      parse_fail("unknown config field '" + key + "'");

  CampaignConfig cfg;
  cfg.k = get_or(j, "k", cfg.k);
  cfg.rho = get_or(j, "rho", cfg.rho);
  if (j.contains("K")) cfg.K = parse_compact(get_or<std::string>(j, "K", ""));
  if (j.contains("omega")) cfg.omega = parse_domain(get_or<std::string>(j, "omega", ""));
  cfg.n_samples = get_or(j, "n_samples", cfg.n_samples);
  cfg.seed = get_or(j, "seed", cfg.seed);
  cfg.taylor_radius = get_or(j, "taylor_radius", cfg.taylor_radius);
  cfg.J = get_or(j, "J", cfg.J);
  cfg.cauchy_m = get_or(j, "cauchy_m", cfg.cauchy_m);
  cfg.valency_probes = get_or(j, "valency_probes", cfg.valency_probes);
  cfg.threads = get_or(j, "threads", cfg.threads);
  cfg.checks = get_or(j, "checks", cfg.checks);
  if (j.contains("tijdeman")) {
    const json& t = j["tijdeman"];
    if (!t.is_object()) parse_fail("'tijdeman' must be an object");
    cfg.tijdeman_s = get_or(t, "s", cfg.tijdeman_s);
    cfg.tijdeman_t = get_or(t, "t", cfg.tijdeman_t);
    cfg.tijdeman_R = get_or(t, "R", cfg.tijdeman_R);
  }
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) parse_fail("'tolerances' must be an object");
    Tolerances& tol = cfg.tol;
    tol.trim_eps = get_or(t, "trim_eps", tol.trim_eps);
    tol.gcd_eps = get_or(t, "gcd_eps", tol.gcd_eps);
    tol.cluster_eps = get_or(t, "cluster_eps", tol.cluster_eps);
    tol.root_res = get_or(t, "root_res", tol.root_res);
    tol.dedup_eps = get_or(t, "dedup_eps", tol.dedup_eps);
    tol.branch_res = get_or(t, "branch_res", tol.branch_res);
    tol.wind_eps = get_or(t, "wind_eps", tol.wind_eps);
    tol.bern_floor = get_or(t, "bern_floor", tol.bern_floor);
    tol.golden_tol = get_or(t, "golden_tol", tol.golden_tol);
    tol.growth_slack = get_or(t, "growth_slack", tol.growth_slack);
    tol.seq_tol = get_or(t, "seq_tol", tol.seq_tol);
    tol.domain_margin = get_or(t, "domain_margin", tol.domain_margin);
    tol.r_margin = get_or(t, "r_margin", tol.r_margin);
    tol.max_iter = get_or(t, "max_iter", tol.max_iter);
  }
  if (j.contains("m") && get_or(j, "m", 0) != cfg.m()) parse_fail("'m' is inconsistent with k");
  return cfg;
}

std::string config_to_json(const CampaignConfig& cfg) {
  const Tolerances& t = cfg.tol;
  json j;
  j["k"] = cfg.k;
  j["m"] = cfg.m();
  j["rho"] = cfg.rho;
  j["K"] = format_compact(cfg.K);
  j["omega"] = format_domain(cfg.omega);
  j["n_samples"] = cfg.n_samples;
  j["seed"] = cfg.seed;
  j["taylor_radius"] = cfg.taylor_radius;
  j["J"] = cfg.J;
  j["cauchy_m"] = cfg.cauchy_m;
  j["valency_probes"] = cfg.valency_probes;
  j["tijdeman"] = {{"s", cfg.tijdeman_s}, {"t", cfg.tijdeman_t}, {"R", cfg.tijdeman_R}};
  j["threads"] = cfg.threads;
  j["checks"] = cfg.checks;
  j["tolerances"] = {{"trim_eps", t.trim_eps},       {"gcd_eps", t.gcd_eps},
                     {"cluster_eps", t.cluster_eps}, {"root_res", t.root_res},
                     {"dedup_eps", t.dedup_eps},     {"branch_res", t.branch_res},
                     {"wind_eps", t.wind_eps},       {"bern_floor", t.bern_floor},
                     {"golden_tol", t.golden_tol},   {"growth_slack", t.growth_slack},
                     {"seq_tol", t.seq_tol},         {"domain_margin", t.domain_margin},
                     {"r_margin", t.r_margin},       {"max_iter", t.max_iter}};
  return j.dump(2) + "\n";
}

}  // namespace nash
