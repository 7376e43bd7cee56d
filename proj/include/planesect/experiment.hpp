#pragma once

// Experiment orchestration: config parsing, the count pipeline (enumerate ->
// strip lines -> assign covering planes), the section survey over sampled
// planes, the growth-exponent fit, and CSV report emission. All outputs are
// deterministic for a fixed config (seeded splitmix64 sampling, atomic file
// writes).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "planesect/enumerate.hpp"
#include "planesect/lattice.hpp"
#include "planesect/section.hpp"
#include "planesect/surface.hpp"

namespace planesect {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& m) : std::runtime_error("config error: " + m) {}
};

struct SmoothnessRefusedError : std::runtime_error {
  explicit SmoothnessRefusedError(const std::string& m)
      : std::runtime_error("smoothness check refused: " + m) {}
};

struct InsufficientDataError : std::runtime_error {
  InsufficientDataError() : std::runtime_error("fewer than 3 nonzero tail rows") {}
};

struct ExperimentConfig {
  std::string surface_text;
  std::vector<long> b_schedule;
  std::vector<long> sieve_primes = {16, 9, 5, 7, 11, 13};
  long pair_height_bound = -1;  // -1: per-B default min(B, 50)
  long plane_sample = 20;
  std::uint64_t seed = 0;
  std::vector<long> smooth_primes = {5, 7, 11};
  long smooth_bound = 10;
  std::string cache_dir;  // empty: no point caches
};

namespace detail_exp {

inline std::string trimmed(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::vector<long> parse_longs(const std::string& v, const std::string& key) {
  std::vector<long> out;
  std::string item;
  std::stringstream ss(v);
  while (std::getline(ss, item, ',')) {
    item = trimmed(item);
    if (item.empty()) continue;
    try {
      std::size_t pos = 0;
      long x = std::stol(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(x);
    } catch (const std::exception&) {
      throw ConfigError("bad integer '" + item + "' in " + key);
    }
  }
  return out;
}

}  // namespace detail_exp

/// Line-oriented `key = value` config; '#' starts a comment.
inline ExperimentConfig parse_config(const std::string& text) {
  using detail_exp::parse_longs;
  using detail_exp::trimmed;
  ExperimentConfig cfg;
  std::stringstream ss(text);
  std::string line;
  bool have_surface = false, have_schedule = false;
  while (std::getline(ss, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trimmed(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value': " + line);
    std::string key = trimmed(line.substr(0, eq));
    std::string val = trimmed(line.substr(eq + 1));
    if (key == "surface") {
      cfg.surface_text = val;
      have_surface = true;
    } else if (key == "b_schedule") {
      cfg.b_schedule = parse_longs(val, key);
      have_schedule = true;
    } else if (key == "sieve_primes") {
      cfg.sieve_primes = parse_longs(val, key);
    } else if (key == "pair_height_bound") {
      cfg.pair_height_bound = parse_longs(val, key).at(0);
    } else if (key == "plane_sample") {
      cfg.plane_sample = parse_longs(val, key).at(0);
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_longs(val, key).at(0));
    } else if (key == "smooth_primes") {
      cfg.smooth_primes = parse_longs(val, key);
    } else if (key == "smooth_bound") {
      cfg.smooth_bound = parse_longs(val, key).at(0);
    } else if (key == "cache_dir") {
      cfg.cache_dir = val;
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }
  if (!have_surface) throw ConfigError("missing key 'surface'");
  if (!have_schedule || cfg.b_schedule.empty()) throw ConfigError("missing key 'b_schedule'");
  long prev = 0;
  for (long b : cfg.b_schedule) {
    if (b < 1 || b <= prev) throw ConfigError("b_schedule must be strictly increasing, >= 1");
    prev = b;
  }
  if (cfg.plane_sample < 0) throw ConfigError("plane_sample must be >= 0");
  try {
    parse_surface(cfg.surface_text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("surface: ") + e.what());
  }
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

// ---- exponent fit ----

struct FitResult {
  double slope;
  double intercept;
  std::vector<double> residuals;  // per tail row used
  long rows_used;
};

/// Least-squares slope of log N against log B over the schedule tail.
inline FitResult fit_exponent(const std::vector<std::pair<long, long>>& rows,
                              double tail_fraction = 0.5) {
  std::size_t n = rows.size();
  std::size_t start = static_cast<std::size_t>(
      std::floor(static_cast<double>(n) * (1.0 - tail_fraction) + 1e-12));
  if (start >= n) start = n > 0 ? n - 1 : 0;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = start; i < n; ++i)
    if (rows[i].second > 0)
      pts.emplace_back(std::log(static_cast<double>(rows[i].first)),
                       std::log(static_cast<double>(rows[i].second)));
  if (pts.size() < 3) throw InsufficientDataError();
  double mx = 0, my = 0;
  for (auto& [x, y] : pts) mx += x, my += y;
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxx = 0, sxy = 0;
  for (auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  FitResult r{sxy / sxx, 0.0, {}, static_cast<long>(pts.size())};
  r.intercept = my - r.slope * mx;
  for (auto& [x, y] : pts) r.residuals.push_back(y - (r.intercept + r.slope * x));
  return r;
}

// ---- count pipeline ----

struct CountRow {
  long B;
  long n_x;
  long n_xprime;
  long n_lines;
  double max_ratio;   // max height(plane)/height(x)^(1/3) over assigned points
  double ref_four_thirds;
  double ref_root_degree;  // B^(3/sqrt(d)) (ln B)^4 + B
};

struct CountResult {
  std::vector<CountRow> rows;
  PointSet points;                        // at the largest B
  PointSet stripped;                      // at the largest B
  std::vector<LineOnSurface> lines;       // at the largest B
  std::vector<PrimitivePlane> assigned;   // covering planes, sorted unique
};

inline SurfaceForm checked_surface(const ExperimentConfig& cfg, bool force) {
  SurfaceForm f = [&] {
    try {
      return parse_surface(cfg.surface_text);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("surface: ") + e.what());
    }
  }();
  auto cert = smoothness_check(f, cfg.smooth_primes, cfg.smooth_bound);
  if (cert.status == SmoothnessStatus::SingularPointFound && !force) {
    std::string where = "(";
    for (int i = 0; i < 4; ++i)
      where += cert.singular_point->coords[i].get_str() + (i < 3 ? ", " : ")");
    throw SmoothnessRefusedError("singular point found at " + where +
                                 "; pass --force to proceed");
  }
  return f;
}

inline std::string cache_path(const ExperimentConfig& cfg, const SurfaceForm& f, long B) {
  return cfg.cache_dir + "/points-" + surface_hash(f) + "-B" + std::to_string(B) + ".txt";
}

inline CountResult run_count(const ExperimentConfig& cfg, bool force = false, int threads = 1) {
  SurfaceForm f = checked_surface(cfg, force);
  const double d = static_cast<double>(f.degree);
  if (!cfg.cache_dir.empty()) std::filesystem::create_directories(cfg.cache_dir);

  CountResult res;
  PointSet cur;
  bool have = false;
  long prev_b = 0;
  for (long B : cfg.b_schedule) {
    bool from_cache = false;
    if (!cfg.cache_dir.empty()) {
      auto cached = read_point_cache(cache_path(cfg, f, B));
      if (cached && cached->surface_hash == surface_hash(f) && cached->bound == B) {
        cur = std::move(*cached);
        from_cache = true;
      }
    }
    if (!from_cache) {
      if (have) {
        PointSet upper = enumerate_points(f, B, cfg.sieve_primes, true, threads, prev_b);
        cur.points.insert(cur.points.end(), upper.points.begin(), upper.points.end());
        std::sort(cur.points.begin(), cur.points.end());
        cur.bound = B;
      } else {
        cur = enumerate_points(f, B, cfg.sieve_primes, true, threads);
      }
      if (!cfg.cache_dir.empty()) write_point_cache(cache_path(cfg, f, B), cur);
    }
    have = true;
    prev_b = B;

    long pair_bound = cfg.pair_height_bound > 0 ? cfg.pair_height_bound : std::min(B, 50L);
    auto lines = find_lines(f, cur, pair_bound);
    PointSet stripped = strip_lines(cur, lines);

    CountRow row{B,
                 static_cast<long>(cur.points.size()),
                 static_cast<long>(stripped.points.size()),
                 static_cast<long>(lines.size()),
                 0.0,
                 std::pow(static_cast<double>(B), 4.0 / 3.0),
                 std::pow(static_cast<double>(B), 3.0 / std::sqrt(d)) *
                         std::pow(std::log(static_cast<double>(B)), 4.0) +
                     static_cast<double>(B)};
    std::set<PrimitivePlane> assigned(res.assigned.begin(), res.assigned.end());
    for (const auto& p : stripped.points) {
      PrimitivePlane pl = covering_plane(p);
      if (dot(pl.normal, p.coords) != 0) throw std::logic_error("covering plane misses point");
      if (pl.height * pl.height * pl.height > 64 * p.height)
        throw std::logic_error("covering ratio bound violated");
      double ratio = pl.height.get_d() / std::cbrt(p.height.get_d());
      row.max_ratio = std::max(row.max_ratio, ratio);
      assigned.insert(pl);
    }
    res.assigned.assign(assigned.begin(), assigned.end());
    res.rows.push_back(row);
    if (B == cfg.b_schedule.back()) {
      res.points = cur;
      res.stripped = std::move(stripped);
      res.lines = std::move(lines);
    }
  }
  return res;
}

// ---- section survey ----

struct SectionRow {
  PrimitivePlane plane;
  SectionProfile profile;
  SectionCounts counts;
};

struct SectionsResult {
  long sample_height;  // T
  std::vector<SectionRow> rows;
  std::map<long, long> genus_histogram;            // resolved components per genus
  long unresolved_components = 0;                  // tallied separately
  std::map<std::string, long> class_point_totals;  // per classification
};

inline SectionsResult run_sections(const ExperimentConfig& cfg, const CountResult& count,
                                   bool force = false) {
  SurfaceForm f = checked_surface(cfg, force);
  long b_max = cfg.b_schedule.back();
  long T = static_cast<long>(std::ceil(std::cbrt(static_cast<double>(b_max)) - 1e-9));
  if (T < 1) T = 1;
  auto pool = enumerate_planes(T);

  std::set<PrimitivePlane> chosen(count.assigned.begin(), count.assigned.end());
  SplitMix64 rng(cfg.seed);
  for (long i = 0; i < cfg.plane_sample; ++i)
    chosen.insert(pool[static_cast<std::size_t>(rng.below(pool.size()))]);

  SectionsResult res;
  res.sample_height = T;
  for (const auto& plane : chosen) {
    SectionRow row{plane, classify_section(f, plane), {}};
    row.counts = section_point_count(row.profile, count.points);
    int total = 0;
    for (const auto& c : row.profile.components) total += c.degree * c.multiplicity;
    if (total != f.degree) throw std::logic_error("section degree bookkeeping failed");
    for (std::size_t k = 0; k < row.profile.components.size(); ++k) {
      const auto& c = row.profile.components[k];
      if (c.genus_resolved)
        ++res.genus_histogram[c.genus];
      else
        ++res.unresolved_components;
      res.class_point_totals[section_class_name(c.classification)] +=
          row.counts.per_component[k];
    }
    res.rows.push_back(std::move(row));
  }
  return res;
}

// ---- CSV reports ----

namespace detail_exp {

inline void atomic_write(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp);
}

inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline std::string vec4_str(const Vec4& v) {
  std::string s;
  for (int i = 0; i < 4; ++i) s += v[i].get_str() + (i < 3 ? ":" : "");
  return s;
}

}  // namespace detail_exp

inline void write_counts_csv(const std::string& path, const ExperimentConfig& cfg,
                             const CountResult& res) {
  std::string s = "# planesect-report v1 counts seed=" + std::to_string(cfg.seed) + "\n";
  s += "B,N_X,N_Xprime,lines,max_cover_ratio,B_pow_4_3,B_pow_3_sqrt_d\n";
  for (const auto& r : res.rows) {
    s += std::to_string(r.B) + "," + std::to_string(r.n_x) + "," + std::to_string(r.n_xprime) +
         "," + std::to_string(r.n_lines) + "," + detail_exp::fmt_double(r.max_ratio) + "," +
         detail_exp::fmt_double(r.ref_four_thirds) + "," +
         detail_exp::fmt_double(r.ref_root_degree) + "\n";
  }
  detail_exp::atomic_write(path, s);
}

inline void write_sections_csv(const std::string& path, const ExperimentConfig& cfg,
                               const SectionsResult& res) {
  std::string s = "# planesect-report v1 sections seed=" + std::to_string(cfg.seed) +
                  " sampler=splitmix64 T=" + std::to_string(res.sample_height) + "\n";
  s += "row,plane,components,component_points,section_points\n";
  for (const auto& r : res.rows) {
    std::string comps, cnts;
    for (std::size_t k = 0; k < r.profile.components.size(); ++k) {
      const auto& c = r.profile.components[k];
      if (k) comps += ";", cnts += ";";
      comps += std::to_string(c.degree) + ":" + std::to_string(c.multiplicity) + ":" +
               (c.genus_resolved ? std::to_string(c.genus) : std::string("U")) + ":" +
               section_class_name(c.classification);
      cnts += std::to_string(r.counts.per_component[k]);
    }
    s += "plane," + detail_exp::vec4_str(r.plane.normal) + "," + comps + "," + cnts + "," +
         std::to_string(r.counts.total) + "\n";
  }
  for (const auto& [g, n] : res.genus_histogram)
    s += "genus_histogram," + std::to_string(g) + "," + std::to_string(n) + ",,\n";
  if (res.unresolved_components > 0)
    s += "genus_histogram,U," + std::to_string(res.unresolved_components) + ",,\n";
  for (const auto& [name, n] : res.class_point_totals)
    s += "class_points," + name + "," + std::to_string(n) + ",,\n";
  detail_exp::atomic_write(path, s);
}

inline void write_exponent_csv(const std::string& path, const ExperimentConfig& cfg,
                               const FitResult& fit) {
  std::string s = "# planesect-report v1 exponent seed=" + std::to_string(cfg.seed) + "\n";
  s += "slope,intercept,rows_used\n";
  s += detail_exp::fmt_double(fit.slope) + "," + detail_exp::fmt_double(fit.intercept) + "," +
       std::to_string(fit.rows_used) + "\n";
  s += "residuals";
  for (double r : fit.residuals) s += "," + detail_exp::fmt_double(r);
  s += "\n";
  detail_exp::atomic_write(path, s);
}

}  // namespace planesect
