// sweep.hpp
// Parameter sweeps over the resource catalog: flat key=value configs,
// named figure presets, deterministic per-row seeding, CSV output.

#pragma once

#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fockport/metrics.hpp"
#include "fockport/multimode.hpp"
#include "fockport/resources.hpp"

namespace fockport {

// One resource family in a sweep; `nu` is taken from the grid, so only
// the family parameters are stored here. For the noon family the grid's
// nu value is the N00N particle number n.
struct KindSpec {
  ResourceKind kind = ResourceKind::MaxEnt;
  double xi = 0.5;
  double theta = 0.0;
  double gamma = 0.0;

  ResourceSpec at(int nu) const {
    switch (kind) {
      case ResourceKind::Separable: {
        std::vector<double> w(nu + 1, 1.0 / (nu + 1));
        return ResourceSpec::separable(nu, std::move(w));
      }
      case ResourceKind::MaxEnt:
        return ResourceSpec::max_ent(nu);
      case ResourceKind::Noon:
        return ResourceSpec::noon(nu);
      case ResourceKind::Su2Coherent:
        return ResourceSpec::su2(nu, xi, theta);
      case ResourceKind::BoseHubbardExact:
        return ResourceSpec::bose_hubbard(nu, gamma);
      case ResourceKind::GaussianSingle:
        return ResourceSpec::gaussian_single(nu, gamma);
      case ResourceKind::GaussianDouble:
        return ResourceSpec::gaussian_double(nu, gamma);
      case ResourceKind::MaxEntPhased:
        break;
    }
    throw std::invalid_argument("KindSpec: family not sweepable");
  }
};

struct SweepConfig {
  std::vector<KindSpec> kinds;
  std::vector<int> n_values;
  std::vector<int> nu_values;
  std::vector<int> m_values{1};
  long samples = 0;
  std::uint64_t seed = 0;
  std::string output_path;
};

struct ResultRow {
  std::string kind;
  int N = 0;
  int nu = 0;
  int m = 1;
  double f_closed = 0.0;
  std::optional<double> f_mc, f_mc_stderr;
  double e_closed = 0.0;
  std::optional<double> e_mc, e_mc_stderr;
  std::optional<double> p_perfect;
  std::string regime;
};

namespace detail {

inline std::vector<int> parse_int_range(const std::string& text) {
  // "a", "a:b", or "a:b:step".
  std::vector<int> out;
  int a = 0, b = 0, step = 1;
  const int fields = std::sscanf(text.c_str(), "%d:%d:%d", &a, &b, &step);
  if (fields <= 0) throw std::invalid_argument("bad range: " + text);
  if (fields == 1) b = a;
  if (step < 1) throw std::invalid_argument("bad range step: " + text);
  for (int v = a; v <= b; v += step) out.push_back(v);
  if (out.empty()) throw std::invalid_argument("empty range: " + text);
  return out;
}

inline std::string trim(const std::string& s) {
  const auto lo = s.find_first_not_of(" \t\r\n");
  if (lo == std::string::npos) return "";
  const auto hi = s.find_last_not_of(" \t\r\n");
  return s.substr(lo, hi - lo + 1);
}

// "maxent", "su2:xi=0.5,theta=0", "bh:gamma=-0.5", ...
inline KindSpec parse_kind(const std::string& text) {
  KindSpec spec;
  std::string name = text, params;
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    name = text.substr(0, colon);
    params = text.substr(colon + 1);
  }
  if (name == "separable") spec.kind = ResourceKind::Separable;
  else if (name == "maxent") spec.kind = ResourceKind::MaxEnt;
  else if (name == "noon") spec.kind = ResourceKind::Noon;
  else if (name == "su2") spec.kind = ResourceKind::Su2Coherent;
  else if (name == "bh") spec.kind = ResourceKind::BoseHubbardExact;
  else if (name == "gauss1") spec.kind = ResourceKind::GaussianSingle;
  else if (name == "gauss2") spec.kind = ResourceKind::GaussianDouble;
  else throw std::invalid_argument("unknown resource kind: " + name);

  std::istringstream ps(params);
  std::string item;
  while (std::getline(ps, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("bad kind parameter: " + item);
    const std::string key = trim(item.substr(0, eq));
    const double value = std::stod(item.substr(eq + 1));
    if (key == "xi") spec.xi = value;
    else if (key == "theta") spec.theta = value;
    else if (key == "gamma") spec.gamma = value;
    else throw std::invalid_argument("unknown kind parameter: " + key);
  }
  return spec;
}

inline std::string kind_descriptor(const KindSpec& k) {
  char buf[96];
  switch (k.kind) {
    case ResourceKind::Su2Coherent:
      // ';' separator keeps descriptors usable as bare CSV cells.
      std::snprintf(buf, sizeof buf, "su2(xi=%.6g;theta=%.6g)", k.xi, k.theta);
      return buf;
    case ResourceKind::BoseHubbardExact:
      std::snprintf(buf, sizeof buf, "bh(gamma=%.6g)", k.gamma);
      return buf;
    case ResourceKind::GaussianSingle:
      std::snprintf(buf, sizeof buf, "gauss1(gamma=%.6g)", k.gamma);
      return buf;
    case ResourceKind::GaussianDouble:
      std::snprintf(buf, sizeof buf, "gauss2(gamma=%.6g)", k.gamma);
      return buf;
    default:
      return kind_name(k.kind);
  }
}

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Deterministic per-row stream: depends only on the master seed and the
// row coordinates, never on evaluation order.
inline std::uint64_t row_seed(std::uint64_t seed, const std::string& kind,
                              int N, int nu, int m) {
  std::uint64_t h = splitmix64(seed ^ fnv1a(kind));
  h = splitmix64(h ^ static_cast<std::uint64_t>(N));
  h = splitmix64(h ^ static_cast<std::uint64_t>(nu));
  h = splitmix64(h ^ static_cast<std::uint64_t>(m));
  return h;
}

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

// Parses the flat key = value config format. Repeatable keys: `kind`.
// Grid keys N / nu / m accept "a", "a:b", "a:b:step".
inline SweepConfig parse_sweep_config(std::istream& in) {
  SweepConfig cfg;
  cfg.n_values.clear();
  cfg.nu_values.clear();
  std::string line;
  bool have_m = false;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line without '=': " + line);
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key == "kind") cfg.kinds.push_back(detail::parse_kind(value));
    else if (key == "N") cfg.n_values = detail::parse_int_range(value);
    else if (key == "nu") cfg.nu_values = detail::parse_int_range(value);
    else if (key == "m") {
      cfg.m_values = detail::parse_int_range(value);
      have_m = true;
    } else if (key == "samples") cfg.samples = std::stol(value);
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "out") cfg.output_path = value;
    else throw std::invalid_argument("unknown config key: " + key);
  }
  if (!have_m) cfg.m_values = {1};
  if (cfg.kinds.empty() || cfg.n_values.empty() || cfg.nu_values.empty())
    throw std::invalid_argument("config needs kind, N and nu entries");
  if (cfg.samples < 0) throw std::invalid_argument("config: samples < 0");
  return cfg;
}

inline SweepConfig parse_sweep_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  return parse_sweep_config(in);
}

// Evaluates one grid point for a prebuilt resource; failures are
// rethrown with the grid coordinates attached.
inline ResultRow evaluate_row(const KindSpec& kind,
                              const ResourceState& resource,
                              const std::string& descriptor, int N, int m,
                              long samples, std::uint64_t seed) {
  const int nu = resource.n_particles();
  try {
    ResultRow row;
    row.kind = descriptor;
    row.N = N;
    row.nu = nu;
    row.m = m;
    row.f_closed = m == 1 ? fidelity_closed_form(resource, N)
                          : fidelity_multimode(resource, N, m);
    row.e_closed = avg_final_entanglement(resource, N);
    if (nu >= N) row.p_perfect = (nu - N + 1.0) / (nu + 1.0);
    switch (kind.kind) {
      case ResourceKind::BoseHubbardExact:
      case ResourceKind::GaussianSingle:
      case ResourceKind::GaussianDouble:
        row.regime = regime_name(classify_regime(nu, kind.gamma));
        break;
      default:
        break;
    }
    if (samples > 0 && m == 1) {
      const std::uint64_t rs = detail::row_seed(seed, descriptor, N, nu, m);
      const MonteCarloEstimate f = fidelity_monte_carlo(resource, N, samples, rs);
      const MonteCarloEstimate e =
          avg_entanglement_monte_carlo(resource, N, samples, rs + 1);
      row.f_mc = f.estimate;
      row.f_mc_stderr = f.std_error;
      row.e_mc = e.estimate;
      row.e_mc_stderr = e.std_error;
    }
    return row;
  } catch (const std::exception& e) {
    std::ostringstream os;
    os << "at kind=" << descriptor << " N=" << N << " nu=" << nu << " m=" << m
       << ": " << e.what();
    throw std::runtime_error(os.str());
  }
}

inline std::vector<ResultRow> run_sweep(const SweepConfig& cfg) {
  std::vector<ResultRow> rows;
  for (const KindSpec& kind : cfg.kinds) {
    const std::string descriptor = detail::kind_descriptor(kind);
    for (int nu : cfg.nu_values) {
      // The family may be undefined at these coordinates (e.g. a Gaussian
      // approximant at its excluded gamma); skip such grid points.
      std::optional<ResourceState> resource;
      try {
        resource.emplace(build_resource(kind.at(nu)));
      } catch (const std::domain_error&) {
        continue;
      }
      for (int N : cfg.n_values)
        for (int m : cfg.m_values)
          rows.push_back(evaluate_row(kind, *resource, descriptor, N, m,
                                      cfg.samples, cfg.seed));
    }
  }
  std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tie(a.kind, a.N, a.nu, a.m) < std::tie(b.kind, b.N, b.nu, b.m);
  });
  return rows;
}

inline void write_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  const auto cell = [](const std::optional<double>& v) {
    return v ? detail::format_real(*v) : std::string{};
  };
  out << "kind,N,nu,m,f_closed,f_mc,f_mc_stderr,E_closed,E_mc,E_mc_stderr,"
         "p_perfect,regime\n";
  for (const ResultRow& r : rows)
    out << r.kind << ',' << r.N << ',' << r.nu << ',' << r.m << ','
        << detail::format_real(r.f_closed) << ',' << cell(r.f_mc) << ','
        << cell(r.f_mc_stderr) << ',' << detail::format_real(r.e_closed) << ','
        << cell(r.e_mc) << ',' << cell(r.e_mc_stderr) << ','
        << cell(r.p_perfect) << ',' << r.regime << '\n';
}

inline void write_csv_file(const std::vector<ResultRow>& rows,
                           const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output: " + path);
  write_csv(rows, out);
}

// Named built-in grids mirroring the shipped figure datasets. Fidelity
// and entanglement columns are always both emitted, so consecutive
// figure pairs (1/2, 4/5, 6/7) share a grid.
inline SweepConfig preset_config(const std::string& name,
                                 std::uint64_t seed = 0) {
  SweepConfig cfg;
  cfg.seed = seed;
  const auto iota_kinds = [&](std::initializer_list<const char*> names) {
    for (const char* n : names) cfg.kinds.push_back(detail::parse_kind(n));
  };
  if (name == "fig1" || name == "fig2") {
    iota_kinds({"su2:xi=0.5,theta=0", "maxent", "separable"});
    cfg.n_values = {1, 5, 10};
    cfg.nu_values = detail::parse_int_range("1:100");
  } else if (name == "fig3") {
    for (int xs = 0; xs <= 20; ++xs)
      for (int ts = 0; ts <= 15; ++ts) {
        KindSpec k;
        k.kind = ResourceKind::Su2Coherent;
        k.xi = xs / 20.0;
        k.theta = ts * std::numbers::pi / 8.0;
        cfg.kinds.push_back(k);
      }
    cfg.n_values = {10};
    cfg.nu_values = {100};
  } else if (name == "fig4" || name == "fig5") {
    iota_kinds({"bh:gamma=-0.5", "separable"});
    cfg.n_values = {1, 6, 10};
    cfg.nu_values = detail::parse_int_range("1:100");
  } else if (name == "fig6" || name == "fig7") {
    for (int i = 0; i <= 100; ++i) {
      const double gamma = -2.0 + 0.02 * i;
      for (const char* base : {"bh", "gauss1", "gauss2"}) {
        KindSpec k = detail::parse_kind(base);
        k.gamma = gamma;
        cfg.kinds.push_back(k);
      }
    }
    cfg.n_values = {10};
    cfg.nu_values = {100};
  } else if (name == "fig8") {
    iota_kinds({"maxent"});
    cfg.n_values = {10};
    cfg.nu_values = {10, 100, 1000};
    cfg.m_values = detail::parse_int_range("1:8");
  } else {
    throw std::invalid_argument("unknown preset: " + name);
  }
  return cfg;
}

}  // namespace fockport
