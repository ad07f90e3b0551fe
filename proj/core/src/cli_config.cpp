#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "widomlab/cli.hpp"

namespace widomlab::cli {

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::trace2: return "trace2";
    case ExperimentKind::trace_f: return "traceF";
    case ExperimentKind::gamma_decay: return "gamma-decay";
    case ExperimentKind::entropy_lattice: return "entropy-lattice";
    case ExperimentKind::entropy_continuum: return "entropy-continuum";
    case ExperimentKind::roccaforte: return "roccaforte";
    case ExperimentKind::lemma51: return "lemma51";
    case ExperimentKind::fit: return "fit";
  }
  return "?";
}

ExperimentKind experiment_kind_from(const std::string& name) {
  for (auto k : {ExperimentKind::trace2, ExperimentKind::trace_f, ExperimentKind::gamma_decay,
                 ExperimentKind::entropy_lattice, ExperimentKind::entropy_continuum,
                 ExperimentKind::roccaforte, ExperimentKind::lemma51, ExperimentKind::fit})
    if (to_string(k) == name) return k;
  throw ConfigError("unknown experiment kind '" + name + "'");
}

std::vector<double> GridSpec::expand() const {
  if (count < 1) throw ConfigError("grid: count must be >= 1");
  if (!(max >= min) || !(min > 0.0)) throw ConfigError("grid: need 0 < min <= max");
  std::vector<double> out;
  if (count == 1) return {min};
  for (int i = 0; i < count; ++i) {
    double t = static_cast<double>(i) / (count - 1);
    out.push_back(log_spacing ? min * std::pow(max / min, t) : min + (max - min) * t);
  }
  return out;
}

geometry::Domain DomainSpec::build() const {
  if (kind == "box") {
    if (bounds.empty()) throw ConfigError("domain: box needs bounds");
    return geometry::Domain::box(bounds);
  }
  if (kind == "ball") {
    Vec c(dim);
    for (int i = 0; i < dim && i < static_cast<int>(center.size()); ++i) c[i] = center[i];
    return geometry::Domain::ball(dim, radius, c);
  }
  if (kind == "ellipsoid") {
    if (axes.empty()) throw ConfigError("domain: ellipsoid needs axes");
    return geometry::Domain::ellipsoid(axes);
  }
  throw ConfigError("domain: unknown kind '" + kind + "'");
}

fourier::Symbol SymbolSpec::build() const {
  if (kind == "one") return fourier::Symbol::one();
  if (kind.rfind("cos_p", 0) == 0) {
    double a = 1.0;
    auto pos = kind.find(':');
    if (pos != std::string::npos) a = std::stod(kind.substr(pos + 1));
    return fourier::Symbol::momentum(
        [a](const Vec& p) { return Complex(std::cos(a * p[0]), 0.0); }, 1.0, true);
  }
  throw ConfigError("symbol: unknown kind '" + kind + "'");
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  size_t e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& tok : split(s, ','))
    if (!tok.empty()) out.push_back(std::stod(tok));
  return out;
}

GridSpec parse_grid(const std::string& s, const std::string& where) {
  auto parts = split(s, ':');
  if (parts.size() != 4) throw ConfigError(where + ": grid must be min:max:lin|log:count");
  GridSpec g;
  g.min = std::stod(parts[0]);
  g.max = std::stod(parts[1]);
  if (parts[2] == "log")
    g.log_spacing = true;
  else if (parts[2] == "lin")
    g.log_spacing = false;
  else
    throw ConfigError(where + ": spacing must be lin or log");
  g.count = std::stoi(parts[3]);
  return g;
}

void parse_domain_key(DomainSpec& d, const std::string& key, const std::string& value,
                      const std::string& where) {
  if (key == "kind") {
    d.kind = value;
  } else if (key == "dim") {
    d.dim = std::stoi(value);
  } else if (key == "radius") {
    d.radius = std::stod(value);
  } else if (key == "center") {
    d.center = parse_doubles(value);
  } else if (key == "axes") {
    d.axes = parse_doubles(value);
  } else if (key == "bounds") {
    d.bounds.clear();
    for (const auto& axis : split(value, ',')) {
      auto lh = split(axis, ':');
      if (lh.size() != 2) throw ConfigError(where + ".bounds: expected lo:hi per axis");
      d.bounds.push_back({std::stod(lh[0]), std::stod(lh[1])});
    }
    d.dim = static_cast<int>(d.bounds.size());
  } else {
    throw ConfigError("unknown key '" + where + "." + key + "'");
  }
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig c;
  std::string section = "experiment";
  std::istringstream in(text);
  std::string line;
  bool have_kind = false;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("malformed section header: " + line);
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key = value, got: " + line);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));

    if (section == "experiment") {
      if (key == "kind") {
        c.kind = experiment_kind_from(value);
        have_kind = true;
      } else if (key == "seed") {
        c.seed = std::stoull(value);
      } else if (key == "jobs") {
        c.jobs = std::stoi(value);
      } else {
        throw ConfigError("unknown key 'experiment." + key + "'");
      }
    } else if (section == "omega") {
      parse_domain_key(c.omega, key, value, "omega");
    } else if (section == "gamma") {
      parse_domain_key(c.gamma, key, value, "gamma");
    } else if (section == "symbol") {
      if (key == "kind")
        c.symbol.kind = value;
      else
        throw ConfigError("unknown key 'symbol." + key + "'");
    } else if (section == "grid") {
      if (key == "r") {
        c.r_grid = parse_grid(value, "grid.r");
      } else if (key == "r_list") {
        c.r_list = parse_doubles(value);
      } else if (key == "l_list") {
        c.l_list.clear();
        for (double v : parse_doubles(value)) c.l_list.push_back(static_cast<int>(v));
      } else if (key == "k_fermi") {
        c.k_fermi = std::stod(value);
      } else if (key == "betas") {
        c.betas = parse_doubles(value);
      } else if (key == "resolution") {
        c.resolution = std::stoi(value);
      } else if (key == "spectral_function") {
        c.spectral_function = value;
      } else if (key == "eps_list") {
        c.eps_list = parse_doubles(value);
      } else if (key == "translates") {
        c.translates.clear();
        for (const auto& t : split(value, ';')) {
          auto xs = parse_doubles(t);
          Vec v(static_cast<int>(xs.size()));
          for (size_t i = 0; i < xs.size(); ++i) v[static_cast<int>(i)] = xs[i];
          c.translates.push_back(v);
        }
      } else if (key == "weight") {
        c.weight = value;
      } else if (key == "volume_method") {
        c.volume_method = value;
      } else if (key == "identity_n") {
        c.identity_n = std::stoi(value);
      } else if (key == "identity_trials") {
        c.identity_trials = std::stoi(value);
      } else if (key == "fit_input") {
        c.fit_input = value;
      } else if (key == "fit_dim") {
        c.fit_dim = std::stoi(value);
      } else if (key == "fit_leading_a") {
        c.fit_leading_a = std::stod(value);
      } else {
        throw ConfigError("unknown key 'grid." + key + "'");
      }
    } else if (section == "tolerance") {
      if (key == "log_coefficient_rel") {
        c.tol_log_coefficient_rel = std::stod(value);
      } else if (key == "identity_abs") {
        c.tol_identity_abs = std::stod(value);
      } else if (key == "slope_lo") {
        c.tol_slope_lo = std::stod(value);
      } else if (key == "slope_hi") {
        c.tol_slope_hi = std::stod(value);
      } else {
        throw ConfigError("unknown key 'tolerance." + key + "'");
      }
    } else if (section == "output") {
      if (key == "out_dir") {
        c.out_dir = value;
      } else if (key == "cache_dir") {
        c.cache_dir = value;
      } else {
        throw ConfigError("unknown key 'output." + key + "'");
      }
    } else {
      throw ConfigError("unknown section '[" + section + "]'");
    }
  }
  if (!have_kind) throw ConfigError("config missing experiment.kind");
  c.echo = canonical_text(c);
  return c;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void emit_domain(std::ostringstream& os, const std::string& name, const DomainSpec& d) {
  os << "[" << name << "]\n";
  os << "kind = " << d.kind << "\n";
  if (d.kind == "box") {
    os << "bounds = ";
    for (size_t i = 0; i < d.bounds.size(); ++i) {
      if (i) os << ",";
      os << fmt(d.bounds[i].first) << ":" << fmt(d.bounds[i].second);
    }
    os << "\n";
  } else if (d.kind == "ball") {
    os << "dim = " << d.dim << "\n";
    os << "radius = " << fmt(d.radius) << "\n";
    if (!d.center.empty()) {
      os << "center = ";
      for (size_t i = 0; i < d.center.size(); ++i) os << (i ? "," : "") << fmt(d.center[i]);
      os << "\n";
    }
  } else if (d.kind == "ellipsoid") {
    os << "axes = ";
    for (size_t i = 0; i < d.axes.size(); ++i) os << (i ? "," : "") << fmt(d.axes[i]);
    os << "\n";
  }
}

}  // namespace

std::string canonical_text(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "[experiment]\n";
  os << "kind = " << to_string(c.kind) << "\n";
  os << "seed = " << c.seed << "\n";
  if (c.jobs) os << "jobs = " << c.jobs << "\n";
  emit_domain(os, "omega", c.omega);
  emit_domain(os, "gamma", c.gamma);
  os << "[symbol]\nkind = " << c.symbol.kind << "\n";
  os << "[grid]\n";
  if (!c.r_list.empty()) {
    os << "r_list = ";
    for (size_t i = 0; i < c.r_list.size(); ++i) os << (i ? "," : "") << fmt(c.r_list[i]);
    os << "\n";
  } else if (c.r_grid.count > 0) {
    os << "r = " << fmt(c.r_grid.min) << ":" << fmt(c.r_grid.max) << ":"
       << (c.r_grid.log_spacing ? "log" : "lin") << ":" << c.r_grid.count << "\n";
  }
  if (!c.l_list.empty()) {
    os << "l_list = ";
    for (size_t i = 0; i < c.l_list.size(); ++i) os << (i ? "," : "") << c.l_list[i];
    os << "\n";
  }
  os << "k_fermi = " << fmt(c.k_fermi) << "\n";
  os << "betas = ";
  for (size_t i = 0; i < c.betas.size(); ++i) os << (i ? "," : "") << fmt(c.betas[i]);
  os << "\n";
  os << "resolution = " << c.resolution << "\n";
  os << "spectral_function = " << c.spectral_function << "\n";
  if (!c.eps_list.empty()) {
    os << "eps_list = ";
    for (size_t i = 0; i < c.eps_list.size(); ++i) os << (i ? "," : "") << fmt(c.eps_list[i]);
    os << "\n";
  }
  if (!c.translates.empty()) {
    os << "translates = ";
    for (size_t i = 0; i < c.translates.size(); ++i) {
      if (i) os << ";";
      for (int k = 0; k < c.translates[i].dim(); ++k)
        os << (k ? "," : "") << fmt(c.translates[i][k]);
    }
    os << "\n";
  }
  os << "weight = " << c.weight << "\n";
  os << "volume_method = " << c.volume_method << "\n";
  os << "identity_n = " << c.identity_n << "\n";
  os << "identity_trials = " << c.identity_trials << "\n";
  if (!c.fit_input.empty()) {
    os << "fit_input = " << c.fit_input << "\n";
    os << "fit_dim = " << c.fit_dim << "\n";
    os << "fit_leading_a = " << fmt(c.fit_leading_a) << "\n";
  }
  if (c.out_dir != "." || !c.cache_dir.empty()) {
    os << "[output]\n";
    os << "out_dir = " << c.out_dir << "\n";
    if (!c.cache_dir.empty()) os << "cache_dir = " << c.cache_dir << "\n";
  }
  os << "[tolerance]\n";
  os << "log_coefficient_rel = " << fmt(c.tol_log_coefficient_rel) << "\n";
  os << "identity_abs = " << fmt(c.tol_identity_abs) << "\n";
  os << "slope_lo = " << fmt(c.tol_slope_lo) << "\n";
  os << "slope_hi = " << fmt(c.tol_slope_hi) << "\n";
  return os.str();
}

}  // namespace widomlab::cli
