#include "optosteer/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "optosteer/error.hpp"
#include "optosteer/scenario.hpp"

namespace optosteer::cli {

namespace pt = boost::property_tree;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::ConfigError, path + ": " + what);
}

const std::set<std::string> kRunKeys{"mode",  "panel",   "start",   "end",
                                     "points", "time_unit", "eval_time", "epsilon",
                                     "regime_threshold", "solver", "ode_step"};
const std::set<std::string> kOutputKeys{"format", "path"};
const std::set<std::string> kReducedKeys{"c1", "c2", "nth1", "nth2", "r", "gamma_hz"};
const std::vector<std::string> kCavityKeys{
    "cavity_frequency_hz",     "laser_frequency_hz",    "cavity_length_m",
    "cavity_decay_hz",         "laser_power_w",         "effective_detuning_hz",
    "mirror_mass_kg",          "mechanical_frequency_hz", "mechanical_damping_hz",
    "temperature_k",           "thermal_occupation"};

std::set<std::string> physical_keys() {
  std::set<std::string> keys{"r"};
  for (const auto& k : kCavityKeys) {
    keys.insert(k + "_1");
    keys.insert(k + "_2");
  }
  return keys;
}

constexpr double kOccupationAgreement = 1e-6;
constexpr double kMinRegimeThreshold = 2.0;

std::string strip_comments(std::string_view text) {
  std::string out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t");
    if (first != std::string::npos && line[first] == '#') line.clear();
    // Trailing comments need whitespace before the marker.
    for (std::size_t i = 1; i < line.size(); ++i) {
      if ((line[i] == '#' || line[i] == ';') && (line[i - 1] == ' ' || line[i - 1] == '\t')) {
        line.erase(i);
        break;
      }
    }
    line.erase(line.find_last_not_of(" \t") + 1);
    out += line;
    out += '\n';
  }
  return out;
}

double parse_double(const std::string& path, const std::string& raw) {
  double value = 0.0;
  const char* begin = raw.data();
  const char* end = raw.data() + raw.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || raw.empty() || !std::isfinite(value)) {
    fail(path, "expected a finite number, got '" + raw + "'");
  }
  return value;
}

std::size_t parse_count(const std::string& path, const std::string& raw) {
  unsigned long long value = 0;
  const char* end = raw.data() + raw.size();
  const auto [ptr, ec] = std::from_chars(raw.data(), end, value);
  if (ec != std::errc() || ptr != end || raw.empty()) {
    fail(path, "expected a non-negative integer, got '" + raw + "'");
  }
  return static_cast<std::size_t>(value);
}

// Typed access to one section, recording absent required keys.
class SectionReader {
 public:
  SectionReader(std::string name, const pt::ptree* node, std::vector<std::string>& missing)
      : name_(std::move(name)), node_(node), missing_(missing) {}

  std::string path(const std::string& key) const { return name_ + "." + key; }

  std::optional<std::string> text(const std::string& key) const {
    if (node_ == nullptr) return std::nullopt;
    auto child = node_->get_child_optional(pt::ptree::path_type(key, '\0'));
    if (!child) return std::nullopt;
    return child->data();
  }

  std::optional<double> optional_number(const std::string& key) const {
    auto raw = text(key);
    if (!raw) return std::nullopt;
    return parse_double(path(key), *raw);
  }

  double number(const std::string& key) {
    auto v = optional_number(key);
    if (!v) {
      missing_.push_back(path(key));
      return 0.0;
    }
    return *v;
  }

  double number_or(const std::string& key, double fallback) const {
    return optional_number(key).value_or(fallback);
  }

  std::size_t count_or(const std::string& key, std::size_t fallback) const {
    auto raw = text(key);
    return raw ? parse_count(path(key), *raw) : fallback;
  }

 private:
  std::string name_;
  const pt::ptree* node_;
  std::vector<std::string>& missing_;
};

template <typename Enum, std::size_t N>
Enum parse_enum(const std::string& path, const std::string& raw,
                const std::array<Enum, N>& values) {
  std::string allowed;
  for (Enum v : values) {
    if (to_string(v) == raw) return v;
    allowed += (allowed.empty() ? "" : ", ") + std::string(to_string(v));
  }
  fail(path, "unknown value '" + raw + "' (expected one of: " + allowed + ")");
}

void require_positive(const SectionReader& s, const std::string& key, double v) {
  if (!(v > 0.0)) fail(s.path(key), "must be > 0");
}

void require_nonnegative(const SectionReader& s, const std::string& key, double v) {
  if (!(v >= 0.0)) fail(s.path(key), "must be >= 0");
}

ReducedInput read_reduced(SectionReader& s) {
  ReducedInput in;
  in.c1 = s.number("c1");
  in.c2 = s.number("c2");
  in.nth1 = s.number("nth1");
  in.nth2 = s.number("nth2");
  in.r = s.number("r");
  in.gamma_hz = s.number("gamma_hz");
  return in;
}

void check_reduced(const SectionReader& s, const ReducedInput& in) {
  require_nonnegative(s, "c1", in.c1);
  require_nonnegative(s, "c2", in.c2);
  require_nonnegative(s, "nth1", in.nth1);
  require_nonnegative(s, "nth2", in.nth2);
  require_nonnegative(s, "r", in.r);
  require_positive(s, "gamma_hz", in.gamma_hz);
}

PhysicalInput read_physical(SectionReader& s, std::vector<std::string>& missing) {
  PhysicalInput in;
  for (int j = 0; j < 2; ++j) {
    const std::string sfx = "_" + std::to_string(j + 1);
    auto& c = in.cavity[j];
    c.cavity_frequency_hz = s.number("cavity_frequency_hz" + sfx);
    c.laser_frequency_hz = s.number("laser_frequency_hz" + sfx);
    c.cavity_length_m = s.number("cavity_length_m" + sfx);
    c.cavity_decay_hz = s.number("cavity_decay_hz" + sfx);
    c.laser_power_w = s.number("laser_power_w" + sfx);
    c.effective_detuning_hz = s.optional_number("effective_detuning_hz" + sfx);
    c.mirror_mass_kg = s.number("mirror_mass_kg" + sfx);
    c.mechanical_frequency_hz = s.number("mechanical_frequency_hz" + sfx);
    c.mechanical_damping_hz = s.number("mechanical_damping_hz" + sfx);
    c.temperature_k = s.optional_number("temperature_k" + sfx);
    c.thermal_occupation = s.optional_number("thermal_occupation" + sfx);
    if (!c.temperature_k && !c.thermal_occupation) {
      missing.push_back(s.path("thermal_occupation" + sfx) + " (or " +
                        s.path("temperature_k" + sfx) + ")");
    }
  }
  in.r = s.number("r");
  return in;
}

void check_physical(const SectionReader& s, const PhysicalInput& in) {
  for (int j = 0; j < 2; ++j) {
    const std::string sfx = "_" + std::to_string(j + 1);
    const auto& c = in.cavity[j];
    require_positive(s, "cavity_frequency_hz" + sfx, c.cavity_frequency_hz);
    require_positive(s, "laser_frequency_hz" + sfx, c.laser_frequency_hz);
    require_positive(s, "cavity_length_m" + sfx, c.cavity_length_m);
    require_positive(s, "cavity_decay_hz" + sfx, c.cavity_decay_hz);
    require_nonnegative(s, "laser_power_w" + sfx, c.laser_power_w);
    require_positive(s, "mirror_mass_kg" + sfx, c.mirror_mass_kg);
    require_positive(s, "mechanical_frequency_hz" + sfx, c.mechanical_frequency_hz);
    require_positive(s, "mechanical_damping_hz" + sfx, c.mechanical_damping_hz);
    if (c.temperature_k) require_nonnegative(s, "temperature_k" + sfx, *c.temperature_k);
    if (c.thermal_occupation) {
      require_nonnegative(s, "thermal_occupation" + sfx, *c.thermal_occupation);
    }
    if (c.temperature_k && c.thermal_occupation) {
      const double derived = model::thermal_occupation(
          *c.temperature_k, model::kTwoPi * c.mechanical_frequency_hz);
      const double given = *c.thermal_occupation;
      if (std::abs(derived - given) > kOccupationAgreement * std::max(derived, given)) {
        fail(s.path("thermal_occupation" + sfx),
             "disagrees with temperature_k" + sfx + " (which implies " +
                 std::to_string(derived) + ")");
      }
    }
  }
  require_nonnegative(s, "r", in.r);
}

void check_keys(const pt::ptree& root) {
  const std::map<std::string, std::set<std::string>> schema{
      {"run", kRunKeys}, {"output", kOutputKeys}, {"reduced", kReducedKeys},
      {"physical", physical_keys()}};
  for (const auto& [name, node] : root) {
    auto it = schema.find(name);
    if (!node.data().empty() || (node.empty() && it == schema.end())) {
      fail(name, "key outside of any section");
    }
    if (it == schema.end()) fail(name, "unknown section");
    for (const auto& [key, child] : node) {
      if (!it->second.contains(key)) fail(name + "." + key, "unknown key");
      if (!child.empty()) fail(name + "." + key, "unexpected nesting");
    }
  }
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string_view to_string(Mode m) noexcept {
  switch (m) {
    case Mode::Eval: return "eval";
    case Mode::Sweep: return "sweep";
    case Mode::Figure: return "figure";
    case Mode::Regime: return "regime";
    case Mode::Stationary: return "stationary";
  }
  return "";
}

std::string_view to_string(OutputFormat f) noexcept {
  return f == OutputFormat::Csv ? "csv" : "json";
}

std::string_view to_string(TimeUnit u) noexcept {
  return u == TimeUnit::GammaT ? "gamma_t" : "seconds";
}

std::string_view to_string(Solver s) noexcept {
  return s == Solver::ClosedForm ? "closed_form" : "ode";
}

model::ReducedParams ReducedInput::to_params() const {
  model::ReducedParams rp;
  rp.c1 = c1;
  rp.c2 = c2;
  rp.nth1 = nth1;
  rp.nth2 = nth2;
  rp.r = r;
  rp.gamma = model::kTwoPi * gamma_hz;
  return rp;
}

model::PhysicalParams PhysicalInput::to_params() const {
  model::PhysicalParams p;
  for (int j = 0; j < 2; ++j) {
    const Cavity& c = cavity[j];
    p.cavity[j].cavity_frequency = model::kTwoPi * c.cavity_frequency_hz;
    p.cavity[j].laser_frequency = model::kTwoPi * c.laser_frequency_hz;
    p.cavity[j].length = c.cavity_length_m;
    p.cavity[j].decay = model::kTwoPi * c.cavity_decay_hz;
    p.cavity[j].laser_power = c.laser_power_w;
    if (c.effective_detuning_hz) {
      p.cavity[j].effective_detuning = model::kTwoPi * *c.effective_detuning_hz;
    }
    p.mirror[j].mass = c.mirror_mass_kg;
    p.mirror[j].mechanical_frequency = model::kTwoPi * c.mechanical_frequency_hz;
    p.mirror[j].damping = model::kTwoPi * c.mechanical_damping_hz;
    p.mirror[j].temperature = c.temperature_k;
    p.mirror[j].thermal_occupation = c.thermal_occupation;
  }
  p.squeezing = r;
  return p;
}

RunConfig parse_config(std::string_view text, const Overrides& overrides) {
  pt::ptree root;
  try {
    std::istringstream in(strip_comments(text));
    pt::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorKind::ConfigError,
                "line " + std::to_string(e.line()) + ": " + e.message());
  }
  for (const auto& [key, value] : overrides) {
    const auto dot = key.find('.');
    if (dot == std::string::npos) fail(key, "override must be of the form section.key");
    const pt::ptree::path_type section_path(key.substr(0, dot), '\0');
    auto section = root.get_child_optional(section_path);
    pt::ptree& target = section ? *section : root.add_child(section_path, pt::ptree());
    target.put(pt::ptree::path_type(key.substr(dot + 1), '\0'), value);
  }
  check_keys(root);

  auto node = [&](const char* name) -> const pt::ptree* {
    auto it = root.find(name);
    return it == root.not_found() ? nullptr : &it->second;
  };

  std::vector<std::string> missing;
  SectionReader run("run", node("run"), missing);
  SectionReader output("output", node("output"), missing);
  SectionReader reduced("reduced", node("reduced"), missing);
  SectionReader physical("physical", node("physical"), missing);

  RunConfig cfg;
  const auto mode_text = run.text("mode");
  if (mode_text) {
    cfg.mode = parse_enum(run.path("mode"), *mode_text,
                          std::array{Mode::Eval, Mode::Sweep, Mode::Figure, Mode::Regime,
                                     Mode::Stationary});
  } else {
    missing.push_back("run.mode");
  }

  const bool has_reduced = node("reduced") != nullptr;
  const bool has_physical = node("physical") != nullptr;
  if (has_reduced && has_physical) {
    throw Error(ErrorKind::ConfigError,
                "exclusive blocks: [physical] and [reduced] cannot both be present");
  }
  const bool figure = mode_text && cfg.mode == Mode::Figure;
  if (has_reduced) {
    cfg.params = read_reduced(reduced);
  } else if (has_physical) {
    cfg.params = read_physical(physical, missing);
  } else if (!figure) {
    missing.push_back(cfg.mode == Mode::Regime && mode_text ? "[physical] block"
                                                            : "[reduced] or [physical] block");
  }
  cfg.panel = run.text("panel");
  if (figure && !cfg.panel) missing.push_back("run.panel");

  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw Error(ErrorKind::ConfigError, "missing required keys: " + list);
  }

  if (has_reduced) check_reduced(reduced, std::get<ReducedInput>(cfg.params));
  if (has_physical) check_physical(physical, std::get<PhysicalInput>(cfg.params));

  if (figure) {
    if (has_reduced || has_physical) {
      fail(has_reduced ? "reduced" : "physical",
           "figure mode uses the panel's built-in parameters; remove this block");
    }
    try {
      scenario::parse_panel(*cfg.panel);
    } catch (const Error& e) {
      fail("run.panel", e.what());
    }
  } else if (cfg.panel) {
    fail("run.panel", "only valid in figure mode");
  }
  if (cfg.mode == Mode::Regime && !has_physical) {
    fail("reduced", "regime mode needs the [physical] block");
  }

  cfg.grid.start = run.number_or("start", cfg.grid.start);
  cfg.grid.end = run.number_or("end", cfg.grid.end);
  cfg.grid.points = run.count_or("points", cfg.grid.points);
  if (!(cfg.grid.start >= 0.0)) fail("run.start", "must be >= 0");
  if (!(cfg.grid.end > cfg.grid.start)) fail("run.end", "must be greater than run.start");
  if (cfg.grid.points < 2) fail("run.points", "must be >= 2");

  if (auto u = run.text("time_unit")) {
    cfg.time_unit = parse_enum(run.path("time_unit"), *u,
                               std::array{TimeUnit::GammaT, TimeUnit::Seconds});
  }
  cfg.eval_time = run.number_or("eval_time", cfg.eval_time);
  if (!(cfg.eval_time >= 0.0)) fail("run.eval_time", "must be >= 0");
  cfg.epsilon = run.number_or("epsilon", cfg.epsilon);
  if (!(cfg.epsilon > 0.0)) fail("run.epsilon", "must be > 0");
  cfg.regime_threshold = run.number_or("regime_threshold", cfg.regime_threshold);
  if (!(cfg.regime_threshold >= kMinRegimeThreshold)) {
    fail("run.regime_threshold", "must be >= 2 (the warn floor)");
  }
  if (auto s = run.text("solver")) {
    cfg.solver = parse_enum(run.path("solver"), *s, std::array{Solver::ClosedForm, Solver::Ode});
  }
  cfg.ode_step = run.number_or("ode_step", cfg.ode_step);
  if (!(cfg.ode_step > 0.0)) fail("run.ode_step", "must be > 0");

  if (auto f = output.text("format")) {
    cfg.format = parse_enum(output.path("format"), *f,
                            std::array{OutputFormat::Csv, OutputFormat::Json});
  }
  cfg.output_path = output.text("path");
  if (cfg.output_path && cfg.output_path->empty()) fail("output.path", "must not be empty");
  return cfg;
}

std::string render_config(const RunConfig& c) {
  std::ostringstream out;
  auto kv = [&](const std::string& key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  auto num = [&](const std::string& key, double v) { kv(key, format_number(v)); };

  if (const auto* r = std::get_if<ReducedInput>(&c.params)) {
    out << "[reduced]\n";
    num("c1", r->c1);
    num("c2", r->c2);
    num("nth1", r->nth1);
    num("nth2", r->nth2);
    num("r", r->r);
    num("gamma_hz", r->gamma_hz);
    out << '\n';
  } else if (const auto* p = std::get_if<PhysicalInput>(&c.params)) {
    out << "[physical]\n";
    for (int j = 0; j < 2; ++j) {
      const std::string sfx = "_" + std::to_string(j + 1);
      const auto& cav = p->cavity[j];
      num("cavity_frequency_hz" + sfx, cav.cavity_frequency_hz);
      num("laser_frequency_hz" + sfx, cav.laser_frequency_hz);
      num("cavity_length_m" + sfx, cav.cavity_length_m);
      num("cavity_decay_hz" + sfx, cav.cavity_decay_hz);
      num("laser_power_w" + sfx, cav.laser_power_w);
      if (cav.effective_detuning_hz) num("effective_detuning_hz" + sfx, *cav.effective_detuning_hz);
      num("mirror_mass_kg" + sfx, cav.mirror_mass_kg);
      num("mechanical_frequency_hz" + sfx, cav.mechanical_frequency_hz);
      num("mechanical_damping_hz" + sfx, cav.mechanical_damping_hz);
      if (cav.temperature_k) num("temperature_k" + sfx, *cav.temperature_k);
      if (cav.thermal_occupation) num("thermal_occupation" + sfx, *cav.thermal_occupation);
    }
    num("r", p->r);
    out << '\n';
  }

  out << "[run]\n";
  kv("mode", std::string(to_string(c.mode)));
  if (c.panel) kv("panel", *c.panel);
  num("start", c.grid.start);
  num("end", c.grid.end);
  kv("points", std::to_string(c.grid.points));
  kv("time_unit", std::string(to_string(c.time_unit)));
  num("eval_time", c.eval_time);
  num("epsilon", c.epsilon);
  num("regime_threshold", c.regime_threshold);
  kv("solver", std::string(to_string(c.solver)));
  num("ode_step", c.ode_step);
  out << "\n[output]\n";
  kv("format", std::string(to_string(c.format)));
  if (c.output_path) kv("path", *c.output_path);
  return out.str();
}

}  // namespace optosteer::cli
