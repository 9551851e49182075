#include "spherefill/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace spherefill {

namespace {

// ---------------------------------------------------------------------------
// Generic value tree

struct Value {
  enum class Kind { scalar, list, table };
  Kind kind = Kind::scalar;
  std::string text;
  bool quoted = false;
  std::vector<Value> items;
  std::vector<std::pair<std::string, Value>> fields;
  std::size_t line = 0;
};

struct Entry {
  Value value;
  std::size_t line = 0;
  bool used = false;
};

using Section = std::map<std::string, Entry>;

[[noreturn]] void fail(const std::string& message, std::size_t line, const std::string& key) {
  throw ConfigError(message, line, key);
}

class ValueParser {
 public:
  ValueParser(std::string_view text, std::size_t line, std::string key)
      : text_(text), line_(line), key_(std::move(key)) {}

  Value parse_all() {
    Value v = parse_value();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing text '" + std::string(text_.substr(pos_)) + "'", line_, key_);
    return v;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'", line_, key_);
    ++pos_;
  }

  Value parse_value() {
    skip_space();
    if (pos_ >= text_.size()) fail("missing value", line_, key_);
    Value v;
    v.line = line_;
    const char c = text_[pos_];
    if (c == '[') {
      v.kind = Value::Kind::list;
      ++pos_;
      if (peek(']')) {
        ++pos_;
        return v;
      }
      for (;;) {
        v.items.push_back(parse_value());
        if (peek(',')) {
          ++pos_;
          if (peek(']')) {
            ++pos_;
            return v;
          }
          continue;
        }
        expect(']');
        return v;
      }
    }
    if (c == '{') {
      v.kind = Value::Kind::table;
      ++pos_;
      if (peek('}')) {
        ++pos_;
        return v;
      }
      for (;;) {
        skip_space();
        const std::string name = parse_word();
        if (name.empty()) fail("expected a field name", line_, key_);
        expect('=');
        for (const auto& f : v.fields) {
          if (f.first == name) fail("repeated field '" + name + "'", line_, key_);
        }
        v.fields.emplace_back(name, parse_value());
        if (peek(',')) {
          ++pos_;
          continue;
        }
        expect('}');
        return v;
      }
    }
    if (c == '"') {
      ++pos_;
      const std::size_t end = text_.find('"', pos_);
      if (end == std::string_view::npos) fail("unterminated string", line_, key_);
      v.text = std::string(text_.substr(pos_, end - pos_));
      v.quoted = true;
      pos_ = end + 1;
      return v;
    }
    v.text = parse_word();
    if (v.text.empty()) fail(std::string("unexpected character '") + c + "'", line_, key_);
    return v;
  }

  std::string parse_word() {
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == ']' || c == '}' || c == '=' ||
          c == '[' || c == '{') {
        break;
      }
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::string key_;
};

std::string strip_comment(std::string_view line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (!in_string && (line[i] == '#' || line[i] == ';')) return std::string(line.substr(0, i));
  }
  return std::string(line);
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

int bracket_balance(std::string_view s) {
  int depth = 0;
  bool in_string = false;
  for (const char c : s) {
    if (c == '"') in_string = !in_string;
    if (in_string) continue;
    if (c == '[' || c == '{') ++depth;
    if (c == ']' || c == '}') --depth;
  }
  return depth;
}

const std::set<std::string> kSections = {"", "tuning", "hemisphere", "simulation", "constants"};

std::map<std::string, Section> tokenize(std::string_view text) {
  std::map<std::string, Section> sections;
  sections[""];
  std::string current;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[' && line.find('=') == std::string::npos) {
      if (line.back() != ']') fail("malformed section header", line_no, "");
      current = trim(std::string_view(line).substr(1, line.size() - 2));
      if (current.empty() || !kSections.contains(current)) fail("unknown section [" + current + "]", line_no, current);
      if (sections.contains(current)) fail("repeated section [" + current + "]", line_no, current);
      sections[current];
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'", line_no, "");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    if (key.empty()) fail("missing key", line_no, "");
    const std::string qualified = current.empty() ? key : current + "." + key;
    std::string value = trim(std::string_view(line).substr(eq + 1));
    const std::size_t start_line = line_no;
    while (bracket_balance(value) > 0 && std::getline(in, raw)) {
      ++line_no;
      value += ' ';
      value += trim(strip_comment(raw));
    }
    if (bracket_balance(value) != 0) fail("unbalanced brackets", start_line, qualified);
    Section& sec = sections[current];
    if (sec.contains(key)) fail("repeated key", start_line, qualified);
    sec[key] = Entry{ValueParser(value, start_line, qualified).parse_all(), start_line, false};
  }
  return sections;
}

// ---------------------------------------------------------------------------
// Typed readers

double as_number(const Value& v, const std::string& key) {
  if (v.kind != Value::Kind::scalar || v.quoted) fail("expected a number", v.line, key);
  double out = 0.0;
  const char* first = v.text.data();
  const char* last = first + v.text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last || !std::isfinite(out)) {
    fail("malformed number '" + v.text + "'", v.line, key);
  }
  return out;
}

std::uint64_t as_u64(const Value& v, const std::string& key) {
  if (v.kind != Value::Kind::scalar || v.quoted) fail("expected a non-negative integer", v.line, key);
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.text.data(), v.text.data() + v.text.size(), out);
  if (ec != std::errc{} || ptr != v.text.data() + v.text.size()) {
    fail("malformed non-negative integer '" + v.text + "'", v.line, key);
  }
  return out;
}

const std::string& as_word(const Value& v, const std::string& key) {
  if (v.kind != Value::Kind::scalar) fail("expected a word", v.line, key);
  return v.text;
}

bool as_bool(const Value& v, const std::string& key) {
  const std::string& w = as_word(v, key);
  if (w == "true") return true;
  if (w == "false") return false;
  fail("expected true or false", v.line, key);
}

std::vector<double> as_numbers(const Value& v, const std::string& key) {
  if (v.kind != Value::Kind::list) fail("expected a list of numbers", v.line, key);
  std::vector<double> out;
  for (const Value& item : v.items) out.push_back(as_number(item, key));
  return out;
}

template <std::size_t N>
std::array<double, N> as_fixed(const Value& v, const std::string& key) {
  const std::vector<double> xs = as_numbers(v, key);
  if (xs.size() != N) fail("expected " + std::to_string(N) + " numbers", v.line, key);
  std::array<double, N> out{};
  std::copy(xs.begin(), xs.end(), out.begin());
  return out;
}

class Reader {
 public:
  Reader(Section& section, std::string prefix) : section_(section), prefix_(std::move(prefix)) {}

  const Entry* find(const std::string& key) {
    const auto it = section_.find(key);
    if (it == section_.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  std::string qualified(const std::string& key) const { return prefix_.empty() ? key : prefix_ + "." + key; }

  template <typename F>
  void with(const std::string& key, F&& apply) {
    if (const Entry* e = find(key)) apply(e->value, qualified(key));
  }

  void number(const std::string& key, double& out) {
    with(key, [&](const Value& v, const std::string& q) { out = as_number(v, q); });
  }

  void count(const std::string& key, std::size_t& out) {
    with(key, [&](const Value& v, const std::string& q) {
      const std::uint64_t n = as_u64(v, q);
      if (n == 0) fail("must be positive", v.line, q);
      out = static_cast<std::size_t>(n);
    });
  }

  void reject_unused() const {
    for (const auto& [key, entry] : section_) {
      if (!entry.used) fail("unknown key", entry.line, qualified(key));
    }
  }

 private:
  Section& section_;
  std::string prefix_;
};

Method parse_method(const Value& v, const std::string& key) {
  const std::string& w = as_word(v, key);
  if (w == "m1") return Method::m1;
  if (w == "m2") return Method::m2;
  if (w == "hemisphere") return Method::hemisphere;
  fail("unknown method '" + w + "' (m1, m2 or hemisphere)", v.line, key);
}

RadiusDistribution parse_distribution(const Value& v, const std::string& key) {
  if (v.kind != Value::Kind::table) fail("expected {kind = ..., scale = ..., shape = ...}", v.line, key);
  std::optional<std::string> kind;
  std::optional<double> scale;
  std::optional<double> shape;
  for (const auto& [name, field] : v.fields) {
    const std::string q = key + "." + name;
    if (name == "kind") {
      kind = as_word(field, q);
    } else if (name == "scale") {
      scale = as_number(field, q);
    } else if (name == "shape") {
      shape = as_number(field, q);
    } else {
      fail("unknown field", field.line, q);
    }
  }
  if (!kind || !scale || !shape) fail("distribution needs kind, scale and shape", v.line, key);
  try {
    if (*kind == "weibull") return RadiusDistribution::weibull(*scale, *shape);
    if (*kind == "gamma") return RadiusDistribution::gamma(*scale, *shape);
  } catch (const DomainError& e) {
    fail(e.what(), v.line, key);
  }
  fail("unknown distribution kind '" + *kind + "' (weibull or gamma)", v.line, key);
}

LaserPath parse_path(const Value& v, const std::string& key) {
  if (v.kind != Value::Kind::list) fail("expected a list of [x, y, dwell] segments", v.line, key);
  LaserPath path;
  for (const Value& item : v.items) {
    const auto seg = as_fixed<3>(item, key);
    if (!(seg[2] > 0.0)) fail("dwell must be positive", item.line, key);
    path.segments.push_back({{seg[0], seg[1]}, seg[2]});
  }
  return path;
}

RasterSquare parse_raster(const Value& v, const std::string& key) {
  if (v.kind != Value::Kind::table) fail("expected {center, side, passes, step, dwell}", v.line, key);
  RasterSquare r;
  std::set<std::string> seen;
  for (const auto& [name, field] : v.fields) {
    const std::string q = key + "." + name;
    seen.insert(name);
    if (name == "center") {
      const auto c = as_fixed<2>(field, q);
      r.center = {c[0], c[1]};
    } else if (name == "side") {
      r.side = as_number(field, q);
    } else if (name == "passes") {
      const std::uint64_t n = as_u64(field, q);
      if (n == 0 || n > 100000) fail("pass count out of range", field.line, q);
      r.passes = static_cast<int>(n);
    } else if (name == "step") {
      r.step = as_number(field, q);
    } else if (name == "dwell") {
      r.dwell = as_number(field, q);
    } else {
      fail("unknown field", field.line, q);
    }
  }
  for (const char* need : {"center", "side", "passes", "step", "dwell"}) {
    if (!seen.contains(need)) fail(std::string("raster needs '") + need + "'", v.line, key);
  }
  if (!(r.side >= 0.0) || !(r.step > 0.0) || !(r.dwell > 0.0)) {
    fail("raster needs side >= 0 and positive step and dwell", v.line, key);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Formatting

std::string num(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

template <typename It>
std::string num_list(It first, It last) {
  std::string out = "[";
  for (It it = first; it != last; ++it) {
    if (it != first) out += ", ";
    out += num(*it);
  }
  return out + "]";
}

}  // namespace

LaserPath RasterSquare::path() const {
  LaserPath p;
  const double half = side / 2.0;
  const auto per_line = static_cast<std::size_t>(std::floor(side / step + 1e-9)) + 1;
  for (int k = 0; k < passes; ++k) {
    const double y = passes == 1 ? center.y : center.y - half + side * k / (passes - 1);
    for (std::size_t m = 0; m < per_line; ++m) {
      const double along = static_cast<double>(m) * step;
      const double x = k % 2 == 0 ? center.x - half + along : center.x + half - along;
      p.segments.push_back({{x, y}, dwell});
    }
  }
  return p;
}

RunConfig parse_config(std::string_view text) {
  auto sections = tokenize(text);
  RunConfig cfg;
  Reader top(sections[""], "");

  bool have_distribution = false;
  top.with("distribution", [&](const Value& v, const std::string& q) {
    cfg.spec.with_distribution(parse_distribution(v, q));
    have_distribution = true;
  });
  if (!have_distribution) fail("'distribution' is required", 0, "distribution");

  std::size_t method_line = 0;
  top.with("method", [&](const Value& v, const std::string& q) {
    cfg.method = parse_method(v, q);
    method_line = v.line;
  });
  top.with("seed", [&](const Value& v, const std::string& q) { cfg.spec.seed = as_u64(v, q); });
  top.with("output", [&](const Value& v, const std::string& q) { cfg.output_dir = as_word(v, q); });
  top.with("allow_partial", [&](const Value& v, const std::string& q) { cfg.allow_partial = as_bool(v, q); });

  double length_scale = 1.0;
  top.with("length_unit", [&](const Value& v, const std::string& q) {
    const std::string& w = as_word(v, q);
    if (w == "mean_radius") {
      length_scale = cfg.spec.mean_radius();
    } else if (w != "um") {
      fail("length_unit must be um or mean_radius", v.line, q);
    }
  });

  top.with("brick_side_lengths", [&](const Value& v, const std::string& q) {
    const auto s = as_fixed<3>(v, q);
    cfg.spec.brick_side_lengths = Vec3{s[0], s[1], s[2]} * length_scale;
  });
  std::size_t bricks_line = 0;
  top.with("brick_numbers", [&](const Value& v, const std::string& q) {
    const auto b = as_fixed<3>(v, q);
    for (std::size_t a = 0; a < 3; ++a) {
      if (b[a] < 1.0 || b[a] != std::floor(b[a]) || b[a] > 1e6) fail("brick numbers must be positive integers", v.line, q);
      cfg.spec.brick_numbers[a] = static_cast<int>(b[a]);
    }
    bricks_line = v.line;
  });
  top.number("face_goal", cfg.spec.face_goal);
  top.number("body_goal", cfg.spec.body_goal);
  top.number("contact_parameter", cfg.spec.contact.epsilon);
  top.number("parent_parameter", cfg.spec.contact.delta);
  top.with("body_accounting", [&](const Value& v, const std::string& q) {
    const std::string& w = as_word(v, q);
    if (w == "clipped") {
      cfg.spec.body_accounting = BodyAccounting::clipped;
    } else if (w == "full") {
      cfg.spec.body_accounting = BodyAccounting::full;
    } else {
      fail("body_accounting must be clipped or full", v.line, q);
    }
  });
  top.reject_unused();

  if (sections.contains("tuning")) {
    Reader r(sections["tuning"], "tuning");
    r.count("failure_limit", cfg.spec.tuning.failure_limit);
    r.count("triplet_cap", cfg.spec.tuning.triplet_cap);
    r.count("prune_after", cfg.spec.tuning.prune_after);
    r.count("edge_retries", cfg.spec.tuning.edge_retries);
    r.reject_unused();
  }

  if (sections.contains("hemisphere")) {
    Reader r(sections["hemisphere"], "hemisphere");
    HemisphereDomain h;
    h.brick_side_lengths = cfg.spec.brick_side_lengths;
    bool have_radii = false;
    r.with("radii", [&](const Value& v, const std::string& q) {
      const auto radii = as_fixed<2>(v, q);
      h.hemisphere_radii = {radii[0] * length_scale, radii[1] * length_scale};
      have_radii = true;
    });
    r.reject_unused();
    if (!have_radii) fail("[hemisphere] needs 'radii'", 0, "hemisphere.radii");
    if (cfg.method != Method::hemisphere) fail("[hemisphere] requires method = hemisphere", 0, "hemisphere");
    try {
      h.check();
    } catch (const DomainError& e) {
      fail(e.what(), 0, "hemisphere.radii");
    }
    cfg.hemisphere = h;
  }
  if (cfg.method == Method::hemisphere && !cfg.hemisphere) {
    HemisphereDomain h;
    h.brick_side_lengths = cfg.spec.brick_side_lengths;
    cfg.hemisphere = h;
  }

  if (sections.contains("simulation") || sections.contains("constants")) {
    SimulationConfig sim;
    if (sections.contains("constants")) {
      Reader r(sections["constants"], "constants");
      bool from_conductivities = false;
      r.with("transfer_from_conductivities",
             [&](const Value& v, const std::string& q) { from_conductivities = as_bool(v, q); });
      PhysicalConstants& c = sim.constants;
      if (from_conductivities) c = PhysicalConstants::from_conductivities(cfg.spec.mean_radius());
      r.number("laser_power", c.laser_power);
      r.number("air_conductivity", c.air_conductivity);
      r.number("steel_conductivity", c.steel_conductivity);
      r.number("convection_coefficient", c.convection_coefficient);
      r.number("conduction_coefficient", c.conduction_coefficient);
      r.number("specific_heat", c.specific_heat);
      r.number("density", c.density);
      r.number("laser_radius", c.laser_radius);
      r.number("ambient_temperature", c.ambient_temperature);
      r.number("sintering_temperature", c.sintering_temperature);
      r.reject_unused();
      try {
        c.check();
      } catch (const DomainError& e) {
        fail(e.what(), 0, "constants");
      }
    }
    if (sections.contains("simulation")) {
      Reader r(sections["simulation"], "simulation");
      r.with("dt", [&](const Value& v, const std::string& q) {
        if (v.kind == Value::Kind::scalar && !v.quoted && v.text == "auto") {
          sim.dt.reset();
          return;
        }
        const double dt = as_number(v, q);
        if (!(dt > 0.0)) fail("dt must be positive", v.line, q);
        sim.dt = dt;
      });
      r.with("snapshot_times", [&](const Value& v, const std::string& q) {
        sim.snapshot_times = as_numbers(v, q);
        for (const double t : sim.snapshot_times) {
          if (!(t >= 0.0)) fail("snapshot times must be non-negative", v.line, q);
        }
      });
      r.with("laser_depth", [&](const Value& v, const std::string& q) {
        const double d = as_number(v, q);
        if (!(d >= 0.0)) fail("laser_depth must be non-negative", v.line, q);
        sim.laser_depth = d;
      });
      bool have_path = false;
      r.with("path", [&](const Value& v, const std::string& q) {
        sim.path.segments = parse_path(v, q).segments;
        have_path = true;
      });
      r.with("raster", [&](const Value& v, const std::string& q) {
        if (have_path) fail("give either path or raster, not both", v.line, q);
        sim.path.segments = parse_raster(v, q).path().segments;
      });
      r.with("sweep", [&](const Value& v, const std::string& q) {
        const std::string& w = as_word(v, q);
        if (w == "stepped") {
          sim.path.sweep = Sweep::stepped;
        } else if (w == "linear") {
          sim.path.sweep = Sweep::linear;
        } else {
          fail("sweep must be stepped or linear", v.line, q);
        }
      });
      r.reject_unused();
    }
    cfg.simulation = std::move(sim);
  }

  if (cfg.method == Method::hemisphere && cfg.spec.brick_numbers != std::array<int, 3>{1, 1, 1}) {
    fail("hemisphere domains cannot be tiled; brick_numbers must be [1, 1, 1]",
         bricks_line != 0 ? bricks_line : method_line, "brick_numbers");
  }
  try {
    cfg.spec.check(cfg.method);
  } catch (const DomainError& e) {
    fail(e.what(), 0, "");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_config(const RunConfig& c) {
  const DomainSpec& s = c.spec;
  std::ostringstream out;
  out << "method = " << method_name(c.method) << '\n';
  out << "seed = " << s.seed << '\n';
  out << "output = \"" << c.output_dir.generic_string() << "\"\n";
  out << "allow_partial = " << (c.allow_partial ? "true" : "false") << '\n';
  out << "length_unit = um\n";
  const auto& d = s.distribution;
  out << "distribution = {kind = " << (d.kind() == DistributionKind::gamma ? "gamma" : "weibull")
      << ", scale = " << num(d.scale()) << ", shape = " << num(d.shape()) << "}\n";
  out << "brick_side_lengths = [" << num(s.brick_side_lengths.x) << ", " << num(s.brick_side_lengths.y) << ", "
      << num(s.brick_side_lengths.z) << "]\n";
  out << "brick_numbers = [" << s.brick_numbers[0] << ", " << s.brick_numbers[1] << ", " << s.brick_numbers[2]
      << "]\n";
  out << "face_goal = " << num(s.face_goal) << '\n';
  out << "body_goal = " << num(s.body_goal) << '\n';
  out << "contact_parameter = " << num(s.contact.epsilon) << '\n';
  out << "parent_parameter = " << num(s.contact.delta) << '\n';
  out << "body_accounting = " << body_accounting_name(s.resolved_body_accounting()) << '\n';
  out << "\n[tuning]\n";
  out << "failure_limit = " << s.tuning.failure_limit << '\n';
  out << "triplet_cap = " << s.tuning.triplet_cap << '\n';
  out << "prune_after = " << s.tuning.prune_after << '\n';
  out << "edge_retries = " << s.tuning.edge_retries << '\n';
  if (c.hemisphere) {
    out << "\n[hemisphere]\nradii = [" << num(c.hemisphere->hemisphere_radii[0]) << ", "
        << num(c.hemisphere->hemisphere_radii[1]) << "]\n";
  }
  if (c.simulation) {
    const SimulationConfig& sim = *c.simulation;
    const PhysicalConstants& k = sim.constants;
    out << "\n[constants]\n";
    out << "laser_power = " << num(k.laser_power) << '\n';
    out << "air_conductivity = " << num(k.air_conductivity) << '\n';
    out << "steel_conductivity = " << num(k.steel_conductivity) << '\n';
    out << "convection_coefficient = " << num(k.convection_coefficient) << '\n';
    out << "conduction_coefficient = " << num(k.conduction_coefficient) << '\n';
    out << "specific_heat = " << num(k.specific_heat) << '\n';
    out << "density = " << num(k.density) << '\n';
    out << "laser_radius = " << num(k.laser_radius) << '\n';
    out << "ambient_temperature = " << num(k.ambient_temperature) << '\n';
    out << "sintering_temperature = " << num(k.sintering_temperature) << '\n';
    out << "\n[simulation]\n";
    out << "dt = " << (sim.dt ? num(*sim.dt) : std::string("auto")) << '\n';
    out << "snapshot_times = " << num_list(sim.snapshot_times.begin(), sim.snapshot_times.end()) << '\n';
    if (sim.laser_depth) out << "laser_depth = " << num(*sim.laser_depth) << '\n';
    out << "sweep = " << (sim.path.sweep == Sweep::linear ? "linear" : "stepped") << '\n';
    out << "path = [";
    for (std::size_t k2 = 0; k2 < sim.path.segments.size(); ++k2) {
      const LaserSegment& seg = sim.path.segments[k2];
      out << (k2 == 0 ? "" : ",") << "\n  [" << num(seg.position.x) << ", " << num(seg.position.y) << ", "
          << num(seg.dwell) << "]";
    }
    out << (sim.path.segments.empty() ? "]\n" : "\n]\n");
  }
  return out.str();
}

}  // namespace spherefill
