#include "spherefill/packing_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace spherefill {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot read " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void append_u64(std::string& out, std::size_t v) {
  std::array<char, 24> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), res.ptr);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = s.find(sep, start);
    out.push_back(s.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    if (end == std::string_view::npos) return out;
    start = end + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view s, const std::string& where) {
  double v = 0.0;
  s = trim(s);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw IoError(where + ": malformed number '" + std::string(s) + "'");
  return v;
}

std::size_t parse_size(std::string_view s, const std::string& where) {
  std::size_t v = 0;
  s = trim(s);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw IoError(where + ": malformed integer '" + std::string(s) + "'");
  return v;
}

/// Data rows of a CSV file after checking its header.
std::vector<std::vector<std::string_view>> read_rows(const std::string& text, std::string_view header,
                                                     const fs::path& file) {
  std::vector<std::vector<std::string_view>> rows;
  const auto lines = split(text, '\n');
  if (lines.empty() || trim(lines[0]) != header) throw IoError(file.string() + ": expected header '" + std::string(header) + "'");
  const std::size_t columns = split(header, ',').size();
  for (std::size_t k = 1; k < lines.size(); ++k) {
    if (trim(lines[k]).empty()) continue;
    auto cells = split(lines[k], ',');
    if (cells.size() != columns) {
      throw IoError(file.string() + ":" + std::to_string(k + 1) + ": expected " + std::to_string(columns) + " columns");
    }
    rows.push_back(std::move(cells));
  }
  return rows;
}

std::string distribution_text(const RadiusDistribution& d) {
  switch (d.kind()) {
    case DistributionKind::weibull: return "weibull " + format_double(d.scale()) + " " + format_double(d.shape());
    case DistributionKind::gamma: return "gamma " + format_double(d.scale()) + " " + format_double(d.shape());
    case DistributionKind::custom: return "custom " + d.name();
  }
  return "custom";
}

std::string vec_text(const Vec3& v) {
  return format_double(v.x) + " " + format_double(v.y) + " " + format_double(v.z);
}

std::string meta_text(const Packing& p) {
  const PackingMetadata& m = p.meta;
  const DomainSpec& s = m.spec;
  std::ostringstream out;
  out << "method = " << method_name(m.method) << '\n';
  out << "seed = " << s.seed << '\n';
  out << "distribution = " << distribution_text(s.distribution) << '\n';
  out << "mean_radius = " << format_double(s.contact.mean_radius) << '\n';
  out << "brick_side_lengths = " << vec_text(s.brick_side_lengths) << '\n';
  out << "brick_numbers = " << s.brick_numbers[0] << ' ' << s.brick_numbers[1] << ' ' << s.brick_numbers[2] << '\n';
  out << "face_goal = " << format_double(s.face_goal) << '\n';
  out << "body_goal = " << format_double(s.body_goal) << '\n';
  out << "contact_parameter = " << format_double(s.contact.epsilon) << '\n';
  out << "parent_parameter = " << format_double(s.contact.delta) << '\n';
  out << "requested_body_accounting = "
      << (s.body_accounting ? std::string(body_accounting_name(*s.body_accounting)) : std::string("default")) << '\n';
  out << "failure_limit = " << s.tuning.failure_limit << '\n';
  out << "triplet_cap = " << s.tuning.triplet_cap << '\n';
  out << "prune_after = " << s.tuning.prune_after << '\n';
  out << "edge_retries = " << s.tuning.edge_retries << '\n';
  out << "extent = " << vec_text(m.extent) << '\n';
  if (m.hemisphere_radii) {
    out << "hemisphere_radii = " << format_double((*m.hemisphere_radii)[0]) << ' '
        << format_double((*m.hemisphere_radii)[1]) << '\n';
  }
  out << "sphere_count = " << p.spheres.size() << '\n';
  out << "contact_count = " << p.contacts.size() << '\n';
  out << "unit_brick_count = " << p.unit_brick_count << '\n';
  out << "boundary_lists = " << (p.boundary_lists ? "true" : "false") << '\n';
  out << "goals_met = " << (m.goals_met ? "true" : "false") << '\n';
  out << "body_accounting = " << body_accounting_name(m.body_accounting) << '\n';
  out << "achieved_body = " << format_double(m.achieved_body) << '\n';
  out << "achieved_body_clipped = " << format_double(m.achieved_body_clipped) << '\n';
  out << "achieved_face =";
  for (const double f : m.achieved_face) out << ' ' << format_double(f);
  out << '\n';
  return out.str();
}

class MetaReader {
 public:
  MetaReader(const std::string& text, fs::path file) : file_(std::move(file)) {
    for (const std::string_view raw : split(text, '\n')) {
      const std::string_view line = trim(raw);
      if (line.empty() || line.front() == '#') continue;
      const std::size_t eq = line.find('=');
      if (eq == std::string_view::npos) throw IoError(file_.string() + ": malformed line '" + std::string(line) + "'");
      values_[std::string(trim(line.substr(0, eq)))] = std::string(trim(line.substr(eq + 1)));
    }
  }

  bool has(const std::string& key) const { return values_.contains(key); }

  const std::string& text(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw IoError(file_.string() + ": missing '" + key + "'");
    return it->second;
  }

  std::vector<std::string_view> words(const std::string& key) const {
    std::vector<std::string_view> out;
    for (const std::string_view w : split(text(key), ' ')) {
      if (!w.empty()) out.push_back(w);
    }
    return out;
  }

  double number(const std::string& key) const { return parse_double(text(key), where(key)); }
  std::size_t size(const std::string& key) const { return parse_size(text(key), where(key)); }

  std::vector<double> numbers(const std::string& key, std::size_t n) const {
    const auto ws = words(key);
    if (ws.size() != n) throw IoError(where(key) + ": expected " + std::to_string(n) + " values");
    std::vector<double> out;
    for (const auto w : ws) out.push_back(parse_double(w, where(key)));
    return out;
  }

  bool flag(const std::string& key) const {
    const std::string& v = text(key);
    if (v == "true") return true;
    if (v == "false") return false;
    throw IoError(where(key) + ": expected true or false");
  }

  std::string where(const std::string& key) const { return file_.string() + " [" + key + "]"; }

 private:
  fs::path file_;
  std::map<std::string, std::string> values_;
};

Method method_from(const std::string& name, const std::string& where) {
  if (name == "m1") return Method::m1;
  if (name == "m2") return Method::m2;
  if (name == "hemisphere") return Method::hemisphere;
  throw IoError(where + ": unknown method '" + name + "'");
}

BodyAccounting accounting_from(const std::string& name, const std::string& where) {
  if (name == "clipped") return BodyAccounting::clipped;
  if (name == "full") return BodyAccounting::full;
  throw IoError(where + ": unknown body accounting '" + name + "'");
}

PackingMetadata read_meta(const MetaReader& r) {
  PackingMetadata m;
  m.method = method_from(r.text("method"), r.where("method"));
  DomainSpec& s = m.spec;
  s.seed = static_cast<std::uint64_t>(parse_size(r.text("seed"), r.where("seed")));

  const auto dist = r.words("distribution");
  if (dist.size() != 3 || (dist[0] != "weibull" && dist[0] != "gamma")) {
    throw IoError(r.where("distribution") + ": only weibull and gamma distributions can be restored");
  }
  const double scale = parse_double(dist[1], r.where("distribution"));
  const double shape = parse_double(dist[2], r.where("distribution"));
  s.with_distribution(dist[0] == "weibull" ? RadiusDistribution::weibull(scale, shape)
                                           : RadiusDistribution::gamma(scale, shape));
  s.contact.mean_radius = r.number("mean_radius");

  const auto side = r.numbers("brick_side_lengths", 3);
  s.brick_side_lengths = {side[0], side[1], side[2]};
  const auto bricks = r.words("brick_numbers");
  if (bricks.size() != 3) throw IoError(r.where("brick_numbers") + ": expected 3 values");
  for (std::size_t a = 0; a < 3; ++a) s.brick_numbers[a] = static_cast<int>(parse_size(bricks[a], r.where("brick_numbers")));
  s.face_goal = r.number("face_goal");
  s.body_goal = r.number("body_goal");
  s.contact.epsilon = r.number("contact_parameter");
  s.contact.delta = r.number("parent_parameter");
  const std::string& requested = r.text("requested_body_accounting");
  if (requested != "default") s.body_accounting = accounting_from(requested, r.where("requested_body_accounting"));
  s.tuning.failure_limit = r.size("failure_limit");
  s.tuning.triplet_cap = r.size("triplet_cap");
  s.tuning.prune_after = r.size("prune_after");
  s.tuning.edge_retries = r.size("edge_retries");

  const auto extent = r.numbers("extent", 3);
  m.extent = {extent[0], extent[1], extent[2]};
  if (r.has("hemisphere_radii")) {
    const auto h = r.numbers("hemisphere_radii", 2);
    m.hemisphere_radii = std::array<double, 2>{h[0], h[1]};
  }
  m.goals_met = r.flag("goals_met");
  m.body_accounting = accounting_from(r.text("body_accounting"), r.where("body_accounting"));
  m.achieved_body = r.number("achieved_body");
  m.achieved_body_clipped = r.number("achieved_body_clipped");
  const auto faces = r.numbers("achieved_face", 6);
  std::copy(faces.begin(), faces.end(), m.achieved_face.begin());
  return m;
}

}  // namespace

std::string format_double(double x) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

void write_text(const std::string& text, const fs::path& file) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + file.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("failed writing " + file.string());
}

void write_packing(const Packing& p, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  std::string spheres = "id,x,y,z,r\n";
  spheres.reserve(64 * p.spheres.size() + 16);
  for (std::size_t i = 0; i < p.spheres.size(); ++i) {
    const Sphere& s = p.spheres[i];
    append_u64(spheres, i);
    for (const double v : {s.center.x, s.center.y, s.center.z, s.radius}) {
      spheres += ',';
      spheres += format_double(v);
    }
    spheres += '\n';
  }
  write_text(spheres, dir / "spheres.csv");

  std::string contacts = "i,j\n";
  for (const ContactPair& c : p.contacts) {
    append_u64(contacts, c.i);
    contacts += ',';
    append_u64(contacts, c.j);
    contacts += '\n';
  }
  write_text(contacts, dir / "contacts.csv");

  for (const Face f : kAllFaces) {
    const fs::path file = dir / ("boundary_" + std::string(face_name(f)) + ".csv");
    if (!p.boundary_lists) {
      fs::remove(file, ec);
      continue;
    }
    std::string ids = "id\n";
    for (const std::size_t id : (*p.boundary_lists)[face_index(f)]) {
      append_u64(ids, id);
      ids += '\n';
    }
    write_text(ids, file);
  }
  write_text(meta_text(p), dir / "meta.txt");
}

Packing read_packing(const fs::path& dir) {
  Packing p;
  const fs::path meta_file = dir / "meta.txt";
  const MetaReader meta(read_file(meta_file), meta_file);
  p.meta = read_meta(meta);
  p.unit_brick_count = meta.size("unit_brick_count");

  const fs::path sphere_file = dir / "spheres.csv";
  const std::string sphere_text = read_file(sphere_file);
  for (const auto& row : read_rows(sphere_text, "id,x,y,z,r", sphere_file)) {
    const std::string where = sphere_file.string();
    const std::size_t id = parse_size(row[0], where);
    if (id != p.spheres.size()) throw IoError(where + ": sphere ids must run 0, 1, 2, ...");
    const Vec3 c{parse_double(row[1], where), parse_double(row[2], where), parse_double(row[3], where)};
    p.spheres.push_back({c, parse_double(row[4], where), id});
  }

  const fs::path contact_file = dir / "contacts.csv";
  const std::string contact_text = read_file(contact_file);
  for (const auto& row : read_rows(contact_text, "i,j", contact_file)) {
    const ContactPair c{parse_size(row[0], contact_file.string()), parse_size(row[1], contact_file.string())};
    if (c.i >= c.j || c.j >= p.spheres.size()) throw IoError(contact_file.string() + ": invalid contact pair");
    if (!p.contacts.empty() && !(p.contacts.back() < c)) throw IoError(contact_file.string() + ": contacts not sorted");
    p.contacts.push_back(c);
  }

  if (meta.flag("boundary_lists")) {
    BoundaryLists lists;
    for (const Face f : kAllFaces) {
      const fs::path file = dir / ("boundary_" + std::string(face_name(f)) + ".csv");
      const std::string text = read_file(file);
      for (const auto& row : read_rows(text, "id", file)) {
        const std::size_t id = parse_size(row[0], file.string());
        if (id >= p.spheres.size()) throw IoError(file.string() + ": id out of range");
        lists[face_index(f)].push_back(id);
      }
    }
    p.boundary_lists = std::move(lists);
  }

  if (meta.size("sphere_count") != p.spheres.size() || meta.size("contact_count") != p.contacts.size()) {
    throw IoError(meta_file.string() + ": counts disagree with the CSV files");
  }
  return p;
}

std::vector<HistogramBin> radius_histogram(std::span<const double> radii, const RadiusDistribution& dist,
                                           std::size_t bins) {
  if (bins == 0) throw DomainError("histogram needs at least one bin");
  std::vector<HistogramBin> out(bins);
  if (radii.empty()) return out;
  const double top = *std::max_element(radii.begin(), radii.end());
  const double width = top / static_cast<double>(bins);
  if (!(width > 0.0)) throw DomainError("histogram needs a positive largest radius");
  for (std::size_t k = 0; k < bins; ++k) {
    out[k].lo = width * static_cast<double>(k);
    out[k].hi = k + 1 == bins ? top : width * static_cast<double>(k + 1);
  }
  for (const double r : radii) {
    const auto k = std::min(bins - 1, static_cast<std::size_t>(r / width));
    ++out[k].count;
  }
  const double n = static_cast<double>(radii.size());
  for (HistogramBin& b : out) {
    const double w = b.hi - b.lo;
    b.density = static_cast<double>(b.count) / (n * w);
    b.expected = (dist.cdf(b.hi) - dist.cdf(b.lo)) / w;
  }
  return out;
}

void write_histogram(const std::vector<HistogramBin>& bins, const fs::path& file) {
  std::string out = "lo,hi,count,density,expected\n";
  for (const HistogramBin& b : bins) {
    out += format_double(b.lo) + ',' + format_double(b.hi) + ',';
    append_u64(out, b.count);
    out += ',' + format_double(b.density) + ',' + format_double(b.expected) + '\n';
  }
  write_text(out, file);
}

void write_bonds(const std::vector<Bond>& bonds, const fs::path& file) {
  std::string out = "i,j,t\n";
  for (const Bond& b : bonds) {
    append_u64(out, b.i);
    out += ',';
    append_u64(out, b.j);
    out += ',' + format_double(b.time) + '\n';
  }
  write_text(out, file);
}

void write_temperatures(const Packing& p, std::span<const double> temperature, const fs::path& file) {
  if (temperature.size() != p.spheres.size()) throw DomainError("temperature field does not match the packing");
  std::string out = "id,x,y,z,r,T\n";
  for (std::size_t i = 0; i < p.spheres.size(); ++i) {
    const Sphere& s = p.spheres[i];
    append_u64(out, i);
    for (const double v : {s.center.x, s.center.y, s.center.z, s.radius, temperature[i]}) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  write_text(out, file);
}

}  // namespace spherefill
