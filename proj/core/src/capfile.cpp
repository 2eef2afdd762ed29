#include "hermcap/capfile.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hermcap/errors.hpp"

namespace hermcap {

namespace {

void append_points(std::string& out, std::string_view key, const std::vector<Coords>& pts) {
  out += "  \"";
  out += key;
  out += "\": [";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out += i == 0 ? "\n" : ",\n";
    const auto& c = pts[i];
    out += "    [" + std::to_string(c[0]) + ", " + std::to_string(c[1]) + ", " + std::to_string(c[2]) + ", " +
           std::to_string(c[3]) + "]";
  }
  out += pts.empty() ? "]" : "\n  ]";
}

std::vector<Coords> coords_of(const SurfaceModel& model, std::span<const PointId> ids) {
  std::vector<PointId> sorted(ids.begin(), ids.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Coords> out;
  out.reserve(sorted.size());
  for (PointId id : sorted) out.push_back(model.point(id).coords);
  return out;
}

std::vector<Coords> parse_points(const nlohmann::json& arr) {
  std::vector<Coords> out;
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 4) throw ConfigError("each point must be an array of 4 coordinates");
    Coords c{};
    for (std::size_t i = 0; i < 4; ++i) {
      const auto v = p[i].get<long long>();
      if (v < 0 || v > 0xffff) throw ConfigError("coordinate out of range");
      c[i] = static_cast<Elem>(v);
    }
    out.push_back(c);
  }
  return out;
}

std::vector<PointId> resolve_coords(const SurfaceModel& model, const std::vector<Coords>& pts) {
  const auto& f = model.field();
  std::vector<PointId> ids;
  ids.reserve(pts.size());
  for (const auto& c : pts) {
    for (Elem e : c)
      if (e >= f.order()) throw DomainError("invariant 'field-element' failed: coordinate outside GF(q^2)");
    auto norm = normalize(f, c);
    if (!norm || norm->coords != c)
      throw DomainError("invariant 'normalized' failed: point is not in normalized coordinates");
    auto id = model.find(*norm);
    if (!id) throw DomainError("invariant 'on-surface' failed: point is not on the Hermitian surface");
    ids.push_back(*id);
  }
  return ids;
}

}  // namespace

std::string serialize(const CapFile& file) {
  std::string out = "{\n";
  out += "  \"format\": \"" + std::string(kCapFileFormat) + "\",\n";
  out += "  \"q\": " + std::to_string(file.q) + ",\n";
  out += "  \"p\": " + std::to_string(file.p) + ",\n";
  out += "  \"k\": " + std::to_string(file.k) + ",\n";
  out += "  \"modulus\": [";
  for (std::size_t i = 0; i < file.modulus.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(file.modulus[i]);
  }
  out += "],\n";
  out += "  \"form\": " + nlohmann::json(file.form).dump() + ",\n";
  out += "  \"size\": " + std::to_string(file.points.size()) + ",\n";
  append_points(out, "points", file.points);
  if (file.removed) {
    out += ",\n";
    append_points(out, "removed", *file.removed);
  }
  out += "\n}\n";
  return out;
}

CapFile parse_cap_file(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("cap file is not valid JSON: ") + e.what());
  }
  try {
    if (j.contains("format") && j.at("format").get<std::string>() != kCapFileFormat)
      throw ConfigError("unsupported cap file format '" + j.at("format").get<std::string>() + "'");
    CapFile f;
    f.q = j.at("q").get<unsigned>();
    f.p = j.at("p").get<unsigned>();
    f.k = j.at("k").get<unsigned>();
    f.modulus = j.at("modulus").get<std::vector<unsigned>>();
    f.form = j.at("form").get<std::string>();
    f.points = parse_points(j.at("points"));
    if (j.contains("removed")) f.removed = parse_points(j.at("removed"));
    if (j.contains("size") && j.at("size").get<std::size_t>() != f.points.size())
      throw ConfigError("declared size does not match the number of points");
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed cap file: ") + e.what());
  }
}

CapFile make_cap_file(const SurfaceModel& model, std::span<const PointId> points,
                      std::optional<std::span<const PointId>> removed) {
  const auto& f = model.field();
  CapFile file;
  file.q = f.q();
  file.p = f.spec().p;
  file.k = f.spec().k;
  file.modulus.assign(f.modulus().begin(), f.modulus().end());
  file.points = coords_of(model, points);
  if (removed) file.removed = coords_of(model, *removed);
  return file;
}

std::vector<PointId> resolve_points(const SurfaceModel& model, const CapFile& file, bool require_cap) {
  const auto& f = model.field();
  if (file.q != f.q() || file.p != f.spec().p || file.k != f.spec().k)
    throw ConfigError("cap file is for q=" + std::to_string(file.q) + ", model has q=" + std::to_string(f.q()));
  if (!std::equal(file.modulus.begin(), file.modulus.end(), f.modulus().begin(), f.modulus().end()))
    throw ConfigError("cap file modulus polynomial does not match " + f.modulus_string());
  if (file.form != "diagonal") throw ConfigError("unsupported Hermitian form '" + file.form + "'");

  auto ids = resolve_coords(model, file.points);
  std::vector<PointId> sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DomainError("invariant 'distinct' failed: a point is listed twice");
  if (require_cap && !model.is_cap(sorted))
    throw DomainError("invariant 'cap' failed: two listed points are conjugate");
  return sorted;
}

std::vector<PointId> resolve_removed(const SurfaceModel& model, const CapFile& file) {
  if (!file.removed) return {};
  auto ids = resolve_coords(model, *file.removed);
  std::sort(ids.begin(), ids.end());
  return ids;
}

CapFile read_cap_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_cap_file(ss.str());
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
  if (!out) throw ConfigError("write failed for " + path.string());
}

}  // namespace hermcap
