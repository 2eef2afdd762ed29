#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hermcap/hermitian.hpp"

namespace hermcap {

using Coords = std::array<Elem, 4>;

/// On-disk cap: field metadata, form identifier and normalized point
/// coordinates (element encodings). `removed` is present only for the
/// output of a thinning run.
struct CapFile {
  unsigned q = 0;
  unsigned p = 0;
  unsigned k = 0;
  std::vector<unsigned> modulus;
  std::string form = "diagonal";
  std::vector<Coords> points;
  std::optional<std::vector<Coords>> removed;

  friend bool operator==(const CapFile&, const CapFile&) = default;
};

inline constexpr std::string_view kCapFileFormat = "hermcap-cap/1";

/// Stable text layout: one point per line, keys in fixed order.
std::string serialize(const CapFile& file);
/// Throws ConfigError for malformed JSON or missing fields.
CapFile parse_cap_file(std::string_view text);

CapFile make_cap_file(const SurfaceModel& model, std::span<const PointId> points,
                      std::optional<std::span<const PointId>> removed = std::nullopt);

/// Maps file coordinates to point ids after checking metadata against the
/// model (ConfigError) and the point invariants (DomainError naming the
/// failed invariant: normalized, on-surface, distinct, cap).
std::vector<PointId> resolve_points(const SurfaceModel& model, const CapFile& file, bool require_cap = true);
std::vector<PointId> resolve_removed(const SurfaceModel& model, const CapFile& file);

CapFile read_cap_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace hermcap
